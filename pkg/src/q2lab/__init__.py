"""Exact computational checks for diamond-free (Q2-free) families of subsets."""

__version__ = "0.1.0"

from .lattice import Family, binom, middle_layer_size, parse_family, serialize_family, subset
from .patterns import Q2, contains_pattern, is_q2_free
from .chains import census_through, chain_census, lym_sum

__all__ = [
    "Family", "binom", "middle_layer_size", "parse_family", "serialize_family", "subset",
    "Q2", "contains_pattern", "is_q2_free", "census_through", "chain_census", "lym_sum",
]
