"""Exact full-chain censuses of Q_n and the inequalities built on them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .lattice import Family, binom
from .patterns import NotQ2FreeError, is_q2_free

DP_LIMIT = 22
# k! < 2**63 for k <= 20, so saturated-chain counts up to layer 20 fit in int64
_INT64_LAYERS = 20


@dataclass(frozen=True)
class ChainCensus:
    """counts[i] = number of full chains of Q_n meeting the family in exactly i sets.

    With a truncated cap the last entry aggregates every i >= len(counts) - 1.
    """

    n: int
    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    @property
    def total(self) -> int:
        return sum(self.counts)


@lru_cache(maxsize=32)
def _layers(n: int) -> tuple[np.ndarray, ...]:
    allm = np.arange(1 << n, dtype=np.int64)
    pc = np.bitwise_count(allm)
    return tuple(allm[pc == k] for k in range(n + 1))


def _saturated_shift(vec: np.ndarray, rows: np.ndarray) -> None:
    """Move counts for the selected rows up by one member, saturating at the cap."""
    sub = vec[rows]
    shifted = np.zeros_like(sub)
    shifted[:, 1:] = sub[:, :-1]
    shifted[:, -1] += sub[:, -1]
    vec[rows] = shifted


def chain_vector(n: int, member: np.ndarray, cap: int | None = None) -> list[int]:
    """Count vector over the full chains of Q_n by number of member sets met.

    ``member`` is a boolean array of length 2**n.  Saturated chains from the
    empty set are extended one layer at a time; only two layers are held.
    """
    if n > DP_LIMIT:
        raise ValueError(f"ground size {n} exceeds census limit {DP_LIMIT}")
    cap = n + 2 if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be positive")
    layers = _layers(n)
    index = np.zeros(1 << n, dtype=np.int64)
    prev = np.zeros((1, cap), dtype=np.int64)
    prev[0, min(int(member[0]), cap - 1)] = 1
    prev_masks = layers[0]
    for k in range(1, n + 1):
        masks = layers[k]
        index[prev_masks] = np.arange(len(prev_masks))
        dtype = np.int64 if k <= _INT64_LAYERS else object
        if prev.dtype != dtype:
            prev = prev.astype(dtype)
        acc = np.zeros((len(masks), cap), dtype=dtype)
        for bit in range(n):
            has = (masks >> bit) & 1 == 1
            acc[has] += prev[index[masks[has] ^ (1 << bit)]]
        rows = np.flatnonzero(member[masks])
        if len(rows):
            _saturated_shift(acc, rows)
        prev, prev_masks = acc, masks
    return [int(x) for x in prev[0]]


def _indicator(n: int, masks) -> np.ndarray:
    member = np.zeros(1 << n, dtype=bool)
    if len(masks):
        member[np.fromiter(masks, dtype=np.int64)] = True
    return member


def chain_census(fam: Family, cap: int | None = None, limit: int = DP_LIMIT) -> ChainCensus:
    if fam.n > limit:
        raise ValueError(f"ground size {fam.n} exceeds census limit {limit}")
    return ChainCensus(fam.n, tuple(chain_vector(fam.n, _indicator(fam.n, fam.members), cap)))


def _compress(mask: int, support: list[int]) -> int:
    """Pack the bits of ``mask`` at positions ``support`` into the low bits."""
    out = 0
    for i, p in enumerate(support):
        if mask >> p & 1:
            out |= 1 << i
    return out


def census_through(fam: Family, a: int, limit: int = DP_LIMIT) -> list[int]:
    """Entry i = number of full chains through ``a`` meeting the family in exactly i sets.

    When ``a`` is a member it is one of the i sets, so entry i counts chains with
    ``a`` plus i - 1 other members.  When ``a`` is not a member entry i simply
    counts chains through ``a`` with i members in total.
    """
    n = fam.n
    if n > limit:
        raise ValueError(f"ground size {n} exceeds census limit {limit}")
    if not 0 <= a < 1 << n:
        raise ValueError("subset does not live on the family's ground set")
    inside = [p for p in range(n) if a >> p & 1]
    outside = [p for p in range(n) if not a >> p & 1]
    lo = [_compress(x, inside) for x in fam.members if x & a == x]
    hi = [_compress(x & ~a, outside) for x in fam.members if x & a == a]
    below = chain_vector(len(inside), _indicator(len(inside), lo))
    above = chain_vector(len(outside), _indicator(len(outside), hi))
    own = 1 if a in fam else 0
    out = [0] * (n + 2)
    for i, x in enumerate(below):
        if not x:
            continue
        for j, y in enumerate(above):
            if y:
                out[i + j - own] += x * y
    return out


def lym_sum(fam: Family) -> Fraction:
    return sum((Fraction(1, binom(fam.n, x.bit_count())) for x in fam.members), Fraction(0))


def chain_weight(fam: Family) -> int:
    """Number of (member, full chain through it) pairs: sum of |A|!(n-|A|)!."""
    n = fam.n
    return sum(math.factorial(x.bit_count()) * math.factorial(n - x.bit_count()) for x in fam.members)


@dataclass(frozen=True)
class Lemma2Result:
    lhs: int
    rhs: int
    holds: bool
    census: ChainCensus


def lemma2_check(fam: Family) -> Lemma2Result:
    """|F| floor(n/2)! ceil(n/2)! <= 2 n! + Y3 - Y1 for a Q2-free family."""
    w = is_q2_free(fam)
    if w is not None:
        raise NotQ2FreeError(w)
    n = fam.n
    census = chain_census(fam)
    if any(census[i] for i in range(4, len(census.counts))):
        raise AssertionError("a full chain meets a Q2-free family in more than 3 sets")
    lhs = len(fam) * math.factorial(n // 2) * math.factorial(n - n // 2)
    rhs = 2 * math.factorial(n) + census[3] - census[1]
    return Lemma2Result(lhs, rhs, lhs <= rhs, census)
