"""Subsets of [n] as bitmasks, families of subsets, and exact binomial arithmetic.

Element i of the ground set [n] = {1..n} is stored at bit position i - 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple

MAX_GROUND = 64


def subset(*elements: int) -> int:
    mask = 0
    for x in elements:
        if x < 1:
            raise ValueError(f"elements are 1-based, got {x}")
        mask |= 1 << (x - 1)
    return mask


def elements(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def size(mask: int) -> int:
    return mask.bit_count()


def is_proper_subset(a: int, b: int) -> bool:
    return a != b and a & b == a


def fmt(mask: int) -> str:
    return "{" + ",".join(map(str, elements(mask))) + "}"


def canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class Family:
    """A duplicate-free family of subsets of [n], kept in canonical order
    (by size, then by mask value)."""

    n: int
    members: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.n <= MAX_GROUND:
            raise ValueError(f"ground size must be in [0, {MAX_GROUND}], got {self.n}")
        ms = tuple(sorted(self.members, key=canonical_key))
        top = 1 << self.n
        for i, m in enumerate(ms):
            if not 0 <= m < top:
                raise ValueError(f"mask {m:#x} has bits above position {self.n}")
            if i and ms[i - 1] == m:
                raise ValueError(f"duplicate subset {fmt(m)}")
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> Family:
        return cls(n, tuple(subset(*s) for s in sets))

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self.member_set

    def union(self, other: Family) -> Family:
        if other.n != self.n:
            raise ValueError("ground sizes differ")
        return Family(self.n, tuple(self.member_set | other.member_set))

    def sizes(self) -> list[int]:
        return sorted({m.bit_count() for m in self.members})

    def minimal(self) -> list[int]:
        """Members with no other member strictly below them."""
        ms = self.members
        return [x for x in ms if not any(is_proper_subset(y, x) for y in ms)]

    def as_sets(self) -> list[tuple[int, ...]]:
        return [elements(m) for m in self.members]

    def __repr__(self) -> str:
        return f"Family(n={self.n}, {{{', '.join(fmt(m) for m in self.members)}}})"


# ---------------------------------------------------------------------------
# exact combinatorics

def binom(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def middle_layer_size(n: int) -> int:
    return binom(n, n // 2)


@lru_cache(maxsize=None)
def _layer_masks(n: int, k: int) -> tuple[int, ...]:
    from itertools import combinations

    # combinations() yields lexicographic tuples; canonical order is by mask value
    return tuple(sorted(sum(1 << i for i in c) for c in combinations(range(n), k)))


def layer(n: int, k: int) -> Family:
    if not 0 <= k <= n:
        raise ValueError(f"layer index {k} outside [0, {n}]")
    return Family(n, _layer_masks(n, k))


def layer_masks(n: int, k: int) -> tuple[int, ...]:
    if not 0 <= k <= n:
        return ()
    return _layer_masks(n, k)


class TailBound(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def tail_sum(n: int) -> int:
    """Exact sum of C(n, k) over k with |k - n/2| >= n^(2/3).

    The membership test |2k - n|^3 >= 8 n^2 is the same condition in integers.
    """
    return sum(math.comb(n, k) for k in range(n + 1) if abs(2 * k - n) ** 3 >= 8 * n * n)


def tail_bound_check(n: int) -> TailBound:
    """Compare the tail sum against 2^(n+1) e^(-n^(1/3)) in the log2 domain."""
    if n < 8:
        raise ValueError("tail bound check needs n >= 8")
    total = tail_sum(n)
    lhs = math.log2(total) if total else -math.inf
    rhs = (n + 1) - n ** (1 / 3) * math.log2(math.e)
    return TailBound(lhs, rhs, lhs <= rhs)


# ---------------------------------------------------------------------------
# family file format

class FamilyFormatError(ValueError):
    pass


class MissingHeaderError(FamilyFormatError):
    pass


class LineLengthError(FamilyFormatError):
    pass


class BadCharacterError(FamilyFormatError):
    pass


class DuplicateSubsetError(FamilyFormatError):
    pass


def parse_family(text: str) -> Family:
    lines = [ln.rstrip("\r") for ln in text.split("\n")]
    body = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip() and not ln.startswith("#")]
    if not body or not body[0][1].startswith("n="):
        raise MissingHeaderError("first line must be 'n=<decimal>'")
    lineno, header = body[0]
    try:
        n = int(header[2:].strip())
    except ValueError:
        raise MissingHeaderError(f"line {lineno}: bad header {header!r}") from None
    if not 0 <= n <= MAX_GROUND:
        raise MissingHeaderError(f"line {lineno}: ground size {n} out of range")
    seen: set[int] = set()
    for lineno, row in body[1:]:
        row = row.strip()
        if len(row) != n:
            raise LineLengthError(f"line {lineno}: expected {n} characters, got {len(row)}")
        if set(row) - {"0", "1"}:
            raise BadCharacterError(f"line {lineno}: characters outside {{0,1}} in {row!r}")
        mask = sum(1 << i for i, c in enumerate(row) if c == "1")
        if mask in seen:
            raise DuplicateSubsetError(f"line {lineno}: duplicate subset {row}")
        seen.add(mask)
    return Family(n, tuple(seen))


def mask_to_row(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def serialize_family(fam: Family) -> str:
    if fam.n == 0 and fam.members:
        raise ValueError("the empty set over n=0 is an empty row, which the file format skips")
    return "".join([f"n={fam.n}\n"] + [mask_to_row(m, fam.n) + "\n" for m in fam.members])
