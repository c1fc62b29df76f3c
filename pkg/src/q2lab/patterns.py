"""Subposet containment in families of sets, with a fast path for the diamond Q2.

Containment is the weak (non-induced) notion: an injective map that sends every
relation i < j of the pattern to a strict inclusion.  Incomparable pattern
elements may land on comparable sets, so a 4-chain contains Q2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .lattice import Family, fmt, is_proper_subset


@dataclass(frozen=True)
class PosetPattern:
    size: int
    relations: tuple[tuple[int, int], ...]
    name: str = ""

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("pattern needs at least one element")
        rels = tuple(sorted(set(self.relations)))
        for i, j in rels:
            if not (1 <= i <= self.size and 1 <= j <= self.size):
                raise ValueError(f"relation {i}<{j} out of range")
            if i == j:
                raise ValueError(f"reflexive relation {i}<{i}")
        object.__setattr__(self, "relations", rels)
        self.topological_order()  # raises on cycles

    def topological_order(self) -> list[int]:
        indeg = {v: 0 for v in range(1, self.size + 1)}
        succ: dict[int, list[int]] = {v: [] for v in indeg}
        for i, j in self.relations:
            succ[i].append(j)
            indeg[j] += 1
        order, ready = [], [v for v in indeg if indeg[v] == 0]
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in succ[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if len(order) != self.size:
            raise ValueError("pattern relations contain a cycle")
        return order


Q2 = PosetPattern(4, ((1, 2), (1, 3), (2, 4), (3, 4)), "q2")
V2 = PosetPattern(3, ((1, 2), (1, 3)), "v2")
BUTTERFLY = PosetPattern(4, ((1, 3), (1, 4), (2, 3), (2, 4)), "butterfly")


def chain_pattern(k: int) -> PosetPattern:
    return PosetPattern(k, tuple((i, i + 1) for i in range(1, k)), f"chain{k}")


def builtin_pattern(name: str) -> PosetPattern:
    fixed = {"q2": Q2, "v2": V2, "butterfly": BUTTERFLY}
    if name in fixed:
        return fixed[name]
    m = re.fullmatch(r"chain(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return chain_pattern(int(m.group(1)))
    raise KeyError(f"unknown built-in pattern {name!r}")


def parse_pattern(text: str) -> PosetPattern:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("p="):
        raise ValueError("first line must be 'p=<size>'")
    p = int(lines[0][2:])
    rels = []
    for ln in lines[1:]:
        m = re.fullmatch(r"(\d+)\s*<\s*(\d+)", ln)
        if not m:
            raise ValueError(f"bad relation line {ln!r}")
        rels.append((int(m.group(1)), int(m.group(2))))
    return PosetPattern(p, tuple(rels))


def serialize_pattern(pat: PosetPattern) -> str:
    return "".join([f"p={pat.size}\n"] + [f"{i}<{j}\n" for i, j in pat.relations])


def contains_pattern(fam: Family, pat: PosetPattern) -> dict[int, int] | None:
    """Return an embedding {pattern element: member mask} or None."""
    members = fam.members
    if len(members) < pat.size:
        return None
    order = pat.topological_order()
    below = {v: [i for i, j in pat.relations if j == v] for v in order}
    above = {v: [j for i, j in pat.relations if i == v] for v in order}
    assign: dict[int, int] = {}
    used: set[int] = set()

    def ok(v: int, x: int) -> bool:
        for u in below[v]:
            if u in assign and not is_proper_subset(assign[u], x):
                return False
        for w in above[v]:
            if w in assign and not is_proper_subset(x, assign[w]):
                return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for x in members:
            if x in used or not ok(v, x):
                continue
            assign[v] = x
            used.add(x)
            if extend(pos + 1):
                return True
            del assign[v]
            used.discard(x)
        return False

    return dict(assign) if extend(0) else None


class Q2Witness(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def __str__(self) -> str:
        return " ".join(fmt(x) for x in self)


class NotQ2FreeError(ValueError):
    def __init__(self, witness: Q2Witness):
        super().__init__(f"family contains a Q2: {witness}")
        self.witness = witness


def containment_matrix(fam: Family) -> np.ndarray:
    """Boolean matrix M[i, j] = members[i] is a proper subset of members[j]."""
    ms = np.array(fam.members, dtype=object if fam.n > 62 else np.int64)
    sub = (ms[:, None] & ms[None, :]) == ms[:, None]
    np.fill_diagonal(sub, False)
    return sub.astype(bool)


def is_q2_free(fam: Family) -> Q2Witness | None:
    """None if the family is Q2-free, else a witness.

    A Q2 exists exactly when some pair A < D of members has at least two
    members strictly between them.
    """
    if len(fam) < 4:
        return None
    ms = fam.members
    sub = containment_matrix(fam)
    s = sub.astype(np.int32)
    between = s @ s
    hits = np.argwhere(sub & (between >= 2))
    if not len(hits):
        return None
    i, j = hits[0]
    mids = np.flatnonzero(sub[i] & sub[:, j])
    return Q2Witness(ms[i], ms[mids[0]], ms[mids[1]], ms[j])


def assert_q2_free(fam: Family) -> None:
    w = is_q2_free(fam)
    if w is not None:
        raise NotQ2FreeError(w)


class Q2FreeBuilder:
    """Grows a Q2-free family one set at a time.

    For every comparable pair (A, D) of members it keeps the number of members
    strictly between them; a Q2 appears exactly when one of these counts
    reaches 2.
    """

    def __init__(self, n: int):
        self.n = n
        self.members: list[int] = []
        self.between: dict[tuple[int, int], int] = {}

    def can_add(self, x: int) -> bool:
        if x in self.members:
            return False
        below = [a for a in self.members if is_proper_subset(a, x)]
        above = [d for d in self.members if is_proper_subset(x, d)]
        for a in below:
            for d in above:
                if self.between[(a, d)] >= 1:
                    return False
        for d in above:
            if sum(1 for y in above if is_proper_subset(y, d)) >= 2:
                return False
        for a in below:
            if sum(1 for y in below if is_proper_subset(a, y)) >= 2:
                return False
        return True

    def add(self, x: int) -> bool:
        if not self.can_add(x):
            return False
        below = [a for a in self.members if is_proper_subset(a, x)]
        above = [d for d in self.members if is_proper_subset(x, d)]
        for a in below:
            for d in above:
                self.between[(a, d)] += 1
        for d in above:
            self.between[(x, d)] = sum(1 for y in above if is_proper_subset(y, d))
        for a in below:
            self.between[(a, x)] = sum(1 for y in below if is_proper_subset(a, y))
        self.members.append(x)
        return True

    def family(self) -> Family:
        return Family(self.n, tuple(self.members))
