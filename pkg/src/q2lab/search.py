"""Exact ex(n, Q2) for small n, the standard constructions, and report helpers."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations

import numpy as np

from .chains import chain_census
from .lattice import Family, binom, layer_masks, middle_layer_size
from .local import LocalFamily
from .patterns import is_q2_free


@dataclass(frozen=True)
class SearchResult:
    n: int
    best_size: int
    best_family: Family
    nodes_expanded: int
    proved_optimal: bool
    wall_time: float


@lru_cache(maxsize=8)
def witness_sets(n: int) -> tuple[tuple[int, int, int, int], ...]:
    """Every 4-set {A, B, C, D} of subsets with A < B, C < D and B != C.

    A family is Q2-free exactly when it contains none of them.
    """
    out = set()
    for d in range(1 << n):
        sub = d
        while True:
            a = sub
            if a != d and (d & ~a).bit_count() >= 2:
                free = d & ~a
                mids = []
                s = (free - 1) & free
                while s:
                    mids.append(a | s)
                    s = (s - 1) & free
                for b, c in combinations(mids, 2):
                    out.add(tuple(sorted((a, b, c, d))))
            if sub == 0:
                break
            sub = (sub - 1) & d
    return tuple(sorted(out))


def brute_force_ex(n: int) -> SearchResult:
    """Check every one of the 2^(2^n) families of subsets of [n]."""
    if not 0 <= n <= 4:
        raise ValueError("brute force is limited to n <= 4")
    t0 = time.perf_counter()
    total = 1 << (1 << n)
    fams = np.arange(total, dtype=np.uint64)
    bad = np.zeros(total, dtype=bool)
    for w in witness_sets(n):
        wm = np.uint64(sum(1 << x for x in w))
        bad |= (fams & wm) == wm
    sizes = np.bitwise_count(fams).astype(np.int64)
    sizes[bad] = -1
    best = int(sizes.max())
    choice = int(np.flatnonzero(sizes == best)[0])
    fam = Family(n, tuple(x for x in range(1 << n) if choice >> x & 1))
    return SearchResult(n, best, fam, total, True, time.perf_counter() - t0)


@lru_cache(maxsize=8)
def full_chains(n: int) -> tuple[tuple[int, ...], ...]:
    out = []
    for p in permutations(range(n)):
        m, c = 0, [0]
        for x in p:
            m |= 1 << x
            c.append(m)
        out.append(tuple(c))
    return tuple(out)


class _OutOfTime(Exception):
    pass


def search_order(n: int) -> list[int]:
    """Subsets nearest the middle layer first, then canonical order."""
    return sorted(range(1 << n), key=lambda x: (abs(2 * x.bit_count() - n), x.bit_count(), x))


def branch_and_bound_ex(n: int, time_budget: float | None = None,
                        incumbent: Family | None = None) -> SearchResult:
    """Depth-first include/exclude search over subsets in ``search_order``.

    Candidates that would complete a Q2 with the current family are dropped as
    soon as they become incompatible.  A node is pruned when the current size
    plus an optimistic completion cannot beat the incumbent; the completion
    respects the capacity of every full chain (at most 3 members, at most the
    candidates left on it) and fills that capacity with the cheapest sets,
    a set of size s using s!(n-s)! chain slots.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    t0 = time.perf_counter()
    order = search_order(n)
    pos = {x: i for i, x in enumerate(order)}
    nsub = len(order)

    def bits(sets) -> int:
        return sum(1 << pos[x] for x in sets)

    wit: list[list[int]] = [[] for _ in range(nsub)]
    for w in witness_sets(n):
        wm = bits(w)
        for x in w:
            wit[pos[x]].append(wm & ~(1 << pos[x]))
    chains = [bits(c) for c in full_chains(n)]
    f = math.factorial
    cost_classes = sorted(
        {(f(s) * f(n - s), s) for s in range(n + 1)}
    )
    class_mask = [(c, bits(layer_masks(n, s))) for c, s in cost_classes]

    if incumbent is None:
        incumbent = construct_two_middle_layers(n) if n >= 1 else Family(0, (0,))
    if is_q2_free(incumbent) is not None:
        raise ValueError("incumbent is not Q2-free")
    best = [len(incumbent), bits(incumbent.members)]
    nodes = [0]
    deadline = None if time_budget is None else t0 + time_budget

    def bound(fm: int, rm: int) -> int:
        budget = 0
        for c in chains:
            room = 3 - (fm & c).bit_count()
            if room > 0:
                budget += min(room, (rm & c).bit_count())
        extra = 0
        for cost, mask in class_mask:
            k = (rm & mask).bit_count()
            if not k:
                continue
            take = min(k, budget // cost)
            extra += take
            budget -= take * cost
            if take < k:
                break
        return extra

    def dfs(fm: int, rm: int, size: int) -> None:
        nodes[0] += 1
        if deadline is not None and nodes[0] & 1023 == 0 and time.perf_counter() > deadline:
            raise _OutOfTime
        if size > best[0]:
            best[0], best[1] = size, fm
        if not rm or size + rm.bit_count() <= best[0]:
            return
        if size + bound(fm, rm) <= best[0]:
            return
        low = rm & -rm
        i = low.bit_length() - 1
        killed = 0
        for rest in wit[i]:
            if (rest & fm).bit_count() == 2:
                killed |= rest & ~fm
        dfs(fm | low, rm & ~low & ~killed, size + 1)
        dfs(fm, rm & ~low, size)

    proved = True
    try:
        dfs(0, (1 << nsub) - 1, 0)
    except _OutOfTime:
        proved = False
    fam = Family(n, tuple(order[i] for i in range(nsub) if best[1] >> i & 1))
    if is_q2_free(fam) is not None:
        raise AssertionError("search returned a family containing Q2")
    return SearchResult(n, best[0], fam, nodes[0], proved, time.perf_counter() - t0)


def construct_two_middle_layers(n: int) -> Family:
    if n < 1:
        raise ValueError("n must be at least 1")
    k = n // 2
    return Family(n, layer_masks(n, k) + layer_masks(n, k + 1))


def construct_conclusions_family(m: int) -> LocalFamily:
    """Empty set, all pairs inside each half of [m], and all triples with
    exactly two elements in one half."""
    if m < 4 or m % 2:
        raise ValueError("m must be even and at least 4")
    h = m // 2
    halves = (range(h), range(h, m))
    T = [1 << i | 1 << j for side in halves for i, j in combinations(side, 2)]
    U = [1 << i | 1 << j | 1 << c
         for side, other in (halves, halves[::-1])
         for i, j in combinations(side, 2) for c in other]
    return LocalFamily(m, Family(m, (0, *T, *U)))


@dataclass(frozen=True)
class ConclusionsCheck:
    upsilon3: int
    lower: int
    ratio: Fraction
    holds: bool


def conclusions_check(m: int) -> ConclusionsCheck:
    if m % 2 or not 4 <= m <= 12:
        raise ValueError("m must be even and in [4, 12]")
    g = construct_conclusions_family(m)
    y3 = chain_census(g.family)[3]
    lower = 4 * binom(m // 2, 2) * (m // 2) * math.factorial(m - 3)
    holds = y3 >= lower and 4 * lower >= math.factorial(m)
    return ConclusionsCheck(y3, lower, Fraction(y3, math.factorial(m)), holds)


@dataclass(frozen=True)
class Theorem1Report:
    n: int
    size: int
    lower_ref: float
    upper_ref: float


def theorem1_report(n: int, size: int) -> Theorem1Report:
    N = middle_layer_size(n)
    return Theorem1Report(n, size, 2.0 * N, 2.283261 * N)
