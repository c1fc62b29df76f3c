"""Seeded generators of random instances for the verification suites."""
from __future__ import annotations

import random

from .lattice import Family, is_proper_subset, layer_masks
from .local import LocalFamily, validate_local
from .patterns import Q2FreeBuilder
from .threelayer import ThreeLayerFamily


def greedy_q2_free(rng: random.Random, n: int, candidates, keep: float) -> Family:
    """Insert the candidates in random order, each with probability ``keep``,
    skipping any that would complete a Q2."""
    cands = list(candidates)
    rng.shuffle(cands)
    b = Q2FreeBuilder(n)
    for x in cands:
        if rng.random() < keep:
            b.add(x)
    return b.family()


def random_q2_free_family(rng: random.Random, n: int) -> Family:
    """Mixture of sparse, dense, and near-middle greedy Q2-free families."""
    style = rng.random()
    if style < 0.35 and n >= 2:
        width = rng.randint(2, min(4, n + 1))
        lo = max(0, min(n + 1 - width, n // 2 - rng.randint(0, width - 1)))
        cands = [x for k in range(lo, lo + width) for x in layer_masks(n, k)]
    else:
        cands = range(1 << n)
    keep = 1.0 if style > 0.8 else rng.uniform(0.15, 1.0)
    return greedy_q2_free(rng, n, cands, keep)


def random_three_layer(rng: random.Random, n: int, k: int | None = None) -> ThreeLayerFamily:
    if n < 2:
        raise ValueError("three layers need n >= 2")
    if k is None:
        k = rng.randint(1, n - 1)
    cands = [x for s in (k - 1, k, k + 1) for x in layer_masks(n, s)]
    keep = 1.0 if rng.random() < 0.3 else rng.uniform(0.1, 1.0)
    return ThreeLayerFamily.split(greedy_q2_free(rng, n, cands, keep), k)


def random_three_size_family(rng: random.Random, n: int, tries: int = 100) -> Family:
    """Q2-free family with exactly three distinct member sizes."""
    if n < 2:
        raise ValueError("three sizes need n >= 2")
    for _ in range(tries):
        ks, k, ku = sorted(rng.sample(range(n + 1), 3))
        cands = [x for s in (ks, k, ku) for x in layer_masks(n, s)]
        fam = greedy_q2_free(rng, n, cands, rng.uniform(0.2, 1.0))
        if len(fam.sizes()) == 3:
            return fam
    raise RuntimeError("could not draw a three-size family")


def _random_subset(rng: random.Random, m: int, size: int) -> int:
    return sum(1 << p for p in rng.sample(range(m), size))


def random_valid_local(rng: random.Random, m: int) -> LocalFamily:
    """A random antichain of small minimal sets, then sets above them, each
    set above containing exactly one earlier nonempty member."""
    weights = [rng.random() for _ in range(3)]
    T: list[int] = []
    for _ in range(rng.randint(0, 3 * m)):
        s = rng.choices((1, 2, 3), weights)[0]
        if s > m:
            continue
        x = _random_subset(rng, m, s)
        if all(not (x & t == t or x & t == x) for t in T):
            T.append(x)
    members = [0, *T]
    U: list[int] = []
    if T:
        for _ in range(rng.randint(0, 3 * m)):
            t = rng.choice(T)
            free = [p for p in range(m) if not t >> p & 1]
            if not free:
                continue
            r = rng.randint(1, min(3, len(free)))
            v = t | sum(1 << p for p in rng.sample(free, r))
            if v in members:
                continue
            below = [y for y in members if y and is_proper_subset(y, v)]
            above = [y for y in U if is_proper_subset(v, y)]
            if below == [t] and not above:
                members.append(v)
                U.append(v)
    g = LocalFamily(m, Family(m, tuple(members)))
    if validate_local(g) is not None:
        raise AssertionError("generator produced an invalid local family")
    return g


def random_graph(rng: random.Random, eta: int, p: float | None = None) -> list[tuple[int, int]]:
    p = rng.random() if p is None else p
    return [(i, j) for i in range(1, eta + 1) for j in range(i + 1, eta + 1) if rng.random() < p]
