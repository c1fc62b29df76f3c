"""The auxiliary graph on [eta]: degrees, induced 3- and 4-vertex subgraph counts,
and the exact degree-sum identities relating them."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

import numpy as np

CENSUS_LIMIT = 24


@dataclass(frozen=True)
class BetaCensus:
    """Counts of 4-vertex subsets by induced subgraph type."""

    zero: int = 0
    one: int = 0
    par: int = 0     # two disjoint edges
    wedge: int = 0   # path with two edges
    tri: int = 0     # triangle plus isolated vertex
    star: int = 0    # three edges at one vertex
    path: int = 0    # path with three edges
    cycle: int = 0   # 4-cycle
    paw: int = 0     # triangle with a pendant edge
    five: int = 0
    six: int = 0

    @property
    def total(self) -> int:
        return sum(asdict(self).values())


@dataclass(frozen=True)
class AuxGraphStats:
    m: int
    eta: int
    edges: frozenset[tuple[int, int]]
    e: int
    ebar: int
    a: Fraction
    b: Fraction
    deg: tuple[int, ...]
    degbar: tuple[int, ...]
    alpha1: int
    beta: BetaCensus
    beta_bar: BetaCensus

    def to_json(self) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "m": self.m,
            "eta": self.eta,
            "edges": [list(p) for p in sorted(self.edges)],
            "e": str(self.e),
            "ebar": str(self.ebar),
            "a": q(self.a),
            "b": q(self.b),
            "deg": [str(d) for d in self.deg],
            "degbar": [str(d) for d in self.degbar],
            "alpha1": str(self.alpha1),
            "beta": {k: str(v) for k, v in asdict(self.beta).items()},
            "beta_bar": {k: str(v) for k, v in asdict(self.beta_bar).items()},
        }


class MuValue(NamedTuple):
    a: Fraction | float
    mu: Fraction | float


def mu(a):
    """1 below a = 1/2, (1 - a)/a from 1/2 on.  Exact for Fractions."""
    if isinstance(a, int):
        a = Fraction(a)
    if a < 0 or a > 1:
        raise ValueError(f"a = {a} outside [0, 1]")
    if a < Fraction(1, 2):
        return MuValue(a, Fraction(1) if isinstance(a, Fraction) else 1.0)
    return MuValue(a, (1 - a) / a)


@lru_cache(maxsize=None)
def _combos(eta: int, r: int) -> np.ndarray:
    if eta < r:
        return np.zeros((0, r), dtype=np.int64)
    return np.array(list(combinations(range(eta), r)), dtype=np.int64)


_QUAD_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
# for each vertex of a 4-set, the indices into _QUAD_PAIRS of its incident pairs
_QUAD_INCIDENT = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]]


def beta_census(adj: np.ndarray) -> BetaCensus:
    """Classify every 4-subset by (edge count, degree multiset)."""
    eta = adj.shape[0]
    quads = _combos(eta, 4)
    if not len(quads):
        return BetaCensus()
    e = np.stack([adj[quads[:, i], quads[:, j]] for i, j in _QUAD_PAIRS], axis=1).astype(np.int8)
    cnt = e.sum(axis=1)
    deg = np.stack([e[:, idx].sum(axis=1) for idx in _QUAD_INCIDENT], axis=1)
    dmax, dmin = deg.max(axis=1), deg.min(axis=1)

    def c(mask) -> int:
        return int(np.count_nonzero(mask))

    return BetaCensus(
        zero=c(cnt == 0),
        one=c(cnt == 1),
        par=c((cnt == 2) & (dmax == 1)),
        wedge=c((cnt == 2) & (dmax == 2)),
        tri=c((cnt == 3) & (dmin == 0)),
        star=c((cnt == 3) & (dmax == 3)),
        path=c((cnt == 3) & (dmax == 2) & (dmin == 1)),
        cycle=c((cnt == 4) & (dmax == 2)),
        paw=c((cnt == 4) & (dmax == 3)),
        five=c(cnt == 5),
        six=c(cnt == 6),
    )


def count_alpha1(adj: np.ndarray) -> int:
    """Triples of vertices inducing exactly one edge."""
    tri = _combos(adj.shape[0], 3)
    if not len(tri):
        return 0
    s = (adj[tri[:, 0], tri[:, 1]].astype(np.int8) + adj[tri[:, 0], tri[:, 2]]
         + adj[tri[:, 1], tri[:, 2]])
    return int(np.count_nonzero(s == 1))


def adjacency(eta: int, edges) -> np.ndarray:
    adj = np.zeros((eta, eta), dtype=bool)
    for i, j in edges:
        if not (1 <= i <= eta and 1 <= j <= eta) or i == j:
            raise ValueError(f"bad edge ({i}, {j}) for eta = {eta}")
        adj[i - 1, j - 1] = adj[j - 1, i - 1] = True
    return adj


def graph_stats(eta: int, edges, m: int | None = None, census: bool = True) -> AuxGraphStats:
    """All graph quantities for the graph on [eta] with the given 1-based edges.

    ``m`` is the ground size of the surrounding local family (defaults to eta).
    """
    m = eta if m is None else m
    if eta > m:
        raise ValueError("eta cannot exceed m")
    if census and eta > CENSUS_LIMIT:
        raise ValueError(f"eta = {eta} exceeds the census limit {CENSUS_LIMIT}")
    edges = frozenset((min(i, j), max(i, j)) for i, j in edges)
    adj = adjacency(eta, edges)
    comp = ~adj
    np.fill_diagonal(comp, False)
    e = len(edges)
    pairs = math.comb(eta, 2)
    deg = tuple(int(x) for x in adj.sum(axis=1))
    return AuxGraphStats(
        m=m,
        eta=eta,
        edges=edges,
        e=e,
        ebar=pairs - e,
        a=Fraction(eta, m) if m else Fraction(0),
        b=Fraction(e, pairs) if pairs else Fraction(0),
        deg=deg,
        degbar=tuple(eta - 1 - d for d in deg),
        alpha1=count_alpha1(adj) if census else 0,
        beta=beta_census(adj) if census else BetaCensus(),
        beta_bar=beta_census(comp) if census else BetaCensus(),
    )


def _need_four(stats: AuxGraphStats) -> None:
    if stats.eta < 4:
        raise ValueError("identities over 4-subsets need eta >= 4")


class DegreeSumIdentities(NamedTuple):
    d_dbar2: bool
    d3: bool
    dbar_d2: bool
    dbar3: bool

    def all(self) -> bool:
        return all(self)


def degree_sum_identities(stats: AuxGraphStats) -> DegreeSumIdentities:
    _need_four(stats)
    b, bb = stats.beta, stats.beta_bar
    d, db = stats.deg, stats.degbar
    C = math.comb
    return DegreeSumIdentities(
        sum(x * C(y, 2) for x, y in zip(d, db))
        == 2 * b.one + 4 * b.par + 2 * b.wedge + 2 * b.path + 3 * b.star + bb.wedge,
        sum(C(x, 3) for x in d) == b.star + bb.wedge + 2 * bb.one + 4 * bb.zero,
        sum(y * C(x, 2) for x, y in zip(d, db))
        == 2 * bb.one + 4 * bb.par + 2 * bb.wedge + 2 * bb.path + 3 * bb.star + b.wedge,
        sum(C(y, 3) for y in db) == bb.star + b.wedge + 2 * b.one + 4 * b.zero,
    )


def alpha1_identity_check(stats: AuxGraphStats) -> bool:
    _need_four(stats)
    b, bb = stats.beta, stats.beta_bar
    rhs = 2 * b.one + 4 * b.par + 2 * b.wedge + 3 * b.tri + 2 * b.path + bb.wedge
    return stats.alpha1 * (stats.eta - 3) == rhs


def decomposition_check(stats: AuxGraphStats) -> bool:
    """C(eta, 4) splits over the types, with 4+ edge types read off the complement."""
    b, bb = stats.beta, stats.beta_bar
    via_complement = (b.zero + b.one + b.par + b.wedge + b.tri + b.path + b.star
                      + bb.par + bb.wedge + bb.one + bb.zero)
    return via_complement == math.comb(stats.eta, 4) == b.total


def complement_symmetry_check(stats: AuxGraphStats) -> tuple[bool, bool]:
    """(complement triangles == stars, complement 3-paths == 3-paths)."""
    return stats.beta_bar.tri == stats.beta.star, stats.beta_bar.path == stats.beta.path


def degree_relaxation_check(stats: AuxGraphStats) -> bool:
    """sum_x max(0, 2 dbar(x) - m + 2) <= max(0, 2 ebar (2 eta - m) / (eta - 1))."""
    if stats.eta < 2:
        raise ValueError("relaxation needs eta >= 2")
    m = stats.m
    lhs = sum(max(0, 2 * y - m + 2) for y in stats.degbar)
    rhs = max(Fraction(0), Fraction(2 * stats.ebar * (2 * stats.eta - m), stats.eta - 1))
    return lhs <= rhs


@dataclass(frozen=True)
class Lemma7Report:
    Q: Fraction
    midline_rhs: Fraction
    midline_holds: bool
    final_bound: float

    @property
    def slack(self) -> Fraction:
        return self.midline_rhs - self.Q


def lemma7_report(stats: AuxGraphStats) -> Lemma7Report:
    eta, m = stats.eta, stats.m
    if eta < 4:
        raise ValueError("needs eta >= 4")
    if eta >= m:
        raise ValueError("needs eta < m")
    b, bb = stats.beta, stats.beta_bar
    a = stats.a
    Q = (eta - 3) * (stats.alpha1 + Fraction(3 * b.zero, m - 3))
    rhs = (3 * math.comb(eta, 4) + (3 * a - 3) * b.zero - b.one + b.par - b.wedge
           - b.path - 3 * b.star - 2 * bb.wedge - 3 * bb.par - 3 * bb.one - 3 * bb.zero)
    af, e = float(a), stats.e
    final = (eta ** 3 / 8 + e * e / eta * (af - 2) + e * eta * (4 - 3 * af) / 4
             - (1 - af) * eta ** 3 / 8)
    return Lemma7Report(Q, rhs, Q < rhs, final)


def parse_graph(text: str) -> tuple[int, list[tuple[int, int]]]:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("eta="):
        raise ValueError("first line must be 'eta=<int>'")
    eta = int(lines[0][4:])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        i, j = int(parts[0]), int(parts[1])
        if not 1 <= i < j <= eta:
            raise ValueError(f"edge {i} {j} must satisfy 1 <= i < j <= {eta}")
        edges.append((i, j))
    if len(set(edges)) != len(edges):
        raise ValueError("duplicate edge")
    return eta, edges


def serialize_graph(eta: int, edges) -> str:
    es = sorted((min(i, j), max(i, j)) for i, j in edges)
    return "".join([f"eta={eta}\n"] + [f"{i} {j}\n" for i, j in es])
