"""Local families G(S) above a minimal member S, their structure, and the
exact chain-count bounds that hold for them."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .chains import chain_census
from .graph import AuxGraphStats, graph_stats
from .lattice import Family, fmt, is_proper_subset


class LocalStructureError(ValueError):
    def __init__(self, violation: tuple[int, int, int]):
        y1, y2, x = violation
        super().__init__(f"{fmt(x)} has two nonempty proper subsets {fmt(y1)}, {fmt(y2)} in the family")
        self.violation = violation


@dataclass(frozen=True)
class LocalFamily:
    """A family over [m] containing the empty set.

    ``ground[i]`` is the element of the original ground set that local element
    i + 1 stands for.
    """

    m: int
    family: Family
    ground: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family.n != self.m:
            raise ValueError("family ground size differs from m")
        if 0 not in self.family:
            raise ValueError("a local family must contain the empty set")
        if not self.ground:
            object.__setattr__(self, "ground", tuple(range(1, self.m + 1)))
        if len(self.ground) != self.m:
            raise ValueError("ground map has the wrong length")

    @classmethod
    def from_sets(cls, m: int, sets) -> LocalFamily:
        fam = Family.from_sets(m, sets)
        if 0 not in fam:
            fam = Family(m, fam.members + (0,))
        return cls(m, fam)

    @property
    def nonempty(self) -> tuple[int, ...]:
        return self.family.members[1:]


def extract_local(fam: Family, s: int) -> LocalFamily:
    """{F - S : F in fam, S subset of F}, relabelled onto [n - |S|] in element order."""
    if s not in fam:
        raise ValueError(f"{fmt(s)} is not a member")
    if any(is_proper_subset(x, s) for x in fam):
        raise ValueError(f"{fmt(s)} is not a minimal member")
    outside = [p for p in range(fam.n) if not s >> p & 1]
    members = []
    for x in fam:
        if x & s == s:
            rest = x & ~s
            members.append(sum(1 << i for i, p in enumerate(outside) if rest >> p & 1))
    m = len(outside)
    return LocalFamily(m, Family(m, tuple(members)), tuple(p + 1 for p in outside))


def validate_local(g: LocalFamily) -> tuple[int, int, int] | None:
    """First (Y1, Y2, X) with Y1, Y2 distinct nonempty proper sub-members of X, or None.

    This also rules out 3-chains of nonempty members.
    """
    ms = g.nonempty
    for x in ms:
        below = [y for y in ms if is_proper_subset(y, x)]
        if len(below) >= 2:
            return below[0], below[1], x
    return None


def _require_valid(g: LocalFamily) -> None:
    v = validate_local(g)
    if v is not None:
        raise LocalStructureError(v)


@dataclass(frozen=True)
class TUPartition:
    T: Family
    U: Family
    T_by_size: dict[int, Family]


def partition_tu(g: LocalFamily) -> TUPartition:
    _require_valid(g)
    ms = g.nonempty
    T = [x for x in ms if not any(is_proper_subset(y, x) for y in ms)]
    tset = set(T)
    U = [x for x in ms if x not in tset]
    by_size: dict[int, list[int]] = {}
    for t in T:
        by_size.setdefault(t.bit_count(), []).append(t)
    return TUPartition(
        Family(g.m, tuple(T)),
        Family(g.m, tuple(U)),
        {k: Family(g.m, tuple(v)) for k, v in sorted(by_size.items())},
    )


def permute(mask: int, perm: tuple[int, ...]) -> int:
    """Apply the element map old i -> perm[i - 1] (1-based) to a subset."""
    out = 0
    for i, new in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << (new - 1)
    return out


@dataclass(frozen=True)
class Relabelled:
    local: LocalFamily
    eta: int
    permutation: tuple[int, ...]


def relabel_eta(g: LocalFamily) -> Relabelled:
    """Move the singleton minimal members onto {eta+1, ..., m}, keeping the
    relative order of the remaining elements."""
    tu = partition_tu(g)
    singles = {t.bit_length() for t in tu.T_by_size.get(1, Family(g.m))}
    rest = [i for i in range(1, g.m + 1) if i not in singles]
    eta = len(rest)
    perm = [0] * g.m
    for new, old in enumerate(rest + sorted(singles), start=1):
        perm[old - 1] = new
    perm = tuple(perm)
    ground = [0] * g.m
    for old, new in enumerate(perm, start=1):
        ground[new - 1] = g.ground[old - 1]
    fam = Family(g.m, tuple(permute(x, perm) for x in g.family))
    out = LocalFamily(g.m, fam, tuple(ground))
    inner = (1 << eta) - 1
    for t in tu.T_by_size.get(2, Family(g.m)):
        if permute(t, perm) & ~inner:
            raise AssertionError("a 2-element minimal set meets a singleton minimal set")
    return Relabelled(out, eta, perm)


def _eta_and_edges(g: LocalFamily) -> tuple[int, list[tuple[int, int]]]:
    tu = partition_tu(g)
    singles = sorted(t.bit_length() for t in tu.T_by_size.get(1, Family(g.m)))
    eta = g.m - len(singles)
    if singles != list(range(eta + 1, g.m + 1)):
        raise ValueError("singleton minimal sets must be {eta+1}, ..., {m}; apply relabel_eta first")
    edges = []
    for t in tu.T_by_size.get(2, Family(g.m)):
        i, j = (p + 1 for p in range(g.m) if t >> p & 1)
        if j > eta:
            raise AssertionError("a 2-element minimal set meets a singleton minimal set")
        edges.append((i, j))
    return eta, edges


def build_aux_graph(g: LocalFamily, census: bool = True) -> AuxGraphStats:
    """Graph on [eta] whose edges are the 2-element minimal sets."""
    eta, edges = _eta_and_edges(g)
    return graph_stats(eta, edges, g.m, census=census)


def aux_graph(g: LocalFamily, census: bool = True) -> AuxGraphStats:
    return build_aux_graph(relabel_eta(g).local, census=census)


def compress(g: LocalFamily) -> LocalFamily:
    """Keep the empty set and the minimal sets T; replace everything above by all
    (|T|+1)-supersets of each T that contain no other minimal set."""
    tu = partition_tu(g)
    T = tu.T.members
    out = {0, *T}
    for t in T:
        for p in range(g.m):
            if t >> p & 1:
                continue
            v = t | 1 << p
            if not any(t0 != t and t0 & v == t0 for t0 in T):
                out.add(v)
    return LocalFamily(g.m, Family(g.m, tuple(out)), g.ground)


def upsilon(g: LocalFamily, i: int) -> int:
    """Full chains of Q_m through the empty set meeting g in exactly i sets."""
    return chain_census(g.family)[i]


@dataclass(frozen=True)
class BoundCheck:
    bound: int
    actual: int
    holds: bool


def star_lower_bound(g: LocalFamily) -> BoundCheck:
    """Y1 >= (m - eta)(m-3)! (2 ebar - sum_x max(0, 2 dbar(x) - m + 2))."""
    if g.m < 3:
        raise ValueError("needs m >= 3")
    stats = aux_graph(g, census=False)
    m, eta = g.m, stats.eta
    excess = sum(max(0, 2 * y - m + 2) for y in stats.degbar)
    bound = (m - eta) * math.factorial(m - 3) * (2 * stats.ebar - excess)
    actual = upsilon(g, 1)
    return BoundCheck(bound, actual, actual >= bound)


def ub3_upper_bound(g: LocalFamily) -> BoundCheck:
    """Y3 <= (m - eta) eta (m-2)! + 2 (m-3)! alpha1 + 6 (m-4)! beta0."""
    if g.m < 4:
        raise ValueError("needs m >= 4")
    stats = aux_graph(g)
    m, eta = g.m, stats.eta
    f = math.factorial
    bound = (m - eta) * eta * f(m - 2) + 2 * f(m - 3) * stats.alpha1 + 6 * f(m - 4) * stats.beta.zero
    actual = upsilon(g, 3)
    return BoundCheck(bound, actual, actual <= bound)
