"""Q2-free families on three layers k-1, k, k+1 of Q_n."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .lattice import Family, binom, middle_layer_size
from .patterns import NotQ2FreeError, is_q2_free
from .scd import scd_decompose


@dataclass(frozen=True)
class ThreeLayerFamily:
    n: int
    k: int
    S: Family
    T: Family
    U: Family

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise ValueError("need 1 <= k <= n - 1")
        for fam, size in ((self.S, self.k - 1), (self.T, self.k), (self.U, self.k + 1)):
            if fam.n != self.n:
                raise ValueError("ground sizes differ")
            if any(x.bit_count() != size for x in fam):
                raise ValueError(f"members off layer {size}")

    @classmethod
    def split(cls, fam: Family, k: int) -> ThreeLayerFamily:
        by = {s: tuple(x for x in fam if x.bit_count() == s) for s in (k - 1, k, k + 1)}
        if sum(len(v) for v in by.values()) != len(fam):
            raise ValueError("family has members outside layers k-1, k, k+1")
        n = fam.n
        return cls(n, k, Family(n, by[k - 1]), Family(n, by[k]), Family(n, by[k + 1]))

    @property
    def family(self) -> Family:
        return Family(self.n, self.S.members + self.T.members + self.U.members)

    @property
    def n_mid(self) -> int:
        return binom(self.n, self.k)

    def __len__(self) -> int:
        return len(self.S) + len(self.T) + len(self.U)


def _require_free(f: ThreeLayerFamily) -> None:
    w = is_q2_free(f.family)
    if w is not None:
        raise NotQ2FreeError(w)


def _down(y: int, n: int):
    for p in range(n):
        if y >> p & 1:
            yield y & ~(1 << p)


def _up(y: int, n: int):
    for p in range(n):
        if not y >> p & 1:
            yield y | 1 << p


@dataclass(frozen=True)
class Profiles:
    f: dict[int, int]       # X in S -> #{T in T : X < T}
    g: dict[int, int]       # Z in U -> #{T in T : T < Z}
    fbreve: dict[int, int]  # Y in T -> #{S in S : S < Y}
    gbreve: dict[int, int]  # Y in T -> #{U in U : Y < U}


def profiles(f: ThreeLayerFamily) -> Profiles:
    n = f.n
    S, T, U = f.S.member_set, f.T.member_set, f.U.member_set
    return Profiles(
        {x: sum(y in T for y in _up(x, n)) for x in f.S},
        {z: sum(y in T for y in _down(z, n)) for z in f.U},
        {y: sum(x in S for x in _down(y, n)) for y in f.T},
        {y: sum(z in U for z in _up(y, n)) for y in f.T},
    )


def three_layer_upsilons(f: ThreeLayerFamily) -> list[int]:
    """counts[i] = number of chains X < Y < Z through the three layers meeting the family in i sets."""
    n, k = f.n, f.k
    S, T, U = f.S.member_set, f.T.member_set, f.U.member_set
    counts = [0, 0, 0, 0]
    for y in range(1 << n):
        if y.bit_count() != k:
            continue
        a = sum(x in S for x in _down(y, n))
        c = sum(z in U for z in _up(y, n))
        t = 1 if y in T else 0
        counts[t + 2] += a * c
        counts[t + 1] += a * (n - k - c) + (k - a) * c
        counts[t] += (k - a) * (n - k - c)
    if sum(counts) != f.n_mid * k * (n - k):
        raise AssertionError("three-layer chain total differs from C(n,k) k (n-k)")
    return counts


@dataclass(frozen=True)
class IneqCheck:
    lhs: int
    rhs: int
    holds: bool


def main_ineq_check(f: ThreeLayerFamily) -> IneqCheck:
    _require_free(f)
    n, k = f.n, f.k
    ups = three_layer_upsilons(f)
    lhs = (k + 1) * k * len(f.U) + k * (n - k) * len(f.T) + (n - k + 1) * (n - k) * len(f.S)
    rhs = 2 * f.n_mid * k * (n - k) + ups[3] - ups[1]
    return IneqCheck(lhs, rhs, lhs <= rhs)


@dataclass(frozen=True)
class UpsilonsCheck:
    lhs_diff: int
    bound: int
    identity_ok: bool
    holds: bool


def upsilons_ineq_check(f: ThreeLayerFamily) -> UpsilonsCheck:
    _require_free(f)
    n, k = f.n, f.k
    ups = three_layer_upsilons(f)
    p = profiles(f)
    bound = sum(p.fbreve[y] * p.gbreve[y] - (k - p.fbreve[y]) * (n - k - p.gbreve[y]) for y in f.T)
    rewrite = (n - k) * sum(p.f.values()) + k * sum(p.g.values()) - len(f.T) * k * (n - k)
    diff = ups[3] - ups[1]
    return UpsilonsCheck(diff, bound, bound == rewrite, diff <= bound)


@dataclass(frozen=True)
class Lemma6Check:
    holds_u: bool
    holds_s: bool


def lemma6_exact_check(f: ThreeLayerFamily) -> Lemma6Check:
    """Double counts of (lower, upper) incidences with the pairs a Q2 would need removed."""
    _require_free(f)
    n, k = f.n, f.k
    p = profiles(f)
    C = math.comb
    holds_u = C(k + 1, 2) * len(f.U) + sum(C(v, 2) for v in p.f.values()) <= binom(n, k - 1) * C(n - k + 1, 2)
    holds_s = C(n - k + 1, 2) * len(f.S) + sum(C(v, 2) for v in p.g.values()) <= binom(n, k + 1) * C(k + 1, 2)
    return Lemma6Check(holds_u, holds_s)


@dataclass(frozen=True)
class ShiftResult:
    Fprime: ThreeLayerFamily
    unshifted_s: int
    unshifted_u: int


def shift_three_layers(fam: Family, check_free: bool = True) -> ShiftResult:
    """Slide the lowest and highest layers of a three-size family next to the
    middle one along the chains of a symmetric chain decomposition."""
    sizes = fam.sizes()
    if len(sizes) != 3:
        raise ValueError(f"family must have exactly three member sizes, has {sizes}")
    n, (ks, k, ku) = fam.n, sizes
    decomp = scd_decompose(n)
    where = decomp.chain_index()
    layer_k = {}
    for i, c in enumerate(decomp.chains):
        if c[0].bit_count() <= k <= c[-1].bit_count():
            layer_k[i] = c
    S = [x for x in fam if x.bit_count() == ks]
    T = [x for x in fam if x.bit_count() == k]
    U = [x for x in fam if x.bit_count() == ku]

    def slide(members, target):
        out = {}
        for x in members:
            c = layer_k.get(where[x])
            if c is None:
                continue
            y = next(z for z in c if z.bit_count() == target)
            if y in out:
                raise AssertionError("two members of one layer on a single chain")
            out[y] = x
        return tuple(out)

    s2, u2 = slide(S, k - 1), slide(U, k + 1)
    res = ShiftResult(
        ThreeLayerFamily(n, k, Family(n, s2), Family(n, tuple(T)), Family(n, u2)),
        len(S) - len(s2),
        len(U) - len(u2),
    )
    gap = middle_layer_size(n) - binom(n, k)
    if res.unshifted_s > gap or res.unshifted_u > gap:
        raise AssertionError("more unshifted members than N - N'")
    if check_free and is_q2_free(fam) is None and is_q2_free(res.Fprime.family) is not None:
        raise AssertionError("shifting created a Q2")
    return res


@dataclass(frozen=True)
class Theorem2Report:
    size: int
    bound: float


def theorem2_report(f: ThreeLayerFamily) -> Theorem2Report:
    _require_free(f)
    return Theorem2Report(len(f), (3 + math.sqrt(2)) / 2 * f.n_mid)
