"""Randomized verification suites.

Case i of a run with root seed r uses the 64-bit seed
``SeedSequence([r, i]).generate_state(1, uint64)[0]``, so any single case can be
replayed from the seed printed in its record.
"""
from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from .chains import census_through, chain_census, chain_weight, lemma2_check, lym_sum
from .graph import (
    alpha1_identity_check,
    complement_symmetry_check,
    decomposition_check,
    degree_relaxation_check,
    degree_sum_identities,
    graph_stats,
    lemma7_report,
)
from .lattice import Family, binom, middle_layer_size
from .local import compress, extract_local, star_lower_bound, ub3_upper_bound, upsilon, validate_local
from .patterns import is_q2_free
from .randgen import (
    random_graph,
    random_q2_free_family,
    random_three_layer,
    random_three_size_family,
    random_valid_local,
)
from .threelayer import lemma6_exact_check, main_ineq_check, shift_three_layers, three_layer_upsilons, upsilons_ineq_check


def case_seed(root: int, index: int) -> int:
    return int(np.random.SeedSequence([root, index]).generate_state(1, np.uint64)[0])


def lemma2_case(seed: int, n: int | None = None) -> dict:
    rng = random.Random(seed)
    n = rng.randint(4, 8) if n is None else n
    fam = random_q2_free_family(rng, n)
    res = lemma2_check(fam)
    c = res.census
    checks = {
        "q2_free": is_q2_free(fam) is None,
        "census_total": c.total == math.factorial(n),
        "no_long_chains": all(c[i] == 0 for i in range(4, n + 2)),
        "incidence_identity": 3 * c[3] + 2 * c[2] + c[1] == chain_weight(fam),
        "lemma2": res.holds,
        "lym_minimal": lym_sum(Family(n, tuple(fam.minimal()))) <= 1,
    }
    if n <= 6:
        through = sum((Fraction(v, i) for a in fam for i, v in enumerate(census_through(fam, a)) if i),
                      Fraction(0))
        checks["through_sum"] = through == c.total - c[0]
    return {"seed": seed, "n": n, "size": len(fam), "checks": checks}


def local_case(seed: int, n: int | None = None) -> dict:
    rng = random.Random(seed)
    n = rng.randint(2, 8) if n is None else n
    fam = random_q2_free_family(rng, n)
    valid, scaling = True, True
    for s in fam.minimal():
        g = extract_local(fam, s)
        valid &= validate_local(g) is None
        if n <= 7:
            through = census_through(fam, s)
            local = chain_census(g.family).counts
            k = math.factorial(s.bit_count())
            scaling &= all(through[i] == k * local[i] for i in range(len(local)))
    checks = {"valid_local": valid}
    if n <= 7:
        checks["scaling"] = scaling
    return {"seed": seed, "n": n, "size": len(fam), "checks": checks}


def graph_case(seed: int) -> dict:
    rng = random.Random(seed)
    m = rng.randint(5, 20)
    eta = rng.randint(4, m - 1)
    st = graph_stats(eta, random_graph(rng, eta), m)
    ids = degree_sum_identities(st)
    tri_star, path_path = complement_symmetry_check(st)
    rep = lemma7_report(st)
    checks = {
        "d_dbar2": ids.d_dbar2,
        "d3": ids.d3,
        "dbar_d2": ids.dbar_d2,
        "dbar3": ids.dbar3,
        "alpha1": alpha1_identity_check(st),
        "decomposition": decomposition_check(st),
        "complement_tri_star": tri_star,
        "complement_path": path_path,
        "degree_relaxation": degree_relaxation_check(st),
        "midline": rep.midline_holds,
    }
    return {"seed": seed, "m": m, "eta": eta, "e": st.e, "beta0": st.beta.zero, "checks": checks}


def three_layer_case(seed: int, n: int | None = None) -> dict:
    rng = random.Random(seed)
    n = rng.randint(2, 10) if n is None else n
    f = random_three_layer(rng, n)
    mi, up, l6 = main_ineq_check(f), upsilons_ineq_check(f), lemma6_exact_check(f)
    ups = three_layer_upsilons(f)
    checks = {
        "main_ineq": mi.holds,
        "upsilons": up.holds,
        "upsilons_identity": up.identity_ok,
        "lemma6_u": l6.holds_u,
        "lemma6_s": l6.holds_s,
        "chain_total": sum(ups) == binom(n, f.k) * f.k * (n - f.k),
    }
    return {"seed": seed, "n": n, "k": f.k, "sizes": [len(f.S), len(f.T), len(f.U)], "checks": checks}


def shift_case(seed: int, n: int | None = None) -> dict:
    rng = random.Random(seed)
    n = rng.randint(2, 10) if n is None else n
    fam = random_three_size_family(rng, n)
    res = shift_three_layers(fam)
    gap = middle_layer_size(n) - binom(n, res.Fprime.k)
    checks = {
        "shift_free": is_q2_free(res.Fprime.family) is None,
        "shift_loss": len(fam) <= len(res.Fprime) + 2 * gap,
        "shift_accounting": len(fam) == len(res.Fprime) + res.unshifted_s + res.unshifted_u,
    }
    return {"seed": seed, "n": n, "sizes": fam.sizes(), "checks": checks}


def compression_case(seed: int) -> dict:
    rng = random.Random(seed)
    m = rng.randint(2, 9)
    g = random_valid_local(rng, m)
    g2 = compress(g)
    checks = {
        "compressed_valid": validate_local(g2) is None,
        "monotone": upsilon(g, 3) <= upsilon(g2, 3),
    }
    return {"seed": seed, "m": m, "size": len(g.family), "checks": checks}


def star_ub3_case(seed: int) -> dict:
    rng = random.Random(seed)
    m = rng.randint(4, 9)
    g = random_valid_local(rng, m)
    checks = {"star": star_lower_bound(g).holds, "ub3": ub3_upper_bound(g).holds}
    return {"seed": seed, "m": m, "size": len(g.family), "checks": checks}


SUITES: dict[str, Callable[[int], dict]] = {
    "lemma2": lemma2_case,
    "local": local_case,
    "graph-identities": graph_case,
    "three-layer": three_layer_case,
    "shift": shift_case,
    "compression": compression_case,
    "star-ub3": star_ub3_case,
}


def _run_case(args: tuple[str, int]) -> dict:
    name, seed = args
    rec = SUITES[name](seed)
    return {"suite": name, **rec}


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("Q2LAB_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(name: str, root_seed: int, cases: int, threads: int | None = None) -> Iterator[dict]:
    """Yield one record per case, in case-index order."""
    names = list(SUITES) if name == "all" else [name]
    jobs = [(nm, case_seed(root_seed, i)) for nm in names for i in range(cases)]
    threads = thread_count() if threads is None else threads
    if threads <= 1:
        yield from map(_run_case, jobs)
    else:
        with ProcessPoolExecutor(threads) as ex:
            yield from ex.map(_run_case, jobs, chunksize=8)


def failures(record: dict) -> list[str]:
    return [k for k, v in record["checks"].items() if not v]
