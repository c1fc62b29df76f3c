"""Acceptance criteria 1-11, each run at its stated size and tolerance.

Every test prints one PASS/FAIL line.  The lines are also collected in
RESULTS and repeated at the end of the pytest run, and running this file
directly executes all criteria and prints only those lines.
"""
import math
import random
import time

from q2lab.chains import chain_census
from q2lab.lattice import Family, binom, middle_layer_size, tail_bound_check
from q2lab.optimize import QPRIME_CLAIM, maximize_qprime, maximize_theorem2_surface
from q2lab.scd import check_decomposition, scd_decompose
from q2lab.search import branch_and_bound_ex, brute_force_ex, conclusions_check
from q2lab.suites import case_seed, compression_case, graph_case, lemma2_case, local_case, shift_case, star_ub3_case, three_layer_case

from oracles import perm_census

RESULTS: dict[int, str] = {}
ROOT = 20261015


def report(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)
    assert ok, line


def run_cases(fn, cases, tag, **kw):
    """Failed check names with counts over ``cases`` seeded records."""
    bad: dict[str, int] = {}
    for i in range(cases):
        rec = fn(case_seed(ROOT + tag, i), **kw)
        for name, v in rec["checks"].items():
            if not v:
                bad[name] = bad.get(name, 0) + 1
    return bad


def test_criterion_01_qprime():
    t0 = time.perf_counter()
    g = maximize_qprime()
    left = maximize_qprime(region="left")
    dt = time.perf_counter() - t0
    a, b = g.argmax
    ok = (0.2832 <= g.max_value <= QPRIME_CLAIM and abs(a - 0.935) <= 0.01 and abs(b - 0.285) <= 0.01
          and abs(left.max_value - 0.25) <= 1e-6
          and abs(left.argmax[0] - 0.5) <= 1e-6 and abs(left.argmax[1] - 1) <= 1e-6 and dt < 5)
    report(1, ok, f"max Q' = {g.max_value:.9f} at ({a:.5f}, {b:.5f}); a<1/2 sup = {left.max_value:.9f} "
                  f"at ({left.argmax[0]:.6f}, {left.argmax[1]:.6f}); {dt:.2f}s")


def test_criterion_02_theorem2_surface():
    t0 = time.perf_counter()
    r = maximize_theorem2_surface()
    dt = time.perf_counter() - t0
    p = (2 + math.sqrt(2)) / 4
    err = abs(r.max_value - (3 + math.sqrt(2)))
    ok = err <= 1e-9 and all(abs(x - p) <= 1e-4 for x in r.argmax) and dt < 5
    report(2, ok, f"max = {r.max_value:.12f} (err {err:.1e}) at ({r.argmax[0]:.7f}, {r.argmax[1]:.7f}); {dt:.2f}s")


def test_criterion_03_lemma2():
    bad = {}
    for n in range(4, 9):
        for k, v in run_cases(lemma2_case, 1000, n, n=n).items():
            bad[(n, k)] = v
    report(3, not bad, f"5 x 1000 Q2-free families, n = 4..8; failures {bad or 'none'}")


def test_criterion_04_census():
    rng = random.Random(ROOT + 4)
    mism = 0
    for n in range(3, 8):
        for _ in range(200):
            p = rng.random()
            f = Family(n, tuple(x for x in range(1 << n) if rng.random() < p))
            c = chain_census(f)
            mism += list(c.counts) != perm_census(f) or c.total != math.factorial(n)
    report(4, mism == 0, f"1000 families vs permutation enumeration, n = 3..7; mismatches {mism}")


def test_criterion_05_three_layer():
    bad = run_cases(three_layer_case, 1000, 5)
    report(5, not bad, f"1000 three-layer instances, n <= 10; failures {bad or 'none'}")


def test_criterion_06_local():
    bad = {}
    for fn, tag in ((local_case, 61), (star_ub3_case, 62), (compression_case, 63)):
        bad.update(run_cases(fn, 1000, tag))
    report(6, not bad, f"1000 each of extraction/scaling, star/UB-3, compression; failures {bad or 'none'}")


def test_criterion_07_graph_identities():
    bad: dict[str, int] = {}
    agree = 0
    for i in range(1000):
        rec = graph_case(case_seed(ROOT + 7, i))
        for name, v in rec["checks"].items():
            if not v:
                bad[name] = bad.get(name, 0) + 1
        agree += (not rec["checks"]["midline"]) == (rec["beta0"] == 0)
    note = ""
    if "midline" in bad:
        note = f" (midline fails iff beta0 = 0 on {agree}/1000 graphs)"
    report(7, not bad, f"1000 graphs, 4 <= eta < m <= 20; failures {bad or 'none'}{note}")


def test_criterion_08_scd_and_shift():
    scd_bad = [n for n in range(17)
               if check_decomposition(d := scd_decompose(n)) or len(d.chains) != binom(n, n // 2)]
    bad = run_cases(shift_case, 500, 8)
    report(8, not scd_bad and not bad, f"SCD n = 0..16 bad {scd_bad or 'none'}; 500 shifts failures {bad or 'none'}")


def test_criterion_09_extremal():
    notes, ok = [], True
    ok &= brute_force_ex(2).best_size == 3
    solved = {}
    for n in (3, 4):
        t0 = time.perf_counter()
        bb = branch_and_bound_ex(n, time_budget=60)
        dt = time.perf_counter() - t0
        bf = brute_force_ex(n).best_size
        ok &= bb.proved_optimal and bb.best_size == bf and dt < 60
        solved[n] = bb.best_size
        notes.append(f"n={n}: {bb.best_size} ({dt:.2f}s)")
    r5 = branch_and_bound_ex(5, time_budget=3600)
    ok &= r5.proved_optimal
    solved[2], solved[5] = 3, r5.best_size
    notes.append(f"n=5: {r5.best_size} proved={r5.proved_optimal} ({r5.wall_time:.1f}s, {r5.nodes_expanded} nodes)")
    ok &= all(v >= binom(n, n // 2) + binom(n, n // 2 + 1) for n, v in solved.items())
    report(9, ok, "ex(2) = 3; " + "; ".join(notes))


def test_criterion_10_conclusions():
    rows, ok = [], True
    for m in (4, 6, 8, 10):
        r = conclusions_check(m)
        ok &= r.upsilon3 >= r.lower >= math.factorial(m) / 4 and 4 * r.lower >= math.factorial(m)
        rows.append(f"m={m}: {r.upsilon3} >= {r.lower} >= {math.factorial(m) // 4}")
    report(10, ok, "; ".join(rows))


def test_criterion_11_tail_bound():
    ns = (27, 64, 125, 216, 343, 512, 729, 1000)
    bad = [n for n in ns if not tail_bound_check(n).holds]
    report(11, not bad, f"n in {ns}; failures {bad or 'none'}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
