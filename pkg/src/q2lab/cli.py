"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error,
3 an internal invariant was violated.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import sys
import time
from fractions import Fraction

from . import __version__
from .chains import census_through, chain_census, lemma2_check, lym_sum
from .graph import (
    alpha1_identity_check,
    degree_sum_identities,
    graph_stats,
    lemma7_report,
    parse_graph,
)
from .lattice import FamilyFormatError, mask_to_row, parse_family, serialize_family, tail_bound_check
from .optimize import maximize_qprime, maximize_theorem2_surface
from .patterns import builtin_pattern, contains_pattern, is_q2_free, parse_pattern
from .scd import check_decomposition, scd_decompose
from .search import branch_and_bound_ex, brute_force_ex, construct_conclusions_family, construct_two_middle_layers
from .suites import SUITES, failures, run_suite

log = logging.getLogger("q2lab")


class UsageError(Exception):
    pass


class CheckFailed(Exception):
    pass


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _flatten(rec: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in rec.items():
        if isinstance(v, dict):
            out.update(_flatten(v, f"{prefix}{k}."))
        elif isinstance(v, list):
            out[prefix + k] = " ".join(map(str, v))
        else:
            out[prefix + k] = v
    return out


class Emitter:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self._csv = None

    def __call__(self, rec: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(rec) + "\n")
        elif self.fmt == "csv":
            flat = _flatten(rec)
            if self._csv is None or list(flat) != self._csv.fieldnames:
                self._csv = csv.DictWriter(self.stream, fieldnames=list(flat), lineterminator="\n",
                                           extrasaction="ignore")
                self._csv.writeheader()
            self._csv.writerow(flat)
        else:
            for k, v in _flatten(rec).items():
                self.stream.write(f"{k}: {v}\n")
            self.stream.write("\n")


def _read(path: str) -> str:
    try:
        with open(path, encoding="ascii") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None


def _family(path: str):
    try:
        return parse_family(_read(path))
    except FamilyFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_census(args, emit):
    fam = _family(args.family)
    c = chain_census(fam, cap=args.cap)
    rec = {"n": fam.n, "size": len(fam), "counts": [str(x) for x in c.counts], "total": str(c.total)}
    w = is_q2_free(fam)
    rec["q2_free"] = w is None
    if w is None and args.cap is None:
        r = lemma2_check(fam)
        rec["lemma2"] = {"lhs": str(r.lhs), "rhs": str(r.rhs), "holds": r.holds}
    emit(rec)


def _row_mask(row: str, n: int) -> int:
    if len(row) != n or set(row) - {"0", "1"}:
        raise UsageError(f"--set must be a 0/1 string of length {n}")
    return sum(1 << i for i, ch in enumerate(row) if ch == "1")


def cmd_through(args, emit):
    fam = _family(args.family)
    a = _row_mask(args.set, fam.n)
    counts = census_through(fam, a)
    emit({"n": fam.n, "set": args.set, "member": a in fam, "counts": [str(x) for x in counts]})


def cmd_lym(args, emit):
    fam = _family(args.family)
    s = lym_sum(fam)
    antichain = all(not (x & y == x) for i, x in enumerate(fam.members) for y in fam.members[i + 1:])
    rec = {"n": fam.n, "lym": _q(s), "antichain": antichain, "at_most_one": s <= 1}
    emit(rec)
    if antichain and s > 1:
        raise CheckFailed("antichain with LYM sum above 1")


def cmd_pattern(args, emit):
    fam = _family(args.family)
    try:
        pat = builtin_pattern(args.pattern)
    except KeyError:
        pat = parse_pattern(_read(args.pattern))
    emb = contains_pattern(fam, pat)
    rec = {"n": fam.n, "pattern": pat.name or args.pattern, "contained": emb is not None}
    if emb is not None:
        rec["embedding"] = {str(k): mask_to_row(v, fam.n) for k, v in sorted(emb.items())}
    emit(rec)


def _digest(rec: dict) -> str:
    body = {k: v for k, v in rec.items() if k != "checks"}
    return hashlib.sha256(json.dumps(body, sort_keys=True).encode()).hexdigest()[:16]


def cmd_verify(args, emit):
    t0 = time.perf_counter()
    bad, count = [], 0
    for rec in run_suite(args.suite, args.seed, args.cases):
        count += 1
        rec["seed"] = str(rec["seed"])
        emit(rec)
        for name in failures(rec):
            bad.append({"suite": rec["suite"], "seed": rec["seed"], "input": _digest(rec), "check": name})
    emit({"summary": args.suite, "cases": count, "failures": bad, "ok": not bad})
    log.info("verify %s: %d cases in %.2fs", args.suite, count, time.perf_counter() - t0)
    if bad:
        raise CheckFailed(f"{len(bad)} failed checks")


def cmd_optimize(args, emit):
    if args.target == "qprime":
        r = maximize_qprime(grid=args.grid, tol=args.tol)
    else:
        r = maximize_theorem2_surface(grid=args.grid, tol=args.tol)
    emit({"target": args.target, "max_value": r.max_value, "argmax": list(r.argmax),
          "grid": args.grid, "tol": args.tol})


def cmd_scd(args, emit):
    d = scd_decompose(args.n)
    problems = check_decomposition(d)
    emit({"n": args.n, "chains": [[mask_to_row(x, args.n) for x in c] for c in d.chains],
          "count": len(d.chains), "valid": not problems})
    if problems:
        raise AssertionError("; ".join(problems))


def cmd_search(args, emit):
    if args.method == "brute":
        if args.n > 4:
            raise UsageError("brute force supports n <= 4")
        r = brute_force_ex(args.n)
    else:
        r = branch_and_bound_ex(args.n, time_budget=args.budget)
    emit({"n": r.n, "best_size": r.best_size, "proved_optimal": r.proved_optimal,
          "nodes": str(r.nodes_expanded), "seconds": round(r.wall_time, 3),
          "family": serialize_family(r.best_family)})


def cmd_construct(args, out):
    if args.kind == "two-middle":
        if args.n is None:
            raise UsageError("--n is required for two-middle")
        fam = construct_two_middle_layers(args.n)
    else:
        if args.m is None:
            raise UsageError("--m is required for conclusions")
        try:
            fam = construct_conclusions_family(args.m).family
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    out.write(serialize_family(fam))


def cmd_tailbound(args, emit):
    worst = True
    for n in args.n:
        if n < 8:
            raise UsageError("tail bound needs n >= 8")
        r = tail_bound_check(n)
        worst &= r.holds
        emit({"n": n, "lhs": r.lhs, "rhs": r.rhs, "holds": r.holds})
    if not worst:
        raise CheckFailed("tail bound failed")


def cmd_graph(args, emit):
    try:
        eta, edges = parse_graph(_read(args.graph))
    except ValueError as exc:
        raise UsageError(f"{args.graph}: {exc}") from None
    m = args.m if args.m is not None else eta
    st = graph_stats(eta, edges, m)
    rec = st.to_json()
    if eta >= 4:
        rec["identities"] = {**degree_sum_identities(st)._asdict(), "alpha1": alpha1_identity_check(st)}
        if eta < m:
            rep = lemma7_report(st)
            rec["lemma7"] = {"Q": _q(rep.Q), "midline_rhs": _q(rep.midline_rhs),
                             "midline_holds": rep.midline_holds, "final_bound": rep.final_bound}
    emit(rec)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="q2lab", description="Exact checks for diamond-free set families.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("census", help="full-chain census of a family file")
    s.add_argument("--family", required=True)
    s.add_argument("--cap", type=int)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("through", help="census of chains through one set")
    s.add_argument("--family", required=True)
    s.add_argument("--set", required=True, help="0/1 row, same layout as the family file")
    s.set_defaults(func=cmd_through)

    s = sub.add_parser("lym", help="exact LYM sum")
    s.add_argument("--family", required=True)
    s.set_defaults(func=cmd_lym)

    s = sub.add_parser("pattern", help="search a family for a subposet")
    s.add_argument("--family", required=True)
    s.add_argument("--pattern", default="q2", help="built-in name or pattern file")
    s.set_defaults(func=cmd_pattern)

    s = sub.add_parser("verify", help="randomized verification suites")
    s.add_argument("--suite", required=True, choices=[*SUITES, "all"])
    s.add_argument("--seed", type=_u64, default=0)
    s.add_argument("--cases", type=int, default=100)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("optimize", help="maximize Q'(a,b) or the three-layer surface")
    s.add_argument("--target", choices=("qprime", "t2surface"), required=True)
    s.add_argument("--grid", type=int, default=2048)
    s.add_argument("--tol", type=float, default=1e-12)
    s.set_defaults(func=cmd_optimize)

    s = sub.add_parser("scd", help="symmetric chain decomposition of Q_n")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_scd)

    s = sub.add_parser("search", help="exact ex(n, Q2)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=("brute", "bnb"), default="bnb")
    s.add_argument("--budget", type=float, default=None, help="seconds")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("construct", help="write a construction as a family file")
    s.add_argument("--kind", choices=("two-middle", "conclusions"), required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.set_defaults(func=cmd_construct, raw=True)

    s = sub.add_parser("tailbound", help="exact binomial tail against 2^(n+1) e^(-n^(1/3))")
    s.add_argument("--n", type=int, nargs="+", required=True)
    s.set_defaults(func=cmd_tailbound)

    s = sub.add_parser("graphstats", help="auxiliary-graph census of a graph file")
    s.add_argument("--graph", required=True)
    s.add_argument("--m", type=int)
    s.set_defaults(func=cmd_graph)
    return p


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    out = io.StringIO()
    try:
        if getattr(args, "raw", False):
            args.func(args, out)
        else:
            args.func(args, Emitter(args.format, out))
        code = 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"q2lab: error: {exc}", file=sys.stderr)
        return 2
    except CheckFailed as exc:
        log.error("%s", exc)
        code = 1
    except (AssertionError, ArithmeticError) as exc:
        sys.stdout.write(out.getvalue())
        print(f"q2lab: internal invariant violated: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(out.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
