"""Command line front end: ``fpp-certifier <group> <command>``.

Exit status is 0 on success, 1 when a check fails or a lookup misses, and 2
for usage errors or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import case_engine as ce
from . import certify, fpp_db, geometry_checks as gc, lefschetz as lf
from . import local_singularity as ls, surface_lattice as sl


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(certify._plain(obj), indent=2, ensure_ascii=False))


def _bool_arg(text: str) -> bool:
    t = text.lower()
    if t not in ("true", "false"):
        raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")
    return t == "true"


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


# --- lefschetz ---

def _lef_count(a):
    sols = lf.search_lefschetz_solutions(a.l, a.fixed, a.eigen, a.target)
    uno = lf.search_lefschetz_solutions(a.l, a.fixed, a.eigen, a.target, unordered=True)
    _emit({"l": a.l, "fixed_terms": a.fixed, "eigen_terms": a.eigen, "target": a.target,
           "ordered": len(sols), "unordered": len(uno), "examples": uno[: a.show]})
    return 0


def _lef_solve(a):
    c = lf.case_equation(a.k, a.l, a.delta)
    sols = lf.solve_diophantine(c)
    _emit({"equation": str(c), "solutions": sols,
           "candidates": [r.to_json() for r in lf.classify_candidates(a.l, ks=(a.k,), deltas=(a.delta,))]})
    return 0


def _lef_dio(a):
    c = lf.DiophantineConstraint(a.a, a.b, a.c, n_min=a.n_min, n_max=a.n_max)
    _emit({"equation": str(c), "solutions": lf.solve_diophantine(c)})
    return 0


# --- lattice ---

def _lat_table2(a):
    labels = [a.type] if a.type else ["N", "I1", "I2", "I3", "X"]
    try:
        _emit({lab: sl.curve_numerics(lab).to_json() for lab in labels})
    except KeyError:
        raise UsageError(f"unknown curve type {a.type!r}") from None
    return 0


def _lat_det(a):
    try:
        cfg = sl.LatticeConfig.from_json(_read_json(a.config))
        m = sl.build_intersection_matrix(cfg)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"bad lattice config: {exc}") from None
    res = sl.picard_contradiction(m)
    _emit({"name": cfg.name, "labels": cfg.labels(), "matrix": m, **res.to_json()})
    return 0


# --- checks ---

def _chk_rr(a):
    _emit({"m": a.m, "chi": gc.riemann_roch_chi(a.m), "h0_2L": gc.h0_2L_bound().to_json()})
    return 0


def _chk_schwarz(a):
    d, g = gc.schwarz_bounds(a.k)
    _emit({"k": a.k, "delta_max": d, "genus_min": g})
    return 0


def _chk_rh(a):
    try:
        cover = gc.RamifiedCover(a.degree, tuple(_ints(a.indices)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(gc.riemann_hurwitz_check(cover).to_json())
    return 0


def _chk_ledger(a):
    if a.power is not None:
        res = gc.cubic_surface_ledger(a.power)
    else:
        if a.p is None or a.d is None:
            raise UsageError("give --power, or both --p and --d")
        res = gc.canonical_degree_ledger(a.ky2, a.p, a.d)
    _emit(res.to_json())
    return 0


# --- local ---

def _loc_classify(a):
    _emit([t.to_json() for t in ls.classify_equivariant_singularity(a.delta_max)])
    return 0


def _loc_delta(a):
    gens = _ints(a.gens)
    try:
        _emit({"generators": gens, "delta": ls.semigroup_delta(gens), "gaps": ls.semigroup_gaps(gens)})
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return 0


# --- cases ---

def _ctx_name(name):
    if name not in ce.CONTEXTS:
        raise UsageError(f"unknown context {name!r}; choose from {sorted(ce.CONTEXTS)}")
    return name


def _cases_pairs(a):
    cases = ce.enumerate_pairs()
    surv, log = ce.apply_exclusions(cases, strict=False)
    _emit({"cases": [c.to_json() for c in cases], "survivors": [c.label for c in surv],
           "rules": [f.to_json() for f in log]})
    return 0


def _cases_triples(a):
    res = ce.filter_triples(_ctx_name(a.ctx), strict=False)
    out = res.to_json()
    if not a.full:
        out.pop("eliminated")
        out.pop("pair_rules")
    _emit(out)
    return 0


def _cases_verdict(a):
    v, ev = ce.exceptional_collection_verdict(_ctx_name(a.ctx), K_split=a.k_split)
    _emit({"context": a.ctx, "verdict": v, "evidence": ev})
    return 0


# --- db ---

def _db_lookup(a):
    try:
        r = fpp_db.lookup(a.label)
    except fpp_db.UnknownLabel as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 1
    _emit(r.to_json())
    return 0


def _db_report(a):
    _emit(fpp_db.coverage_report())
    return 0


def _db_query(a):
    _emit([r.to_json() for r in fpp_db.query(a.aut, a.table)])
    return 0


# --- certification ---

def _verify_all(a):
    try:
        bundle = certify.verify_all(a.out, only=a.only)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    s = bundle["summary"]
    print("  ".join(f"{k}={v}" for k, v in s.items()))
    if a.out:
        print(f"bundle written to {a.out}")
    else:
        sys.stdout.write(certify.report(bundle))
    return certify.exit_code(bundle)


def _report(a):
    try:
        text = certify.report(_read_json(a.bundle))
    except certify.MalformedBundle as exc:
        raise UsageError(f"malformed bundle: {exc}") from None
    sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fpp-certifier",
                                description="Exact checks for invariant curves on fake projective planes.")
    sub = p.add_subparsers(dest="group", required=True)

    g = sub.add_parser("lefschetz", help="holomorphic Lefschetz searches").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("count", help="count root-of-unity solutions")
    c.add_argument("l", type=int)
    c.add_argument("fixed", type=int, help="number of fixed-point terms")
    c.add_argument("eigen", type=int, help="number of eigenvalue terms")
    c.add_argument("--target", type=int, default=0)
    c.add_argument("--show", type=int, default=5, help="unordered examples to print")
    c.set_defaults(func=_lef_count)
    c = g.add_parser("solve", help="case equation and candidates for kL with delta")
    c.add_argument("k", type=int)
    c.add_argument("l", type=int)
    c.add_argument("delta", type=int)
    c.set_defaults(func=_lef_solve)
    c = g.add_parser("diophantine", help="nonnegative solutions of a n + b x = c")
    for name in ("a", "b", "c"):
        c.add_argument(name, type=int)
    c.add_argument("--n-min", type=int)
    c.add_argument("--n-max", type=int)
    c.set_defaults(func=_lef_dio)

    g = sub.add_parser("lattice", help="intersection lattice on Z").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("table2", help="numerics of proper transforms")
    c.add_argument("type", nargs="?")
    c.set_defaults(func=_lat_table2)
    c = g.add_parser("det", help="determinant and Picard check of a LatticeConfig")
    c.add_argument("--config", required=True)
    c.set_defaults(func=_lat_det)

    g = sub.add_parser("checks", help="numerical ledgers").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("rr")
    c.add_argument("m", type=int, nargs="?", default=4)
    c.set_defaults(func=_chk_rr)
    c = g.add_parser("schwarz")
    c.add_argument("k", type=int)
    c.set_defaults(func=_chk_schwarz)
    c = g.add_parser("rh", help="Riemann-Hurwitz for a cover of P1 by P1")
    c.add_argument("degree", type=int)
    c.add_argument("indices", help="comma-separated ramification indices")
    c.set_defaults(func=_chk_rh)
    c = g.add_parser("ledger", help="canonical degree ledger")
    c.add_argument("--power", type=int)
    c.add_argument("--ky2", type=int, default=3)
    c.add_argument("--p", type=int)
    c.add_argument("--d", type=int)
    c.set_defaults(func=_chk_ledger)

    g = sub.add_parser("local", help="equivariant local singularities").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("classify")
    c.add_argument("--delta-max", type=int, default=2)
    c.set_defaults(func=_loc_classify)
    c = g.add_parser("delta")
    c.add_argument("--gens", required=True)
    c.set_defaults(func=_loc_delta)

    g = sub.add_parser("cases", help="pair and triple case analysis").add_subparsers(dest="cmd", required=True)
    g.add_parser("pairs").set_defaults(func=_cases_pairs)
    c = g.add_parser("triples")
    c.add_argument("--ctx", default="H1_quotient_C2xC3_nonC18")
    c.add_argument("--full", action="store_true", help="include the elimination log")
    c.set_defaults(func=_cases_triples)
    c = g.add_parser("verdict")
    c.add_argument("--ctx", default="H1_quotient_C2xC3_nonC18")
    c.add_argument("--k-split", type=_bool_arg, default=None, metavar="{true,false}")
    c.set_defaults(func=_cases_verdict)

    g = sub.add_parser("db", help="plane records").add_subparsers(dest="cmd", required=True)
    c = g.add_parser("lookup")
    c.add_argument("label")
    c.set_defaults(func=_db_lookup)
    g.add_parser("report").set_defaults(func=_db_report)
    c = g.add_parser("query")
    c.add_argument("--aut")
    c.add_argument("--table", type=int, choices=[1, 3])
    c.set_defaults(func=_db_query)

    c = sub.add_parser("verify-all", help="run every check against the reference values")
    c.add_argument("--only", nargs="+", metavar="MODULE")
    c.add_argument("--out", help="write the certificate bundle here")
    c.set_defaults(func=_verify_all)

    c = sub.add_parser("report", help="render a certificate bundle")
    c.add_argument("bundle")
    c.set_defaults(func=_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fpp-certifier: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
