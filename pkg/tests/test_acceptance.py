"""Acceptance criteria, one test each.  Each prints a PASS/FAIL line."""

import copy
import json
import time
from fractions import Fraction

import pytest

from fpp_certifier import case_engine as ce, certify, fpp_db, golden
from fpp_certifier import geometry_checks as gc, lefschetz as lf, local_singularity as ls
from fpp_certifier import surface_lattice as sl
from fpp_certifier.exact_arith import CyclotomicElement, cyc_inv_one_minus_zeta
from fpp_certifier.verdicts import Verdict


@pytest.fixture
def verdict_line(capsys, request):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\nCRITERION {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def test_c01_inverse_sum(verdict_line):
    bad = []
    for l in (3, 5, 7, 11, 13):
        s = sum((cyc_inv_one_minus_zeta(l, k) for k in range(1, l)), CyclotomicElement.zero(l))
        if not (s.is_rational() and s.to_rational() == Fraction(l - 1, 2)):
            bad.append(l)
    verdict_line(1, not bad, f"sum 1/(1-zeta^k) = (l-1)/2; mismatches {bad}")


def test_c02_root_of_unity_searches(verdict_line):
    t0 = time.perf_counter()
    a = lf.search_lefschetz_solutions(7, 1, 3, 0)
    b = lf.search_lefschetz_solutions(7, 3, 3, 1)
    c = lf.search_lefschetz_solutions(3, 2, 2, 0)
    d = lf.search_lefschetz_solutions(3, 3, 3, 0)
    dt = time.perf_counter() - t0
    ok = (not a and not b and ((1, 2), (1, 2)) in c and ((1, 1, 1), (1, 2, 2)) in d and dt < 1)
    b_uno = lf.search_lefschetz_solutions(7, 3, 3, 1, unordered=True)
    verdict_line(2, ok, f"l7 1+3: {len(a)} sols; l7 3+3 target 1: {len(b)} sols "
                        f"(e.g. {b_uno[:2]}); l3 witnesses present: "
                        f"{((1, 2), (1, 2)) in c}, {((1, 1, 1), (1, 2, 2)) in d}; {dt:.2f}s")


def test_c03_diophantine_tables(verdict_line):
    # every invariant curve of the order 3 case carries a fixed point, so n >= 1
    def sols(a, b, c, n_max=None):
        n_min = 1 if a == 1 else None
        return set(lf.solve_diophantine(lf.DiophantineConstraint(a, b, c, n_min=n_min, n_max=n_max)))
    got = [sols(3, 7, 12) == {(4, 0)}, sols(3, 7, 11) == set(), sols(3, 7, 10) == {(1, 1)},
           sols(3, 7, 9) == {(3, 0)}, len(sols(1, 3, 8)) == 3, len(sols(1, 3, 7)) == 3,
           len(sols(1, 3, 6)) == 2, sols(1, 3, 5, 3) == {(2, 1)}]
    verdict_line(3, all(got), f"table rows matching: {sum(got)}/8")


def test_c04_curve_types(verdict_line):
    rows = [r.as_tuple() for r in lf.classify_invariant_curve_types(3)]
    want = [("N", 2, 0, 1), ("I1", 2, 0, 2), ("I2", 4, 1, 1), ("I3", 3, 2, 1)]
    verdict_line(4, rows == want, f"rows {rows}")


def test_c05_proper_transform_table(verdict_line):
    want = {"N": (Fraction(4, 3), -1, 1, 1, 1), "I1": (Fraction(4, 3), 0, 2, 2, 2),
            "I2": (Fraction(10, 3), -2, 1, 2, 1), "I3": (Fraction(10, 3), -2, 1, 2, 1),
            "X": (Fraction(10, 3), -2, 1, 2, 2)}
    bad = [k for k, v in want.items() if sl.curve_numerics(k).as_tuple() != tuple(map(Fraction, v))]
    verdict_line(5, not bad, f"mismatching types {bad}")


def test_c06_determinants(verdict_line):
    data = golden.load()
    found = []
    for e in data["lattice"]:
        m = sl.build_intersection_matrix(golden.config_from(e))
        pic = sl.picard_contradiction(m)
        found.append((e["group"], sl.exact_determinant(m), pic.verdict))
    ok = (sorted(found, key=str) == sorted([("double", -252, Verdict.CONTRADICTION)] * 3
                                           + [("m4", 36, Verdict.CONTRADICTION)] * 3, key=str))
    verdict_line(6, ok, f"{[(g, d, v.value) for g, d, v in found]}")


def test_c07_ledgers(verdict_line):
    C, F = Verdict.CONTRADICTION, Verdict.FIXED_POINT_FORCED
    got = [gc.riemann_hurwitz_check(gc.RamifiedCover(12, (11, 11, 1))).verdict is C,
           gc.riemann_hurwitz_check(gc.RamifiedCover(6, (5, 5, 1))).verdict is C,
           gc.canonical_degree_ledger(3, -2, 4).verdict is C,
           gc.canonical_degree_ledger(3, -4, 10).verdict is C,
           gc.euler_quotient_check(3, 3) is F, gc.euler_quotient_check(6, 7) is F,
           gc.euler_quotient_check(3, 7) is F,
           gc.elliptic_pencil_check(2, 2, 1).verdict is C]
    verdict_line(7, all(got), f"{sum(got)}/8 ledgers as expected")


def test_c08_local(verdict_line):
    names = {t.name for t in ls.classify_equivariant_singularity(2)}
    reach = {0}
    for n in range(1, 51):
        if any(n >= g and n - g in reach for g in (2, 7)):
            reach.add(n)
    oracle = [n for n in range(1, 51) if n not in reach]
    ok = names == {"node", "tacnode"} and ls.semigroup_delta([2, 7]) == 3 == len(oracle) \
        and ls.semigroup_gaps([2, 7]) == oracle == [1, 3, 5]
    verdict_line(8, ok, f"types {sorted(names)}; delta(2,7) = {ls.semigroup_delta([2, 7])}; gaps {oracle}")


def test_c09_case_engine(verdict_line):
    t0 = time.perf_counter()
    pairs = ce.enumerate_pairs()
    surv, _ = ce.apply_exclusions(pairs)
    c3 = ce.filter_triples("H1_quotient_C3")
    c6 = ce.filter_triples("H1_quotient_C2xC3_nonC18")
    v3 = ce.exceptional_collection_verdict("H1_quotient_C3", K_split=True)[0]
    v6 = ce.exceptional_collection_verdict("H1_quotient_C2xC3_nonC18", K_split=True)[0]
    dt = time.perf_counter() - t0
    ok = (sorted(c.label for c in pairs) == sorted(ce.CASE_LABELS) and len(pairs) == 10
          and [c.label for c in surv] == ["1a", "1b-1", "1b-2", "1b-3", "1c", "3b", "3c"]
          and c3.survivors == [] and c6.survivor_types == [("N", "I1", "I2")]
          and v3 is v6 is ce.ECVerdict.EC_EXISTS and dt < 5)
    verdict_line(9, ok, f"{len(pairs)} pair cases, survivors {[c.label for c in surv]}, "
                        f"C3 {c3.survivor_types}, C2xC3 {c6.survivor_types}, {v3}/{v6}, {dt:.2f}s")


def test_c10_database(verdict_line):
    recs = fpp_db.records()
    rep = fpp_db.coverage_report()
    ok = (rep["table1"] == 15 and rep["table3"] == 18 and len(recs) == 33
          and rep["covered_planes"] == 30
          and all(12 % fpp_db.invariant_torsion_exponent(r) == 0 for r in recs)
          and all(6 % fpp_db.invariant_torsion_exponent(r) == 0 for r in recs if r.table == 1)
          and not any(r.h1_M.p_rank(3) for r in recs if r.aut_group == "C3xC3")
          and gc.riemann_roch_chi(4) == 3 and gc.h0_2L_bound().values["bound"] == 2)
    verdict_line(10, ok, f"{rep['table1']}+{rep['table3']} records, {rep['covered_planes']} covered planes")


def test_c11_verify_all_and_mutations(verdict_line, tmp_path):
    pristine = certify.verify_all()
    failures = [c["check_id"] for c in pristine["certificates"] if c["verdict"] == "FAILURE"]
    mutations = [
        ("exact_arith", ["cyclotomic_sums", 0, "value"], "3/2"),
        ("lefschetz", ["diophantine", 2, "solutions"], []),
        ("lattice", ["table2", "I2", 0], "4/3"),
        ("lattice", ["lattice", 1, "matrix", 2, 3], 1),
        ("geometry", ["euler_quotients", 0, "verdict"], "CONSISTENT"),
        ("db", ["database", "covered_planes"], 32),
    ]
    caught = 0
    for module, path, value in mutations:
        data = copy.deepcopy(golden.load())
        node = data
        for k in path[:-1]:
            node = node[k]
        node[path[-1]] = value
        p = tmp_path / "golden.json"
        p.write_text(json.dumps(data))
        caught += certify.exit_code(certify.verify_all(only=[module], golden_path=p)) == 1
    ok = certify.exit_code(pristine) == 0 and caught == len(mutations)
    verdict_line(11, ok, f"pristine exit {certify.exit_code(pristine)} "
                         f"({len(failures)} FAILURE: {failures}); mutations caught {caught}/{len(mutations)}")
