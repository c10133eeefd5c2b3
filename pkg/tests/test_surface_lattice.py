import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fpp_certifier import golden
from fpp_certifier import surface_lattice as sl

TABLE = {
    "N": ("4/3", "-1", "1", "1", "1"),
    "I1": ("4/3", "0", "2", "2", "2"),
    "I2": ("10/3", "-2", "1", "2", "1"),
    "I3": ("10/3", "-2", "1", "2", "1"),
    "X": ("10/3", "-2", "1", "2", "2"),
}


@pytest.mark.parametrize("label", sorted(TABLE))
def test_proper_transform_numerics(label):
    assert sl.curve_numerics(label).as_tuple() == tuple(Fraction(v) for v in TABLE[label])


def test_pullback_coefficients_solve_the_chain():
    g = sl.chain_gram()
    for p in sl.Passage:
        if p is sl.Passage.ABSENT:
            continue
        (a1, a2), _ = sl.pullback_decomposition(p)
        e1, e2 = p.incidence
        # (C_Z + a1 E1 + a2 E2).E_i = 0
        assert g[0][0] * a1 + g[0][1] * a2 + e1 == 0
        assert g[1][0] * a1 + g[1][1] * a2 + e2 == 0


square = st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(square)
def test_bareiss_against_sympy(m):
    want = int(sympy.Matrix(m).det())
    assert sl.exact_determinant(m) == want
    assert sl.cofactor_determinant(m) == want


@settings(max_examples=40, deadline=None)
@given(square)
def test_rank_against_sympy(m):
    assert sl.exact_rank(m) == sympy.Matrix(m).rank()


def test_stored_matrices(ref):
    dets = {}
    for e in ref["lattice"]:
        cfg = golden.config_from(e)
        built = sl.build_intersection_matrix(cfg)
        assert [[int(x) for x in r] for r in built] == golden.matrix_from(e)
        dets.setdefault(e["group"], set()).add(sl.exact_determinant(built))
        assert sl.picard_contradiction(built).verdict.value == "CONTRADICTION"
    assert dets == {"double": {-252}, "m4": {36}}


def test_mirror_preserves_determinant(ref):
    for e in ref["lattice"]:
        cfg = golden.config_from(e)
        a = sl.exact_determinant(sl.build_intersection_matrix(cfg))
        b = sl.exact_determinant(sl.build_intersection_matrix(sl.mirror_config(cfg)))
        assert a == b


def test_derived_configuration_is_degenerate():
    # two I1 curves through a and b: the pullback formula forces a singular
    # Gram matrix because rho(Y) = 1
    s, t = sl.standard_curve("I1", "S"), sl.standard_curve("I1", "T")
    cfg = sl.LatticeConfig([s, t], {}, "derived")
    m = sl.build_intersection_matrix(cfg)
    assert sl.exact_determinant(m) == 0
    assert all(v == 0 for v in sl.numerical_dependency_defect(cfg))


def test_stored_double_matrix_breaks_the_pullback_relation(ref):
    e = golden.lattice_entries(ref, "double")[0]
    cfg = golden.config_from(e)
    assert any(v != 0 for v in sl.numerical_dependency_defect(cfg, golden.matrix_from(e)))


def test_config_json_roundtrip(ref):
    cfg = golden.config_from(ref["lattice"][0])
    again = sl.LatticeConfig.from_json(json.dumps(cfg.to_json()))
    assert again.to_json() == cfg.to_json()


def test_bad_pair_index_rejected(ref):
    d = json.loads(json.dumps(ref["lattice"][0]["config"]))
    d["pair_intersections"] = [{"curves": [0, 0], "value": "1"}]
    with pytest.raises(ValueError):
        sl.LatticeConfig.from_json(d)


def test_non_integral_pair_raises():
    s = sl.CurveOnZ.make("S", 2, {"a": "smooth_E1"}, "I1", 1)
    t = sl.CurveOnZ.make("T", 2, {"a": "smooth_E1"}, "I1", 1)
    with pytest.raises(sl.InconsistentIncidence):
        sl.LatticeConfig([s, t]).pair(0, 1)


def test_surface_constants():
    assert sl.SURFACE.noether_holds()
    assert sl.SURFACE.picard_number_Z == 7
