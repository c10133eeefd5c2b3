import pytest

from fpp_certifier import geometry_checks as gc
from fpp_certifier.verdicts import Verdict


@pytest.mark.parametrize("deg,idx", [(12, (11, 11, 1)), (6, (5, 5, 1))])
def test_pencil_ramification_is_impossible(deg, idx):
    assert gc.riemann_hurwitz_check(gc.RamifiedCover(deg, idx)).verdict is Verdict.CONTRADICTION


def test_two_full_branch_points_are_fine():
    # z -> z^d has exactly two totally ramified points
    assert gc.riemann_hurwitz_check(gc.RamifiedCover(5, (4, 4))).verdict is Verdict.CONSISTENT


def test_index_out_of_range():
    with pytest.raises(ValueError):
        gc.RamifiedCover(3, (3,))


@pytest.mark.parametrize("p,d", [(-2, 4), (-4, 10)])
def test_canonical_ledgers(p, d):
    r = gc.canonical_degree_ledger(3, p, d)
    assert r.verdict is Verdict.CONTRADICTION
    assert r.chain


@pytest.mark.parametrize("power,p,d", [(3, -2, 4), (6, -4, 10)])
def test_cubic_surface_ledger_reduces_to_canonical(power, p, d):
    r = gc.cubic_surface_ledger(power)
    assert (r.values["pullback_multiple"], r.values["D_multiple"]) == (p, d)
    assert r.verdict is Verdict.CONTRADICTION


def test_cubic_surface_needs_power_divisible_by_three():
    with pytest.raises(ValueError):
        gc.cubic_surface_ledger(4)


@pytest.mark.parametrize("g,l", [(3, 3), (6, 7), (3, 7)])
def test_free_action_impossible(g, l):
    assert gc.euler_quotient_check(g, l) is Verdict.FIXED_POINT_FORCED


def test_free_action_possible_when_divisible():
    # 2 - 2g = -6 is divisible by 3 for g = 4
    assert gc.euler_quotient_check(4, 3) is not Verdict.FIXED_POINT_FORCED


def test_elliptic_pencil():
    assert gc.elliptic_pencil_check(2, 2, 1).verdict is Verdict.CONTRADICTION
    assert gc.elliptic_pencil_check(2, 2, 0).verdict is Verdict.CONSISTENT


def test_schwarz():
    assert gc.schwarz_bounds(1) == (0, 3)
    assert gc.schwarz_bounds(2) == (2, 4)


def test_riemann_roch_and_few_sections():
    assert [gc.riemann_roch_chi(m) for m in range(5)] == [1, 0, 0, 1, 3]
    assert gc.h0_2L_bound().values["bound"] == 2


def test_restricted_degree():
    assert gc.restricted_degree(3, 2) == 2
