import math

import pytest
from hypothesis import assume, given, strategies as st

from fpp_certifier import local_singularity as ls


def gaps_oracle(gens, bound=60):
    reach = {0}
    for n in range(1, bound + 1):
        if any(n >= g and n - g in reach for g in gens):
            reach.add(n)
    return [n for n in range(1, bound + 1) if n not in reach]


@given(st.integers(2, 7), st.integers(2, 9))
def test_two_generator_delta_formula(a, b):
    assume(math.gcd(a, b) == 1)
    assert ls.semigroup_delta([a, b]) == (a - 1) * (b - 1) // 2
    assert ls.semigroup_gaps([a, b]) == gaps_oracle([a, b])


def test_two_seven():
    assert ls.semigroup_delta([2, 7]) == 3
    assert ls.semigroup_gaps([2, 7]) == [1, 3, 5]


def test_non_numerical_semigroup_rejected():
    with pytest.raises(ValueError):
        ls.semigroup_delta([4, 6])


def test_classification_small_delta():
    assert [t.name for t in ls.classify_equivariant_singularity(2)] == ["node", "tacnode"]
    assert [t.name for t in ls.classify_equivariant_singularity(0)] == ["smooth"]


def test_singular_branch_costs_three():
    d, witness = ls.unibranched_delta_bound()
    assert d == 3
    assert witness.multiplicity == 2


def test_same_direction_contacts_skip_four():
    same = ls.smooth_contact_orders()["same"]
    assert same[:3] == [2, 5, 8]
    assert 4 not in same


def test_catalog_mults():
    got = {k: ls.local_intersection_mult(k) for k in ls.LOCAL_CONFIGS}
    assert got == {"tr": 1, "tan_sm": 2, "tan_tan": 4, "tr_tac": 2, "tan_node": 3, "tan_tac": 4}


@pytest.mark.parametrize("label", ["tr", "tan_sm", "tr_tac", "tan_node", "tan_tac"])
def test_normal_forms_reproduce_catalog(label):
    assert ls.contact_from_normal_form(label) == ls.local_intersection_mult(label)


def test_tan_tan_normal_form_disagrees_with_catalog():
    # (x - y^2)(x + y^2): the branches differ by 2y^2, contact 2, not 4
    assert ls.contact_from_normal_form("tan_tan") == 2


def test_delta_additivity():
    assert ls.delta_additivity([0, 0], [[0, 2], [2, 0]]) == 2
    with pytest.raises(ValueError):
        ls.delta_additivity([0, 0], [[0, 1], [2, 0]])
