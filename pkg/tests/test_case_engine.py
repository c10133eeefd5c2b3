import pytest

from fpp_certifier import case_engine as ce
from fpp_certifier.verdicts import Verdict, VerificationFailure


@pytest.fixture(scope="module")
def pairs():
    return ce.enumerate_pairs()


@pytest.fixture(scope="module")
def nonc18():
    return ce.filter_triples("H1_quotient_C2xC3_nonC18")


def test_ten_pair_cases(pairs, ref):
    assert sorted(c.label for c in pairs) == sorted(ref["pair_cases"])
    for c in pairs:
        assert [list(p) for p in c.profiles] == ref["pair_cases"][c.label]


def test_every_pair_config_has_total_four(pairs):
    for case in pairs:
        for cfg in case.configs:
            assert cfg.total_mult == 4
            assert cfg.label == case.label


def test_local_options():
    s = ce.Slot("a", "smooth", "x")
    assert ce.local_options(s, ce.Slot("a", "smooth", "y")) == ["tr"]
    assert ce.local_options(s, ce.Slot("a", "smooth", "x")) == ["tan_sm", "tan_tan"]
    assert ce.local_options(s, ce.Slot("a", "node", None)) == ["tan_node"]
    assert ce.local_options(ce.Slot("a", "node", None), ce.Slot("a", "node", None)) == []


def test_exclusions_leave_seven(pairs, ref):
    surv, log = ce.apply_exclusions(pairs)
    assert [c.label for c in surv] == ref["pair_survivors"]
    assert {f.target for f in log} == {"2a", "2b", "3a"}


def test_exclusions_do_not_depend_on_rule_order(pairs):
    a, _ = ce.apply_exclusions(pairs, ce.PAIR_RULES)
    b, _ = ce.apply_exclusions(pairs, tuple(reversed(ce.PAIR_RULES)))
    assert [c.label for c in a] == [c.label for c in b]


def test_strict_mode_raises_when_a_rule_misses(pairs):
    dud = ce.ExclusionRule("dud", ("1a",), lambda case: (Verdict.INCONCLUSIVE, {}), "never fires")
    with pytest.raises(VerificationFailure):
        ce.apply_exclusions(pairs, (dud,))
    surv, _ = ce.apply_exclusions(pairs, (dud,), strict=False)
    assert len(surv) == len(pairs)


def test_nn_rule_is_citation_only(pairs):
    _, log = ce.apply_exclusions(pairs)
    nn = [f for f in log if f.rule == "NN"]
    assert nn and all(f.citation_only for f in nn)


def test_free_pencil_numerics_for_two_doubled_lines():
    cfg = ce.enumerate_pairs(("N", "N"))[0].configs[0]
    res = ce.free_pencil_numerics([cfg.first, cfg.second])
    assert res.verdict is Verdict.CONSISTENT


def test_c3_context_kills_everything():
    assert ce.filter_triples("H1_quotient_C3").survivors == []


def test_nonc18_survivor(nonc18):
    assert nonc18.survivor_types == [("N", "I1", "I2")]
    assert all(list(t.common_points()) == ["a"] for t in nonc18.survivors)


def test_consequences_hold(nonc18):
    assert {c["name"]: c["holds"] for c in nonc18.consequences} == {"I1I21a": True, "I1I3I3": True}


def test_every_elimination_names_a_rule(nonc18):
    assert all(e["rule"] for e in nonc18.eliminated)


@pytest.mark.parametrize("ctx,want", [
    ("H1_quotient_C3", ce.ECVerdict.EC_EXISTS),
    ("H1_quotient_C2xC3_nonC18", ce.ECVerdict.EC_EXISTS),
    ("H1_quotient_C2xC3_C18", ce.ECVerdict.H0_VANISHES_ONLY),
    ("generic", ce.ECVerdict.UNDECIDED),
])
def test_default_verdicts(ctx, want):
    assert ce.exceptional_collection_verdict(ctx)[0] is want


@pytest.mark.parametrize("ctx", ["H1_quotient_C3", "H1_quotient_C2xC3_nonC18"])
def test_split_canonical_class_gives_collection(ctx):
    assert ce.exceptional_collection_verdict(ctx, K_split=True)[0] is ce.ECVerdict.EC_EXISTS
    assert ce.exceptional_collection_verdict(ctx, K_split=False)[0] is ce.ECVerdict.H0_VANISHES_ONLY


def test_unknown_context():
    with pytest.raises(KeyError):
        ce.filter_triples("nope")


def test_requirements_with_trivial_torsion():
    assert ce.reduce_requirements(ce.ec_vanishing_requirements()) == [(2, 0)]

