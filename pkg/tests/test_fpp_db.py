import math
import shutil

import pytest
from hypothesis import given, strategies as st

from fpp_certifier import fpp_db
from fpp_certifier.fpp_db import AbelianGroup, Applicability


def test_counts():
    recs = fpp_db.records()
    assert len(recs) == 33
    assert sum(r.table == 1 for r in recs) == 15
    assert fpp_db.coverage_report()["covered_planes"] == 30


@pytest.mark.parametrize("text,factors", [
    ("C2^4", (2, 2, 2, 2)), ("C₂⁴", (2, 2, 2, 2)), ("C2 × C3", (2, 3)),
    ("C6", (2, 3)), ("0", ()), ("C4xC12", (3, 4, 4)),
])
def test_parse(text, factors):
    assert AbelianGroup.parse(text).factors == factors


@given(st.lists(st.integers(2, 30), max_size=4))
def test_order_and_str_roundtrip(orders):
    g = AbelianGroup(tuple(orders))
    assert g.order == math.prod(orders)
    assert AbelianGroup.parse(str(g)) == g


def test_subgroup_counts():
    assert AbelianGroup.parse("C3xC3").subgroups_of_order(3) == 4
    assert fpp_db.unique_c3_subgroup(AbelianGroup.parse("C3xC7"))
    assert not fpp_db.unique_c3_subgroup(AbelianGroup.parse("C2^4"))


def test_exponents():
    for r in fpp_db.records():
        assert 12 % fpp_db.invariant_torsion_exponent(r) == 0
        if r.table == 1:
            assert 6 % fpp_db.invariant_torsion_exponent(r) == 0


def test_c3xc3_has_no_three_torsion():
    assert all(r.h1_M.p_rank(3) == 0 for r in fpp_db.query(aut="C3xC3"))


def test_lookup_spellings():
    a = fpp_db.lookup("(C18,p=3,{2},(dD)₃)")
    b = fpp_db.lookup(r"(\mathcal{C}_{18},p=3,\{2\},(dD)_3)")
    assert a == b
    assert fpp_db.theorem_applicability(a) is Applicability.H0_2L_ONLY


def test_misprinted_label_resolves():
    assert fpp_db.lookup("(a=1,p=5,∅,{2},D3)").label.startswith("(a=1,p=5,{2}")


def test_unknown_label():
    with pytest.raises(fpp_db.UnknownLabel):
        fpp_db.lookup("(a=99,p=2,∅,D3)")


def test_applicability_by_group():
    for r in fpp_db.query(aut="C7:C3"):
        assert fpp_db.theorem_applicability(r) is Applicability.C7_ACTION
    assert all(fpp_db.theorem_applicability(r).covered for r in fpp_db.query(table=1))
    assert not any(fpp_db.theorem_applicability(r).covered for r in fpp_db.query(table=3))


def test_checksum_is_enforced(tmp_path):
    src = fpp_db._data_path("fpp_records.tsv")
    dst = tmp_path / "fpp_records.tsv"
    shutil.copy(src, dst)
    shutil.copy(src.with_name(src.name + ".sha256"), tmp_path / "fpp_records.tsv.sha256")
    assert len(fpp_db.load_records(dst)) == 33
    dst.write_text(dst.read_text().replace("C2xC3", "C3", 1))
    with pytest.raises(fpp_db.ChecksumMismatch):
        fpp_db.load_records(dst)
