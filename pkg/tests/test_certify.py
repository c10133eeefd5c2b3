import copy
import json

import pytest

from fpp_certifier import certify, cli, golden


@pytest.fixture(scope="module")
def bundle():
    return certify.verify_all()


def _ids(b, verdict):
    return {c["check_id"] for c in b["certificates"] if c["verdict"] == verdict}


def test_counts(bundle):
    s = bundle["summary"]
    assert s["VERIFIED"] >= 40
    assert sum(s.values()) == len(bundle["certificates"])


def test_known_failures(bundle):
    # the C7 search has genuine solutions, and the displayed Gram matrices
    # disagree with the pullback formula
    assert _ids(bundle, "FAILURE") == {
        "lefschetz.search.l7_3+3_target1",
        "lefschetz.C7_invariant_curves",
        *(f"lattice.pullback_consistency.{g} ({p})"
          for g in ("double", "m=4") for p in ("I1,I1", "I1,I3", "I3,I3")),
    }
    assert certify.exit_code(bundle) == 1


def test_deterministic(bundle):
    again = certify.verify_all()
    assert again["checksum"] == bundle["checksum"]
    strip = lambda b: {k: v for k, v in b.items() if k != "generated_at"}
    assert certify.bundle_json(strip(again)) == certify.bundle_json(strip(bundle))


def test_thread_cap_does_not_change_output(bundle, monkeypatch):
    monkeypatch.setenv("FPP_CERT_THREADS", "1")
    assert certify.verify_all(only=["db", "exact_arith"])["certificates"] == \
        [c for c in bundle["certificates"] if c["check_id"].split(".")[0] in ("exact_arith", "db")]


def test_only_filter():
    b = certify.verify_all(only=["lattice"])
    assert b["modules"] == ["lattice"]
    assert all(c["check_id"].startswith("lattice.") for c in b["certificates"])


def test_only_unknown_module():
    with pytest.raises(KeyError):
        certify.verify_all(only=["astrology"])


def test_bundle_roundtrip(bundle, tmp_path):
    p = tmp_path / "b.json"
    p.write_text(certify.bundle_json(bundle))
    assert certify.report(json.loads(p.read_text())) == certify.report(bundle)


def test_report_lines(bundle):
    text = certify.report(bundle)
    lines = text.splitlines()
    assert lines[-1] == "6 planes: exceptional collection verified at the case-analysis level"
    cited = [ln for ln in lines if ln.startswith("CITATION_ONLY")]
    assert cited and all("prose-geometric, not machine-checked" in ln for ln in cited)


def test_report_on_clean_bundle_claims_thirty(bundle):
    # with the failures removed the accounting reproduces the full claim
    b = copy.deepcopy(bundle)
    b["certificates"] = [c for c in b["certificates"] if c["verdict"] != "FAILURE"]
    b.pop("checksum")
    assert certify.report(b).splitlines()[-1] == \
        "30 planes: exceptional collection verified at the case-analysis level"


def test_empty_report():
    assert certify.report({}) == ""


@pytest.mark.parametrize("bad", [[], {"schema_version": 99, "certificates": []},
                                 {"schema_version": 1, "certificates": [{"check_id": "x"}]},
                                 {"schema_version": 1, "certificates": [
                                     {"check_id": "x", "lemma_ref": "y", "verdict": "MAYBE"}]}])
def test_malformed(bad):
    with pytest.raises(certify.MalformedBundle):
        certify.report(bad)


def test_checksum_detects_edit(bundle):
    b = copy.deepcopy(bundle)
    b["certificates"][0]["verdict"] = "FAILURE"
    with pytest.raises(certify.MalformedBundle):
        certify.report(b)


# --- mutation test: each perturbed reference value must surface as a new FAILURE

def _set(path, value):
    def apply(d):
        node = d
        for k in path[:-1]:
            node = node[k]
        node[path[-1]] = value(node[path[-1]]) if callable(value) else value
    return apply


MUTATIONS = [
    ("exact_arith", _set(["cyclotomic_sums", 2, "value"], "7/2")),
    ("lefschetz", _set(["diophantine", 0, "solutions"], [[4, 1]])),
    ("lefschetz", _set(["lefschetz_searches", 2, "expect_empty"], True)),
    ("lattice", _set(["table2", "N", 1], "0")),
    ("lattice", _set(["lattice", 0, "matrix", 0, 0], lambda v: v + 1)),
    ("lattice", _set(["lattice", 4, "determinant"], 35)),
    ("geometry", _set(["riemann_hurwitz", 0, "verdict"], "CONSISTENT")),
    ("local", _set(["local", "semigroup_deltas", 0, "delta"], 4)),
    ("cases", _set(["ec_verdicts", "generic"], "EC_EXISTS")),
    ("db", _set(["database", "classes"], 34)),
]


@pytest.fixture(scope="module")
def pristine_failures():
    return {m: _ids(certify.verify_all(only=[m]), "FAILURE") for m in {m for m, _ in MUTATIONS}}


@pytest.mark.parametrize("module,mutate", MUTATIONS, ids=[f"{m}-{i}" for i, (m, _) in enumerate(MUTATIONS)])
def test_mutation_is_caught(module, mutate, pristine_failures, tmp_path):
    data = copy.deepcopy(golden.load())
    mutate(data)
    p = tmp_path / "golden.json"
    p.write_text(json.dumps(data))
    b = certify.verify_all(only=[module], golden_path=p)
    assert certify.exit_code(b) == 1
    assert _ids(b, "FAILURE") - pristine_failures[module]


# --- command line

def _run(argv, capsys):
    code = cli.main(argv)
    return code, capsys.readouterr()


def test_cli_lefschetz_count(capsys):
    code, out = _run(["lefschetz", "count", "7", "1", "3"], capsys)
    assert code == 0 and json.loads(out.out)["ordered"] == 0


def test_cli_diophantine(capsys):
    code, out = _run(["lefschetz", "diophantine", "1", "3", "5", "--n-max", "3"], capsys)
    assert json.loads(out.out)["solutions"] == [[2, 1]]


def test_cli_det(tmp_path, capsys):
    cfg = golden.load()["lattice"][0]["config"]
    p = tmp_path / "c.json"
    p.write_text(json.dumps(cfg))
    code, out = _run(["lattice", "det", "--config", str(p)], capsys)
    res = json.loads(out.out)
    assert code == 0 and res["determinant"] == -252 and res["verdict"] == "CONTRADICTION"


def test_cli_det_bad_file(tmp_path, capsys):
    p = tmp_path / "c.json"
    p.write_text("{not json")
    assert _run(["lattice", "det", "--config", str(p)], capsys)[0] == 2
    assert _run(["lattice", "det", "--config", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_cli_checks(capsys):
    code, out = _run(["checks", "rh", "12", "11,11,1"], capsys)
    assert json.loads(out.out)["verdict"] == "CONTRADICTION"
    assert _run(["checks", "ledger"], capsys)[0] == 2
    code, out = _run(["checks", "ledger", "--power", "6"], capsys)
    assert json.loads(out.out)["verdict"] == "CONTRADICTION"


def test_cli_local(capsys):
    code, out = _run(["local", "delta", "--gens", "2,7"], capsys)
    assert json.loads(out.out)["delta"] == 3
    assert _run(["local", "delta", "--gens", "2,x"], capsys)[0] == 2


def test_cli_cases_verdict(capsys):
    code, out = _run(["cases", "verdict", "--ctx", "H1_quotient_C3", "--k-split", "true"], capsys)
    assert json.loads(out.out)["verdict"] == "EC_EXISTS"
    assert _run(["cases", "verdict", "--ctx", "nope"], capsys)[0] == 2


def test_cli_db(capsys):
    assert _run(["db", "lookup", "(a=7,p=2,∅,D₃2₇)"], capsys)[0] == 0
    assert _run(["db", "lookup", "nothing"], capsys)[0] == 1
    code, out = _run(["db", "query", "--aut", "C3xC3"], capsys)
    assert len(json.loads(out.out)) == 3


def test_cli_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["lefschetz"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        cli.main(["verify-all", "--bogus"])
    assert e.value.code == 2


def test_cli_verify_and_report(tmp_path, capsys):
    out = tmp_path / "b.json"
    code, _ = _run(["verify-all", "--only", "db", "--out", str(out)], capsys)
    assert code == 0
    code, res = _run(["report", str(out)], capsys)
    assert code == 0 and "db.coverage" in res.out
    code, _ = _run(["verify-all", "--only", "lefschetz"], capsys)
    assert code == 1
    assert _run(["verify-all", "--only", "nothing"], capsys)[0] == 2


def test_cli_report_empty(tmp_path, capsys):
    p = tmp_path / "e.json"
    p.write_text("{}")
    code, res = _run(["report", str(p)], capsys)
    assert code == 0 and res.out == ""
