import json

import pytest

from gradalg.cli import main
from gradalg.serialize import build_artifact, dumps, loads, params_from_dict, params_to_dict, \
    verify_artifact
from gradalg.groups import make_group
from gradalg.isoclass import ParamTuple


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def work(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_construct_sl2(work, capsys):
    code, out, _ = run(capsys, "construct", "sl-I", "--group", "2", "--kappa", "1,1",
                       "--out", "a.json")
    assert code == 0 and 'dims {"0": 1, "1": 2}' in out
    art = json.loads((work / "a.json").read_text())
    assert art["header"]["format"] == "gal-v1" and art["header"]["p"] == 13
    assert {g: len(b) for g, b in art["body"]["lie"]["basis"].items()} == {"0": 1, "1": 2}
    code, out, _ = run(capsys, "verify", "a.json")
    assert code == 0 and out.strip().endswith("verified")
    code, out, _ = run(capsys, "basis", "a.json", "--degree", "1")
    assert code == 0 and len(json.loads(out)["basis"]) == 2


def test_construct_pauli_assoc(work, capsys):
    code, out, _ = run(capsys, "construct", "assoc", "--group", "2,2", "--kappa", "1",
                       "--T", "1,0;0,1", "--out", "p.json")
    assert code == 0
    comps = json.loads((work / "p.json").read_text())["body"]["components"]
    assert sorted(comps.values()) == [1, 1, 1, 1]


def test_sp_odd_size_is_parameter_error(work, capsys):
    code, _, err = run(capsys, "construct", "sp", "--group", "2", "--kappa", "1,0",
                       "--g0", "0", "--delta", "-1")
    assert code == 2 and "no-involution" in err


def test_corrupted_degree_table(work, capsys):
    run(capsys, "construct", "assoc", "--group", "2", "--kappa", "1,1", "--out", "a.json")
    art = json.loads((work / "a.json").read_text())
    table = art["body"]["degree_table"]
    table[1] = table[0]
    (work / "bad.json").write_text(json.dumps(art))
    code, out, _ = run(capsys, "verify", "bad.json")
    assert code == 1 and "violation" in out


def test_parse_errors(work, capsys):
    (work / "junk.json").write_text("{not json")
    code, _, err = run(capsys, "verify", "junk.json")
    assert code == 2 and "parse-error" in err
    code, _, _ = run(capsys, "verify", "missing.json")
    assert code == 2
    code, _, _ = run(capsys, "construct", "assoc", "--group", "2")
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_type2_associative_mode(work, capsys):
    code, _, _ = run(capsys, "construct", "sl-II", "--group", "2", "--H", "1", "--h", "1",
                     "--kappa", "2", "--mu0", "1", "--g0", "", "--out", "s.json")
    assert code == 0
    assert run(capsys, "verify", "s.json")[0] == 0
    code, out, _ = run(capsys, "verify", "--associative", "s.json")
    assert code == 0 and "violation [assoc]" in out


def test_decide_iso_so2(work, capsys):
    for g0 in (0, 1):
        run(capsys, "construct", "so", "--group", "2", "--kappa", "1,1", "--g0", g0,
            "--delta", "1", "--out", f"so{g0}.json")
    code, out, _ = run(capsys, "decide-iso", "so0.json", "so1.json", "--fingerprints")
    dec = json.loads(out)
    assert code == 0 and dec["verdict"] == "inequivalent"
    assert dec["refutation"]["fingerprint_delta"] == ["dims[(0,)]", "0", "1"]
    code, out, _ = run(capsys, "decide-iso", "so0.json", "so0.json", "--check")
    dec = json.loads(out)
    assert dec["verdict"] == "equivalent" and dec["witness"]["verified"] is True
    code, out, _ = run(capsys, "fingerprint", "so1.json")
    assert json.loads(out)["grading"]["dims"] == [[[0], 1]]


def test_max_n_guard(work, capsys):
    code, _, err = run(capsys, "--max-n", "2", "construct", "assoc", "--group", "2",
                       "--kappa", "2,1")
    assert code == 2 and "invalid-parameter" in err


def test_sweep_so_z2(work, capsys):
    code, out, _ = run(capsys, "sweep", "--group", "2", "--kind", "so", "--n-bound", "2")
    assert code == 0
    assert "n=2: 3 classes" in out
    code2, out2, _ = run(capsys, "sweep", "--group", "2", "--kind", "so", "--n-bound", "2")
    assert out2 == out


def test_artifact_round_trip():
    G = make_group([2, 2])
    p = params_from_dict({"kind": "so", "G": [2, 2], "T": [[0, 0]], "kappa": [1, 1, 1, 1],
                          "g0": [0, 0], "delta": 1})
    assert params_from_dict(params_to_dict(p)) == p
    art = build_artifact(p, dense=True)
    text = dumps(art)
    again = loads(text)
    assert again == art and dumps(again) == text
    assert verify_artifact(again).ok
    assert verify_artifact(again).checks == verify_artifact(art).checks
