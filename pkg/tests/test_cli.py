import json

import pytest

from pst_lab.cayley import CayleyGraph, gcd_graph
from pst_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_k2(capsys):
    code, out, _ = run(capsys, "check", "--group", "2", "--divisor-tuples", "1", "--quarter", "1")
    data = json.loads(out)
    assert code == 0
    assert data["pst"] == [
        {"u": "0", "v": "1", "shift": "1", "phase": {"re_num": 0, "im_num": 1, "den": 1}, "phase_str": "0+1i/1"}
    ]


def test_spectrum_c4(capsys):
    code, out, _ = run(capsys, "spectrum", "--group", "4", "--divisor-tuples", "1")
    assert code == 0
    data = json.loads(out)
    assert data["lambda"] == [2, 0, -2, 0] and data["schema"] == 1


def test_verify_thm3d(capsys):
    code, out, _ = run(capsys, "verify", "thm3d", "--max-n", "24")
    assert code == 0
    results = json.loads(out)["reports"][0]["results"]
    assert results and all(r["status"] == "pass" for r in results)


def test_build_round_trip(tmp_path, capsys):
    path = tmp_path / "graph.json"
    code, _, _ = run(capsys, "build", "--group", "4,2", "--divisor-tuples", "2,2;1,1", "--out", str(path))
    assert code == 0
    g = CayleyGraph.from_json(json.loads(path.read_text()))
    assert g == gcd_graph((4, 2), [(2, 2), (1, 1)])
    code, out, _ = run(capsys, "build", "--graph", str(path))
    assert json.loads(out) == json.loads(path.read_text())


def test_loops_round_trip(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(capsys, "build", "--group", "6", "--divisor-tuples", "6", "--divisor-tuples", "1", "--out", str(path))
    g = CayleyGraph.from_json(json.loads(path.read_text()))
    assert g.has_loops and g.degree == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("evolve", "--group", "4,2", "--divisor-tuples", "1,1", "--time", "0.7"),
        ("evolve", "--group", "4,2", "--divisor-tuples", "1,1", "--quarter", "3"),
        ("scan", "--group", "4", "--divisor-tuples", "1", "--t-max", "6.283", "--step", "0.002618"),
        ("family", "--n", "40", "--sample", "5", "--seed", "3"),
        ("construct", "thm3e", "--group", "4,2", "--i", "1", "--d", "1,2,4", "--loopless"),
    ],
)
def test_output_deterministic(capsys, argv):
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2


def test_evolve_exact_strings(capsys):
    _, out, _ = run(capsys, "evolve", "--group", "2", "--divisor-tuples", "1", "--quarter", "1")
    data = json.loads(out)
    assert data["row"] == {"0": "0+0i/2", "1": "0+2i/2"}


def test_evolve_csv(capsys):
    _, out, _ = run(capsys, "evolve", "--group", "2", "--divisor-tuples", "1", "--quarter", "1", "--format", "csv")
    assert out.splitlines() == ["0+0i/2,0+2i/2", "0+2i/2,0+0i/2"]


def test_cubelike(capsys):
    code, out, _ = run(capsys, "cubelike", "--n", "3", "--set", "100,010,001", "--classify")
    data = json.loads(out)
    assert code == 0 and data["classification"]["shift"] == "111"


def test_construct_thm3e(capsys):
    code, out, _ = run(capsys, "construct", "thm3e", "--group", "4,2", "--i", "1", "--d", "1,2,4", "--loopless")
    data = json.loads(out)
    assert code == 0
    assert [c["pst"]["shift"] for c in data["constructions"]] == ["2,0", "2,0"]
    assert [c["theorem"] for c in data["constructions"]] == ["thm3e:half", "thm3e:quarter"]


def test_family(capsys):
    _, out, _ = run(capsys, "family", "--n", "20", "--limit", "50")
    members = json.loads(out)["members"]
    assert members[0]["D"] == [1, 2, 4]


@pytest.mark.parametrize(
    "argv",
    [
        ("check", "--group", "4", "--divisor-tuples", "3"),
        ("check", "--divisor-tuples", "1"),
        ("check", "--group", "4", "--divisor-tuples", "1", "--connection-set", "1;3"),
        ("check", "--group", "5", "--connection-set", "1"),
        ("construct", "lemma3b", "--n", "12", "--d", "3"),
        ("construct", "thm3g", "--group", "2"),
        ("family", "--n", "6"),
        ("spectrum", "--group", "8", "--connection-set", "1;7"),
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("pst-lab:")


def test_mutually_exclusive_time(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["evolve", "--group", "4", "--divisor-tuples", "1", "--quarter", "1", "--time", "1.0"])
    assert exc.value.code == 2


def test_table_outputs(capsys):
    _, out, _ = run(capsys, "check", "--group", "4", "--divisor-tuples", "1", "--format", "table")
    assert "pst" in out and "(2)" in out
    code, out, _ = run(capsys, "verify", "lemma3b", "--max-n", "16", "--format", "table")
    assert code == 0 and "lemma3b" in out


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--max-n", "8")
    assert code == 0
    assert all(line.startswith("pass") for line in out.splitlines() if line.strip())
