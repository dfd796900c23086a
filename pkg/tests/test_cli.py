import json

import pytest

from eightvertex.cli import main
from eightvertex.matchgate import Matchgate, signature

from conftest import aligned_bond_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def bond_file(tmp_path):
    path = tmp_path / "graph.json"
    path.write_text(json.dumps(aligned_bond_json()))
    return str(path)


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "1", "1", "1.5", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "PM-equivalent"
    assert data["flags"]["SQ-SUM"] and not data["flags"]["d-SUM"]
    assert data["params"] == ["1", "1", "3/2", "1"]


def test_eval_bond_graph(capsys, bond_file):
    code, out, _ = run(capsys, "eval", bond_file, "2", "1", "1", "1")
    assert code == 0 and out.strip() == "14"


def test_eval_falls_back_to_contraction(capsys, bond_file):
    code, out, _ = run(capsys, "eval", bond_file, "2", "1", "1", "1", "--max-bruteforce", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["value"] == "14" and data["method"] == "contract"


def test_synthesize_boundary_k4(capsys):
    code, out, _ = run(capsys, "synthesize", "--even", '{"tuple":[1,1,1,1,1,1,3,1]}', "--json")
    data = json.loads(out)
    assert code == 0 and data["residual"] == 0
    gate = Matchgate.from_json(data["gate"])
    assert signature(gate).matrix() == [[3, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]]


def test_synthesized_gate_json_round_trips(capsys, tmp_path):
    code, out, _ = run(capsys, "synthesize", "--odd", '{"tuple":[1,2,1,1,3,1,1,1]}', "--json")
    assert code == 0
    path = tmp_path / "gate.json"
    path.write_text(json.dumps(json.loads(out)["gate"]))
    code, out, _ = run(capsys, "synthesize", "--gate", str(path), "--json", "--float")
    data = json.loads(out)
    assert code == 0 and data["parity"] == "odd"
    m = data["matrix"]
    lam = m[0][1] / 1  # d1 sits at 0010
    assert m[0][2] == pytest.approx(lam * 1) and m[1][0] == pytest.approx(lam * 1)


def test_synthesize_outside_region_is_domain_error(capsys):
    code, _, err = run(capsys, "synthesize", "--even", '{"tuple":[1,1,1,1,1,1,4,1]}')
    assert code == 1 and "outside" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify", "1", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_domain_errors_exit_1(capsys, tmp_path):
    assert main(["eval", str(tmp_path / "missing.json"), "1", "1", "1", "1"]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["eval", str(bad), "1", "1", "1", "1"]) == 1
    assert main(["classify", "1", "x", "1", "1"]) == 1
    assert main(["normalize", "1", "1", "1", "0"]) == 1


def test_holant_instance(capsys, tmp_path):
    inst = {"graph": aligned_bond_json(), "function": {"eight_vertex": ["2", "1", "1", "1"]},
            "connector": "NEQ2"}
    code, out, _ = run(capsys, "holant", json.dumps(inst), "--method", "contract")
    assert code == 0 and out.strip() == "14"


def test_reduce_ising(capsys, bond_file):
    code, out, _ = run(capsys, "reduce-ising", bond_file, "--w", "2", "--z", "3", "--json")
    data = json.loads(out)
    assert code == 0 and data["ising_graph"]["n"] == 2 and data["identity"]["equal"]
    assert data["identity"]["holant"] == "26"


def test_gadget_iterate_and_normalize(capsys):
    code, out, _ = run(capsys, "gadget-iterate", "1.2", "1.3", "1.5", "1", "--rounds", "12", "--json")
    data = json.loads(out)
    assert code == 0 and data["within_bound"] and data["final_gap"] <= 2 ** -8
    code, out, _ = run(capsys, "normalize", "2", "0", "3", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["replay_matches"] and data["recipe"][-1] == {"op": "normalize"}


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--quick", "--jobs", "1")
    assert code == 0 and "all invariants hold" in out
    assert out.count("PASS") == 12
