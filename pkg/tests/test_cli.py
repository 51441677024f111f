import json
import subprocess
import sys

import pytest

from mcmodels.cli import SUBCOMMANDS, main, run


def _run(*argv):
    code, report = run(list(argv))
    return code, report


def test_counterexample_report():
    code, rep = _run("counterexample")
    assert code == 0
    assert rep["report"] == {"first": "-x^3", "second": "0", "pass": True}


def test_bch_prints_rationals():
    code, rep = _run("bch", "--cap", "3")
    assert code == 0 and rep["report"]["primitive"]
    terms = dict(map(tuple, rep["report"]["bch"]))
    assert terms["l"] == "1/1" and terms["lm"] == "1/2" and terms["llm"] == "1/12"


@pytest.mark.parametrize("argv", [("gauge-flow", "--seed", "3"), ("solve-ode", "--seed", "1"),
                                  ("check-linfty", "--seed", "2"), ("rectify", "--seed", "1")])
def test_byte_identical_reruns(argv, capsys):
    outs = []
    for _ in range(2):
        assert main(list(argv)) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        run(["bch", "--bogus"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        run(["no-such-command"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        run(["bch", "--cap", "0"])
    assert e.value.code == 2


def test_out_file(tmp_path):
    path = tmp_path / "ls.json"
    assert main(["ls-algebra", "--cap", "3", "--out", str(path)]) == 0
    rep = json.loads(path.read_text())
    assert rep["report"]["d_squared_zero"] and rep["ok"]


def test_small_subcommands():
    for argv in (["transfer", "--n", "2"], ["dupont-verify", "--n", "1", "--degree-cap", "3"],
                 ["mc-model", "--level", "0"], ["solve-fp", "--cap", "3"], ["deform", "--hochschild"],
                 ["acceptance", "--only", "6"]):
        code, rep = _run(*argv)
        assert code == 0, rep


def test_deform_from_file(tmp_path):
    alg = {"basis": ["1", "x"],
           "product": [{"inputs": ["1", "1"], "output": [["1", "1"]]},
                       {"inputs": ["1", "x"], "output": [["x", "1"]]},
                       {"inputs": ["x", "1"], "output": [["x", "1"]]}],
           "deformation": [{"inputs": ["x", "x"], "output": [["1", "1"]]}]}
    p = tmp_path / "a.json"
    p.write_text(json.dumps(alg))
    code, rep = _run("deform", "--algebra", str(p), "--check", "cocycle")
    assert code == 0 and rep["report"]["cocycle"]
    # f(1, x) = 1 is not a cocycle: df(1, 1, x) = f(1, x) = 1
    alg["deformation"] = [{"inputs": ["1", "x"], "output": [["1", "1"]]}]
    p.write_text(json.dumps(alg))
    code, rep = _run("deform", "--algebra", str(p), "--check", "cocycle")
    assert code == 1 and not rep["ok"]


def test_check_linfty_flags_bad_input(tmp_path):
    obj = {"basis": [{"id": "x", "deg": 1}, {"id": "y", "deg": 0}, {"id": "z", "deg": -1}],
           "brackets": [{"n": 1, "inputs": ["x"], "output": [["y", "1"]]},
                        {"n": 1, "inputs": ["y"], "output": [["z", "1"]]}]}
    p = tmp_path / "l.json"
    p.write_text(json.dumps(obj))
    code, rep = _run("check-linfty", "--input", str(p))
    assert code == 1
    assert rep["report"]["relations"]["ok"] is False
    obj["brackets"].pop()
    p.write_text(json.dumps(obj))
    assert _run("check-linfty", "--input", str(p))[0] == 0


def test_invalid_parameters_exit_1():
    code, rep = _run("transfer", "--n", "1")
    assert code == 1 and rep["report"]["error"] == "InvalidInput"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "mcmodels", "counterexample"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["report"]["pass"] is True


def test_every_subcommand_has_a_handler():
    from mcmodels.cli import COMMANDS

    assert set(COMMANDS) == set(SUBCOMMANDS)
