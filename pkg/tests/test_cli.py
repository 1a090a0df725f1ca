import json
import subprocess
import sys

import pytest

from tiltcover.algebra import linear_algebra
from tiltcover.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_hh_squids(capsys):
    code, out = call(capsys, "hh", "compute", "--t", "2", "--p", "1,1")
    assert code == 0 and out["hh"] == 1
    code, out = call(capsys, "hh", "compute", "--t", "3", "--p", "2,1,1", "--tau", "1")
    assert code == 0 and out["hh"] == 0


def test_hh_from_file(capsys, tmp_path):
    f = tmp_path / "a3.json"
    f.write_text(json.dumps(linear_algebra(3).to_json()))
    code, out = call(capsys, "hh", "compute", str(f), "--degree", "0")
    assert code == 0 and out["hh"] == 1


def test_quiver_analyze_and_covers(capsys, tmp_path):
    code, out = call(capsys, "quiver", "analyze", "kronecker")
    assert code == 0 and out["pi1_rank"] == 1 and not out["is_tree"]
    dot = tmp_path / "k.dot"
    code, out = call(capsys, "quiver", "cover", "kronecker", "--group", "Z3", "--monodromy", "a=1",
                     "--dot", str(dot))
    assert code == 0 and out["galois"] and dot.read_text().startswith("digraph")
    code, out = call(capsys, "quiver", "cover", "kronecker", "--universal", "--radius", "3")
    assert code == 0 and out["is_tree"]


def test_tilt_commands(capsys):
    code, out = call(capsys, "tilt", "hasse", "A3")
    assert code == 0 and out["count"] == 5
    code, out = call(capsys, "tilt", "enumerate", "A2")
    assert code == 0 and out["count"] == 2
    code, out = call(capsys, "tilt", "mutate", "kronecker", "--path", "0,1;1,2")
    assert code == 0 and out["tilting"]
    code, out = call(capsys, "tilt", "reduce", "A2", "--object", "1,0@0;0,1@1")
    assert code == 0 and out["tilting"]


def test_tilt_reduce_rejects_non_T(capsys):
    code, out = call(capsys, "tilt", "reduce", "A2", "--object", "0,1@0;1,0@1")
    assert code == 1 and out["in_class_T"] is False


def test_cover_commands(capsys):
    base = ["kronecker", "--group", "Z2", "--monodromy", "b=1"]
    code, out = call(capsys, "cover", "build", *base)
    assert code == 0 and out["total_dim"] == 8
    code, out = call(capsys, "cover", "verify", *base, "--cap", "3")
    assert code == 0 and out["ok"]
    code, out = call(capsys, "cover", "lift", *base, "--path", "0,1;1,2")
    assert code == 0 and out["ok"]
    code, out = call(capsys, "cover", "end-cover", *base, "--path", "0,1")
    assert code == 0 and out["ok"]


def test_report(capsys):
    code = run(["report", "simply-connected", "kronecker", "--table"])
    captured = capsys.readouterr()
    assert code == 0
    assert json.loads(captured.out)["simply_connected"] is False
    assert "HH1" in captured.err


@pytest.mark.parametrize("argv", [
    ["hh", "compute", "no-such-file.json"],
    ["tilt", "reduce", "A2", "--object", "garbage"],
    ["quiver", "cover", "kronecker", "--group", "Q8x"],
    ["algebra", "squid", "--t", "3", "--p", "1,1,1", "--tau", "0"],
    ["hh"],
])
def test_invalid_input_exit_code(capsys, argv):
    assert run(argv) == 2
    capsys.readouterr()


def test_dim_cap_is_input_error(capsys):
    assert run(["hh", "compute", "--t", "3", "--p", "2,1,1", "--tau", "1", "--cap", "3"]) == 2
    assert "DimCapExceeded" in capsys.readouterr().out


def test_deterministic_output(capsys):
    outs = []
    for _ in range(2):
        run(["tilt", "hasse", "A3"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tiltcover", "hh", "compute", "--t", "2", "--p", "1,1"],
                         capture_output=True, text=True, timeout=120)
    assert res.returncode == 0 and json.loads(res.stdout)["hh"] == 1


def test_product_group_monodromy(capsys):
    code, out = call(capsys, "quiver", "cover", "kronecker", "--group", "Z2 x Z2", "--monodromy", "a=(1,0),b=(0,1)")
    # pi1 of the Kronecker quiver is cyclic, so a Klein four cover cannot be connected
    assert code == 0 and out["galois"] and not out["total_connected"]
