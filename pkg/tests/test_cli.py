import json
import subprocess
import sys

import pytest

from asphera.cli import main
from asphera.models import cycle_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    data = json.loads(out)
    assert data["schema"] == "asphera.report/1" and data["command"] == list(argv)
    return data["outputs"]


@pytest.mark.parametrize("example", ["zpq:2,3", "three-extensions", "dihedral:3", "coset-wedge:dihedral:3"])
def test_reproduce_examples_pass(capsys, example):
    out = report(capsys, "reproduce", example)
    assert out["all_pass"], [c for c in out["checks"] if not c["pass"]]


def test_zpq_report_contents(capsys):
    checks = {c["check"]: c for c in report(capsys, "reproduce", "zpq:2,3")["checks"]}
    assert checks["vertices"]["computed"] == 11 and checks["edges"]["computed"] == 12
    assert checks["H_1"]["computed"] == "Z^2"
    assert all(checks[f"H_{k}(Z_6; H_1) periodic"]["computed"] == "0" for k in range(7))
    assert [checks[f"H_{k}(S)"]["computed"] for k in range(6)] == ["Z", "Z_6", "0", "Z_6", "0", "Z_6"]


def test_three_extensions_total(capsys):
    checks = {c["check"]: c["computed"] for c in report(capsys, "reproduce", "three-extensions")["checks"]}
    assert checks["classes over trivial Z"] == 2 and checks["classes over sign Z"] == 1
    assert checks["total extensions"] == 3


def test_unknown_example_is_a_usage_error(capsys):
    code, _, err = run(capsys, "reproduce", "nonsense")
    assert code == 2 and "three-extensions" in err


def test_bad_flags_exit_two(capsys):
    assert run(capsys, "compute", "ghom", "--group", "cyclic:2", "--degree", "x")[0] == 2
    assert run(capsys, "compute", "frobnicate")[0] == 2
    assert run(capsys, "compute", "ghom", "--group", "nonsense:3")[0] == 2


def test_scale_exceeded_exits_three(capsys, monkeypatch):
    monkeypatch.setenv("ASPHERA_MAX_RANK", "10")
    code, _, err = run(capsys, "compute", "ghom", "--group", "dihedral:3", "--degree", "3")
    assert code == 3 and "ASPHERA_MAX_RANK" in err


def test_internal_violation_exits_four(capsys, tmp_path):
    # simulate a corrupted chain complex surfacing mid-computation
    from asphera import cli

    def broken(args):
        raise ArithmeticError("boundary composite d1 d2 is not zero")

    original = cli._compute_group
    cli._compute_group = broken
    try:
        assert run(capsys, "compute", "group", "--group", "cyclic:2")[0] == 4
    finally:
        cli._compute_group = original


def test_lattice_dot(capsys):
    code, out, _ = run(capsys, "compute", "lattice", "--group", "cyclic:6", "--coset-poset", "--dot")
    assert code == 0 and out.startswith("digraph") and out.count("label=") == 11


def test_lattice_json(capsys):
    out = report(capsys, "compute", "lattice", "--group", "cyclic:6")
    assert (out["elements"], out["covering_pairs"], out["euler_characteristic"]) == (11, 12, -1)
    sub = report(capsys, "compute", "lattice", "--group", "dihedral:3", "--subgroup-lattice")
    assert sub["elements"] == 4


def test_ghom_sign_cohomology(capsys):
    out = report(capsys, "compute", "ghom", "--group", "cyclic:2", "--module", "sign", "--degree", "2", "--cohomology")
    assert out["result"]["text"] == "0" and out["resolution"] == "periodic" and "seconds" not in out
    h2 = report(capsys, "compute", "ghom", "--group", "cyclic:2", "--h2")
    assert [c["is_split"] for c in h2["classes"]] == [True, False]


def test_module_file_round_trip(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"n_gens": 1, "relations": [[4]], "action": [[[1]], [[-1]]]}))
    out = report(capsys, "compute", "ghom", "--group", "cyclic:2", "--module", f"file:{path}", "--degree", "1")
    assert out["result"]["text"] == "Z_2"


def test_exported_module_reloads(capsys, tmp_path):
    first = report(capsys, "compute", "ghom", "--group", "cyclic:4", "--module", "trivial:3", "--degree", "2")
    path = tmp_path / "exported.json"
    path.write_text(json.dumps(first["module"]))
    again = report(capsys, "compute", "ghom", "--group", "cyclic:4", "--module", f"file:{path}", "--degree", "2")
    assert again["result"] == first["result"]


def test_homology_from_file(capsys, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(cycle_graph(6).to_json())
    out = report(capsys, "compute", "homology", "--complex", str(path), "--degree", "1")
    assert out["homology"]["text"] == "Z"
    code, dot, _ = run(capsys, "compute", "homology", "--complex", str(path), "--dot")
    assert code == 0 and dot.count("--") == 6


def test_e2_borel_subordinate(capsys):
    e2 = report(capsys, "compute", "e2", "--action", "zpq:2,3", "--pmax", "5", "--qmax", "1")
    assert e2["page"]["rows"][0] == ["Z", "Z_6", "0", "Z_6", "0", "Z_6"]
    assert all(d["status"] == "DETERMINED" for d in e2["abutment"]["degrees"])
    b = report(capsys, "compute", "borel", "--action", "hexagon:reflection", "--m", "4")
    assert b["certified"][1]["group"] == "Z_2 + Z_2"
    s = report(capsys, "compute", "subordinate", "--action", "dihedral:3", "--subgroup", "0,1,2")
    assert s["report"]["kind"] == "DIAGRAM-ONLY" and s["diagram"]["induced_h1_map"] == [[3]]


def test_action_file(capsys, tmp_path):
    path = tmp_path / "a.json"
    perms = [list(range(6)), [(i + 3) % 6 for i in range(6)]]
    path.write_text(json.dumps({"group": "cyclic:2", "complex": cycle_graph(6).to_dict(), "perms": perms}))
    s = report(capsys, "compute", "subordinate", "--action-file", str(path))
    assert s["report"]["kind"] == "FREE"


def test_reports_are_byte_identical(capsys):
    first = run(capsys, "reproduce", "dihedral:3")[1]
    second = run(capsys, "reproduce", "dihedral:3")[1]
    assert first == second


def test_timing_flag_and_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    assert main(["--timing", "--out", str(target), "compute", "group", "--group", "cyclic:3"]) == 0
    data = json.loads(target.read_text())
    assert "seconds" in data and data["outputs"]["group"]["order"] == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "asphera", "compute", "group", "--group", "cyclic:2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["outputs"]["cyclic"]
