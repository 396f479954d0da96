import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from dercat.cli import main, run_command
from dercat.workspace import Workspace, WorkspaceError, parse_module

DEMOS = Path(__file__).resolve().parent.parent / "demos"


@pytest.fixture
def wz(tmp_path):
    p = tmp_path / "z.json"
    shutil.copy(DEMOS / "workspace_z.json", p)
    return str(p)


@pytest.fixture
def wq(tmp_path):
    p = tmp_path / "q.json"
    shutil.copy(DEMOS / "workspace_q.json", p)
    return str(p)


def run(*argv):
    return run_command(list(argv))


def test_cohomology(wz):
    r = run("cohomology", "-w", wz, "-x", "X", "--degree", "1")
    assert r.status == 0 and "Z/2" in r.text


def test_ext_and_tor_literals_need_no_workspace():
    r = run("ext", "--from", "Z/4", "--to", "Z/6", "-n", "1")
    assert r.status == 0 and "Z/2" in r.text
    r = run("tor", "--from", "Z/4", "--to", "Z/6", "-n", "1")
    assert r.status == 0 and "Z/2" in r.text


def test_ext_with_named_modules(wz):
    r = run("ext", "-w", wz, "--from", "A", "--to", "B", "-n", "0")
    assert r.status == 0 and "Z/2" in r.text


def test_k_versus_d_witness(wz):
    r = run("zero-in-d", "-w", wz, "--identity", "W")
    assert r.status == 0
    assert "zero in D" in r.text and "not null-homotopic" in r.text


def test_certify_exit_codes(wz):
    # Z -2-> Z -> Z/2 -0-> Sigma Z is not exact
    assert run("certify", "-w", wz, "-a", "two", "-b", "pz", "-c", "zero").status == 1
    assert run("certify", "-w", wz, "-a", "inc", "-b", "proj", "-c", "zero").status == 2
    assert run("certify", "-w", wz, "-a", "two").status == 2
    assert run("certify", "-w", wz, "-a", "nope", "-b", "proj", "-c", "zero").status == 2


def test_octahedron_of_two_and_three(wz):
    r = run("octahedron", "-w", wz, "-f", "two", "-g", "three")
    assert r.status == 0


def test_les_from_a_map(wz):
    r = run("les", "-w", wz, "-f", "two")
    assert r.status == 0 and "exact" in r.text


def test_roofs(wz):
    assert run("compose-roof", "-w", wz, "-r", "r2", "-s", "r3").status == 0
    assert run("roof-eq", "-w", wz, "-r", "r2", "-s", "r2").status == 0


def test_ses_triangle(wz):
    r = run("ses-triangle", "-w", wz, "--alpha", "two", "--beta", "pz")
    assert r.status == 0


def test_decompose_and_homs(wz):
    assert run("decompose", "-w", wz, "-x", "W").status == 0
    assert run("homk", "-w", wz, "-x", "X", "-y", "X").status == 0
    assert run("homd", "-w", wz, "-x", "Z2", "-y", "SZ").status == 0
    assert run("weakker", "-w", wz, "-f", "two").status == 0
    assert run("pushout", "-w", wz, "-f", "two", "-g", "three").status == 0
    for cmd in ("cone", "rotate"):
        assert run(cmd, "-w", wz, "-f", "two").status == 0
    assert run("shift", "-w", wz, "-x", "X", "-k", "2").status == 0


def test_dg_commands(wq, tmp_path):
    assert run("dg-check", "-w", wq, "-a", "L").status == 0
    assert run("dg-dual", "-w", wq, "-a", "L").status == 0
    out = tmp_path / "out.json"
    r = run("dg-end", "-w", wq, "-x", "C", "--save", "EC", "--out", str(out))
    assert r.status == 0
    assert "EC" in Workspace.load(str(out)).dgas


def test_laws_command():
    r = run("laws", "--suite", "TR1", "--count", "3", "--seed", "4")
    assert r.status == 0 and "3/3 pass" in r.text
    assert run("laws", "--suite", "XX").status == 2
    assert run("laws", "--suite", "TR1", "--span", "9").status == 2


def test_json_flag_before_and_after_subcommand(wz, capsys):
    for argv in (["--json", "cohomology", "-w", wz, "-x", "X"], ["cohomology", "-w", wz, "-x", "X", "--json"]):
        assert main(argv) == 0
        rec = json.loads(capsys.readouterr().out)
        assert rec["status"] == 0 and rec["command"] == "cohomology"


def test_bad_arguments_exit_two(capsys):
    assert main(["cohomology"]) == 2
    assert main(["no-such-command"]) == 2


def test_workspace_round_trip_is_byte_identical():
    for name in ("workspace_z.json", "workspace_q.json"):
        text = (DEMOS / name).read_text()
        assert Workspace.parse(text).dumps() == text


@pytest.mark.parametrize("text", [
    "{",
    "[]",
    '{"format": "other", "version": "1"}',
    '{"format": "dercat-workspace"}',
    '{"format": "dercat-workspace", "version": "2"}',
    '{"format": "dercat-workspace", "version": "1", "maps": {"f": {"source": "X", "target": "X"}}}',
    '{"format": "dercat-workspace", "version": "1", "complexes": {"X": {"lo": "0", "modules": [["0"], ["0"]], "diffs": [[["1"]]]}},'
    ' "maps": {"f": {"source": "X", "target": "X", "components": {"0": [["1"]]}}}}',
])
def test_malformed_workspaces_are_rejected(text):
    with pytest.raises(WorkspaceError):
        Workspace.parse(text)


def test_invalid_dga_is_rejected():
    rec = json.loads((DEMOS / "workspace_q.json").read_text())
    L = rec["dgas"]["L"]
    L["diff"] = [["0", "1"], ["0", "0"]]
    with pytest.raises(WorkspaceError):
        Workspace.from_record(rec)


def test_module_literals():
    assert parse_module("Z/4 + Z^2").moduli == (4, 0, 0)
    assert parse_module("(Z/3)^2").moduli == (3, 3)
    assert parse_module("Q^3").moduli == (0, 0, 0)
    assert parse_module("0").is_zero()
    with pytest.raises(WorkspaceError):
        parse_module("Q/2")


def test_console_entry_point(wz):
    out = subprocess.run([sys.executable, "-m", "dercat", "cohomology", "-w", wz, "-x", "Z6"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "Z/6" in out.stdout
