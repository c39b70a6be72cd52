import json
import os
import subprocess
import sys

import pytest

from seifert_links.cli import main
from seifert_links.moves import fixtures_dir

EX61 = os.path.join(fixtures_dir(), "example61.diag")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_text_report(capsys):
    code, out, _ = run(capsys, EX61)
    assert code == 0
    assert "H1 = Z^3 (+) Z_2" in out
    assert "H1(M) = Z^2 (+) Z_2" in out
    assert "component 1 class: trivial" in out
    assert "Delta[sigma=1] = z^4 - 2*z^3 + 2*z - 1" in out
    assert "Delta[sigma=-1] = z^2 - 1" in out


def test_structured_report(capsys):
    code, out, _ = run(capsys, EX61, "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["validation"]["valid"]
    assert [t["delta"] for t in data["alexander"]["polynomials"]] == ["z^4 - 2*z^3 + 2*z - 1", "z^2 - 1"]
    assert data["class"]["components"][0]["trivial"] is True


@pytest.mark.parametrize("command,present", [("validate", []), ("group", ["group"]),
                                             ("homology", ["homology"]), ("class", ["class"]),
                                             ("alexander", ["alexander"])])
def test_single_commands(capsys, command, present):
    _, out, _ = run(capsys, EX61, "--command", command, "--format", "structured")
    assert sorted(json.loads(out)) == sorted(["validation"] + present)


def test_sigma_option(capsys):
    _, out, _ = run(capsys, EX61, "--command", "alexander", "--sigma", "1")
    assert "Delta[sigma=-1] = z^2 - 1" in out and "sigma=1]" not in out
    code, _, err = run(capsys, EX61, "--command", "alexander", "--sigma", "7")
    assert code == 1 and "out of range" in err


def test_invalid_diagram_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.diag"
    bad.write_text("SURFACE O 1\nSIGNS gamma +1 delta +1\nCOUNTS r 1 t 1 n 0\n"
                   "BOUNDARY 1 EDGE a1 POS 1 EPS +1\n")
    code, out, _ = run(capsys, str(bad))
    assert code == 1 and out.startswith("invalid")


def test_malformed_and_missing_exit_2(tmp_path, capsys):
    bad = tmp_path / "junk.diag"
    bad.write_text("garbage\n")
    assert run(capsys, str(bad))[0] == 2
    assert run(capsys, str(tmp_path / "nope.diag"))[0] == 2


def test_fixture_directory(capsys):
    code, out, _ = run(capsys, "--fixtures", os.path.join(fixtures_dir(), "moves"))
    assert code == 0
    assert out.count(": ok") == len(out.splitlines()) >= 9


def test_output_is_byte_identical_across_runs():
    cmd = [sys.executable, "-m", "seifert_links.cli", EX61, "--format", "structured"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
