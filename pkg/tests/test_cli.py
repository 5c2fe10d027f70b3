import json
import pathlib
import subprocess
import sys

import pytest

from starplane.cli import main

CONFIGS = pathlib.Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "zb*z")
    assert code == 0 and out.strip() == "z*zb - 2*H"


def test_nf_zero(capsys):
    assert run(capsys, "nf", "0")[1].strip() == "0"


def test_nf_json(capsys):
    code, out, _ = run(capsys, "nf", "zb*z", "--format", "json")
    assert json.loads(out)["value"]["text"] == "z*zb - 2*H"


def test_comm_with_note(capsys):
    code, out, _ = run(capsys, "comm", "z^3", "zb^3")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "18*H*z^2*zb^2 - 72*H^2*z*zb + 48*H^3"
    assert "eq59" in out


def test_star(capsys):
    assert run(capsys, "star", "z", "zb", "4")[1].strip() == "z*zb + H (terminating)"


def test_virasoro(capsys):
    out = run(capsys, "virasoro", "1", "-2")[1]
    assert out.splitlines()[1] == "classical: (-3)*dz"


def test_contour(capsys):
    out = run(capsys, "contour", "comm(z,zb^2)", "1.7")[1]
    assert out.startswith("exact: 8*i*pi*H*r^2")


def test_parse_error(capsys):
    code, _, err = run(capsys, "nf", "z+")
    assert code == 1
    payload = json.loads(err)
    assert payload["error"] == "parse" and payload["position"] == 2


def test_csv_only_for_suite(capsys):
    code, _, err = run(capsys, "comm", "z", "zb", "--format", "csv")
    assert code == 2 and json.loads(err)["exit_code"] == 2


def test_fredholm_config(capsys):
    code, out, _ = run(capsys, "fredholm", str(CONFIGS / "fredholm_disc.conf"))
    assert code == 0
    assert "converged" in out


def test_fredholm_divergence(tmp_path, capsys):
    text = (CONFIGS / "fredholm_disc.conf").read_text().replace("ratio = 0.8", "ratio = 1.2")
    cfg = tmp_path / "div.conf"
    cfg.write_text(text)
    code, _, err = run(capsys, "fredholm", str(cfg))
    assert code == 3
    assert json.loads(err)["error"] == "divergence"


def test_action_config(capsys):
    code, out, _ = run(capsys, "action", str(CONFIGS / "action_torus.conf"))
    assert code == 0 and "stationary" in out


def test_verify_suite_filter(capsys):
    code, out, _ = run(capsys, "verify-suite", "virasoro")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("17 entries")


def test_verify_suite_empty(capsys):
    code, out, _ = run(capsys, "verify-suite", "nothing-matches")
    assert code == 0 and "0 entries" in out


def test_confluence(capsys):
    out = run(capsys, "confluence", "--cases", "20")[1]
    assert out.strip().endswith("0 failures")


def test_term_cap(monkeypatch, capsys):
    monkeypatch.setenv("STARPLANE_MAX_TERMS", "3")
    code, _, err = run(capsys, "nf", "(z+zb+zi)^4")
    assert code == 2


@pytest.mark.parametrize("args", [["--help"], ["nf", "--help"]])
def test_help(args):
    with pytest.raises(SystemExit) as exc:
        main(args)
    assert exc.value.code == 0


def test_console_entry():
    proc = subprocess.run([sys.executable, "-m", "starplane.cli", "nf", "zb*z"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "z*zb - 2*H"
