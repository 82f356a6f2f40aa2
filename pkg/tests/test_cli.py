import json
import subprocess
import sys

import pytest

from entlab.cli import cli_main
from entlab.sweep import read_csv


def run(capsys, *argv):
    code = cli_main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_state1_free(capsys):
    code, out, _ = run(capsys, "classify", "--family", "1", "--alpha", "4.5", "--c0", "0", "--dt", "0")
    assert code == 0
    assert "label: FreeEntangled" in out


def test_classify_json_stdout(capsys):
    code, out, _ = run(capsys, "classify", "--family", "2", "--alpha", "0.5", "--json", "-")
    data = json.loads(out)
    assert code == 0
    assert data["label"] == "BoundEntangledPPT"
    assert data["distillable"] is False


def test_classify_out_of_domain_rejected(capsys):
    code, _, err = run(capsys, "classify", "--family", "1", "--alpha", "6")
    assert code == 1
    assert "domain" in err


def test_sweep_writes_csv_and_metadata(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, text, _ = run(capsys, "sweep", "--family", "1", "--alpha", "3:4:3", "--c0", "0.2,0.8",
                        "--dt", "0:1:2", "--out", str(out), "--workers", "1")
    assert code == 0
    assert "12 records" in text
    assert len(read_csv(out)) == 12
    meta = json.loads((tmp_path / "s.csv.meta.json").read_text())
    assert meta["variant"] == "GellMann12"


def test_sweep_config_file_with_override(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    out = tmp_path / "s.csv"
    cfg.write_text(f'family = 1\nalpha = "3:4:2"\nc0 = [0.5]\ndt = "0:1:3"\nout = "{out}"\nworkers = 1\n')
    code, _, _ = run(capsys, "sweep", "--config", str(cfg), "--dt", "0:1:2", "--variant", "Spin1")
    assert code == 0
    assert len(read_csv(out)) == 4
    assert json.loads((tmp_path / "s.csv.meta.json").read_text())["variant"] == "Spin1"


@pytest.mark.parametrize("body", ['family = 1\nbogus = 2\n', 'family = [\n'])
def test_sweep_bad_config_file(tmp_path, capsys, body):
    cfg = tmp_path / "bad.toml"
    cfg.write_text(body)
    assert run(capsys, "sweep", "--config", str(cfg))[0] == 1


def test_sweep_missing_settings(capsys):
    code, _, err = run(capsys, "sweep", "--family", "1")
    assert code == 1
    assert "missing" in err


def test_sweep_numerical_failure_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--family", "2", "--alpha", "1.5", "--c0", "0.5", "--dt", "0",
                       "--out", str(tmp_path / "x.csv"), "--allow-out-of-domain", "--workers", "1")
    assert code == 2
    assert "alpha=1.5" in err


def test_unknown_flag_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli_main(["classify", "--family", "1", "--alpha", "3", "--frobnicate"])
    assert exc.value.code == 1


def test_region_and_plot(tmp_path, capsys):
    out = tmp_path / "s.csv"
    run(capsys, "sweep", "--family", "2", "--alpha", "0.1:0.9:3", "--c0", "0.7", "--dt", "0:2:3",
        "--out", str(out), "--workers", "1")
    code, text, _ = run(capsys, "region", "--in", str(out), "--json", "-")
    reports = json.loads(text)
    assert code == 0
    assert len(reports) == 1 and reports[0]["c0"] == 0.7
    assert "empty" in reports[0]
    code, text, _ = run(capsys, "plot", "--in", str(out), "--dir", str(tmp_path / "plots"), "--axis", "dt")
    assert code == 0
    assert any(line.endswith(".gp") for line in text.split())


def test_region_missing_file(tmp_path, capsys):
    assert run(capsys, "region", "--in", str(tmp_path / "nope.csv"))[0] == 1


def test_verify_closed_form_json(capsys):
    code, text, _ = run(capsys, "verify-eq16", "--grid", "3", "--json", "-")
    data = json.loads(text)
    assert code == 0
    assert len(data["residuals"]) == 81
    assert data["variant"] == "GellMann12"


def test_select_variant_json(capsys):
    code, text, _ = run(capsys, "select-variant", "--grid", "3", "--json", "-")
    data = json.loads(text)
    assert code == 0
    assert set(data["max_deviation"]) == {"GellMann12", "Spin1"}
    assert data["winner"] in data["max_deviation"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "entlab", "classify", "--family", "1", "--alpha", "3.5"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "BoundEntangledPPT" in proc.stdout
