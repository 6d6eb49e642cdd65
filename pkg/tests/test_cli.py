import json
import subprocess
import sys

import pytest

from wflo.cli import main
from wflo.harness import optimal_layouts_l4


def run(*argv):
    return main([str(a) for a in argv])


def test_enumerate_optimal(tmp_path, capsys):
    assert run("enumerate-optimal", "--l-grid", 4, "--out", tmp_path) == 0
    doc = json.loads((tmp_path / "optimal.json").read_text())
    assert doc["layouts"] == optimal_layouts_l4()
    assert doc["power_kW"] == 2304.0
    assert "79 optimal layouts" in capsys.readouterr().out


def test_solve_is_reproducible(tmp_path):
    for name in ("a", "b"):
        assert run("solve", "--method", "sa", "--seed", 7, "--l-grid", 3, "--out", tmp_path / name) == 0
    for f in ("records.json", "records.csv"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_farm_writes_all_runs(tmp_path):
    code = run(
        "farm", "--method", "vqe-cobyla", "--alpha", 0.25, "--runs", 36, "--l-grid", 2, "--m", 2,
        "--layers", 1, "--max-evals", 30, "--shots", 64, "--out", tmp_path,
    )
    assert code == 0
    records = json.loads((tmp_path / "records.json").read_text())
    assert len(records) == 36
    assert [r["run_index"] for r in records] == list(range(36))
    assert all(r["alpha"] == 0.25 for r in records)
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["config"]["num_runs"] == 36


def test_build_qubo(tmp_path):
    assert run("build-qubo", "--l-grid", 3, "--lambda1", 800, "--out", tmp_path) == 0
    doc = json.loads((tmp_path / "qubo.json").read_text())
    assert doc["q"] == 9 and doc["lambda1"] == 800.0
    assert len(doc["terms"]) == 45


def test_config_file_with_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"l_grid": 3, "m": 3, "method": "sa"}))
    assert run("solve", "--config", cfg, "--m", 2, "--out", tmp_path) == 0
    rec = json.loads((tmp_path / "records.json").read_text())[0]
    assert rec["selected_layout"].count("1") == 2


def test_heatmap(tmp_path):
    assert run("heatmap", "--l-grid", 4, "--out", tmp_path) == 0
    rows = (tmp_path / "heatmap.csv").read_text().splitlines()
    assert len(rows) == 4
    total = sum(float(v) for r in rows for v in r.split(","))
    assert total == pytest.approx(4.0, abs=1e-9)


def test_heatmap_from_records(tmp_path):
    run("farm", "--method", "sa", "--runs", 4, "--l-grid", 3, "--out", tmp_path)
    assert run("heatmap", "--l-grid", 3, "--records", tmp_path / "records.json", "--out", tmp_path) == 0


def test_bench(tmp_path):
    code = run("bench", "--method", "sa", "--sweeps", 20, "--l-grids", 2, 3, "--repeats", 1, "--m", 2, "--out", tmp_path)
    assert code == 0
    doc = json.loads((tmp_path / "scaling.json").read_text())
    assert [t["volume"] for t in doc["timings"]] == [4, 9]
    assert doc["fit"]["log_base"] == 10.0


def test_dea_check(tmp_path):
    assert run("dea-check", "--qubits", 3, "--out", tmp_path) == 0
    doc = json.loads((tmp_path / "dea.json").read_text())
    assert all(v["independent"] for v in doc["verdicts"])
    assert len(doc["verdicts"]) == 9


def test_stats_fixture(tmp_path, capsys):
    assert run("stats", "--out", tmp_path) == 0
    doc = json.loads((tmp_path / "stats.json").read_text())
    assert doc["percent_of_optimal"] == pytest.approx(95.19, abs=0.01)
    assert "2193.13" in capsys.readouterr().out


def test_stats_from_file(tmp_path):
    (tmp_path / "p.json").write_text("[2304.0, 2250.0]")
    assert run("stats", "--input", tmp_path / "p.json", "--out", tmp_path) == 0


def test_validation_failure_exit_code(tmp_path, capsys):
    assert run("solve", "--alpha", 2.0, "--out", tmp_path) == 2
    assert "cvar_alpha" in capsys.readouterr().err
    assert run("stats", "--input", tmp_path / "missing.json", "--out", tmp_path) == 2


@pytest.mark.parametrize("argv", [["solve", "--bogus"], ["nonsense"], []])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code != 0


def test_console_module_entry():
    out = subprocess.run([sys.executable, "-m", "wflo.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "enumerate-optimal" in out.stdout
