"""End-to-end CLI behavior, including exit codes."""

import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "graphmc"]


def run_cli(*args):
    return subprocess.run(CMD + list(args), capture_output=True, text=True)


MODEL_FLAGS = ["--model", "basic", "--n", "8", "--m", "8", "--theta", "0.05",
               "--alpha1", "0.9", "--beta1", "0.1", "--alpha2", "0.9",
               "--beta2", "0.1", "--p", "1.0"]


def test_generate_then_estimate(tmp_path):
    instance = tmp_path / "inst.txt"
    res = run_cli("generate", *MODEL_FLAGS, "--seed", "5", "--out", str(instance))
    assert res.returncode == 0, res.stderr
    assert instance.exists()
    res = run_cli("estimate", "--in", str(instance), "--estimator", "exhaustive")
    assert res.returncode == 0, res.stderr
    assert "exact_recovery = true" in res.stdout
    res = run_cli("estimate", "--in", str(instance), "--estimator", "local_search",
                  "--restarts", "8", "--seed", "3")
    assert res.returncode == 0
    assert "exact_recovery = true" in res.stdout


def test_generate_atypical_counts(tmp_path):
    instance = tmp_path / "inst.txt"
    res = run_cli("generate", "--model", "atypical", "--n", "8", "--m", "8",
                  "--theta-a", "0.1", "--theta-r", "0.3", "--alpha1", "0.8",
                  "--beta1", "0.2", "--alpha2", "0.8", "--beta2", "0.2",
                  "--p", "0.9", "--atypical-counts", "2 1", "--seed", "1",
                  "--out", str(instance))
    assert res.returncode == 0, res.stderr
    text = instance.read_text()
    assert "theta_a = 0.1" in text


def test_threshold_output():
    res = run_cli("threshold", "--model", "basic", "--n", "10000", "--m", "10000",
                  "--theta", "0.2")
    assert res.returncode == 0
    kv = dict(line.split(" = ") for line in res.stdout.strip().split("\n"))
    assert float(kv["achievable_p"]) == pytest.approx(4.60517e-3, rel=1e-5)
    assert kv["achievable_dominant"] == "boundary"

    res = run_cli("threshold", "--model", "atypical", "--n", "10000", "--m", "2000",
                  "--theta-a", "0.3", "--theta-r", "0.03")
    kv = dict(line.split(" = ") for line in res.stdout.strip().split("\n"))
    assert kv["regime"] == "social_sensitive"
    assert float(kv["converse_p"]) <= float(kv["achievable_p"])


def test_threshold_grid(tmp_path):
    out = tmp_path / "grid.csv"
    res = run_cli("threshold", "--model", "atypical", "--n", "10000", "--m", "2000",
                  "--grid-res", "16", "--out", str(out))
    assert res.returncode == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "theta_a,theta_r,regime"
    assert len(lines) == 1 + 16 * 16
    assert any("social_sensitive" in line for line in lines[1:])
    assert any("movie_sensitive" in line for line in lines[1:])
    res = run_cli("threshold", "--model", "atypical", "--n", "100", "--m", "100",
                  "--grid-res", "4")
    assert res.returncode == 2  # resolution below the minimum


def test_bound_output():
    res = run_cli("bound", *MODEL_FLAGS, "--union", "--k1", "1", "--k2", "0")
    assert res.returncode == 0
    kv = dict(line.split(" = ") for line in res.stdout.strip().split("\n"))
    assert 0.0 <= float(kv["pairwise_bound"]) <= 1.0
    assert float(kv["union_bound_total"]) >= 0.0


def test_exit_codes(tmp_path):
    # missing theta: config error
    res = run_cli("threshold", "--model", "basic", "--n", "100", "--m", "100")
    assert res.returncode == 2
    # infeasible graph quality: exit 3
    res = run_cli("generate", "--model", "basic", "--n", "16", "--m", "16",
                  "--theta", "0.2", "--I1", "50", "--beta1-base", "0.5",
                  "--alpha2", "0.5", "--beta2", "0.2", "--p", "0.5",
                  "--seed", "1", "--out", str(tmp_path / "x.txt"))
    assert res.returncode == 3
    # unknown config key: exit 2
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("[model]\nkind = basic\nwat = 1\n")
    res = run_cli("sweep", "--config", str(cfg))
    assert res.returncode == 2
    # unsupported format rejected by argparse with code 2
    res = run_cli("sweep", "--config", str(cfg), "--format", "json")
    assert res.returncode == 2


def test_sweep_cli(tmp_path):
    out = tmp_path / "rows.csv"
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(f"""
[model]
kind = basic
n = 8
m = 8
theta = 0.1
alpha1 = 0.9
beta1 = 0.1
alpha2 = 0.9
beta2 = 0.1

[sweep]
axis = p
start = 0.5
stop = 1.0
steps = 2

[estimator]
kind = exhaustive

[run]
trials = 3
seed = 11

[output]
path = {out}
""")
    res = run_cli("sweep", "--config", str(cfg), "--jobs", "2")
    assert res.returncode == 0, res.stderr
    assert out.exists()
    assert len(out.read_text().strip().split("\n")) == 3
