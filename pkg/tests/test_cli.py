import subprocess
import sys

import pytest

from heatgraph import cli
from heatgraph.errors import NumericalError
from heatgraph.graph import load_graph
from heatgraph.symmetric import load_profile


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_antitree(tmp_path, capsys):
    prefix = str(tmp_path / "at")
    code, out, _ = run(["generate", "antitree", "--a", "r+1", "--R", "10", "--out", prefix], capsys)
    assert code == 0
    G = load_graph((tmp_path / "at.graph").read_text())
    p = load_profile((tmp_path / "at.profile").read_text())
    assert G.n == sum(range(1, 12)) and p.R == 10 and len(G.frontier) == 11
    assert "wrote" in out


def test_generate_tree_has_63_vertices(tmp_path, capsys):
    prefix = str(tmp_path / "t")
    assert run(["generate", "tree", "--degplus", "2", "--R", "5", "--out", prefix], capsys)[0] == 0
    assert load_graph((tmp_path / "t.graph").read_text()).n == 63


def test_generate_birthdeath_profile_only(tmp_path, capsys):
    prefix = str(tmp_path / "bd")
    assert run(["generate", "birthdeath", "--b", "(r+1)^3", "--R", "400", "--out", prefix],
               capsys)[0] == 0
    assert not (tmp_path / "bd.graph").exists()
    p = load_profile((tmp_path / "bd.profile").read_text())
    assert p.R == 400 and p.dB[2] == 27


def test_generate_is_deterministic(tmp_path, capsys):
    for name in ("a", "b"):
        run(["generate", "antitree", "--a", "(r+1)^2", "--R", "4", "--out",
             str(tmp_path / name)], capsys)
    assert (tmp_path / "a.graph").read_bytes() == (tmp_path / "b.graph").read_bytes()


@pytest.fixture
def tree_file(tmp_path, capsys):
    run(["generate", "tree", "--degplus", "2", "--R", "4", "--out", str(tmp_path / "g")], capsys)
    return tmp_path / "g.graph"


def test_analyze_curvature(tree_file, tmp_path, capsys):
    out_dir = tmp_path / "res"
    code, _, _ = run(["analyze", str(tree_file), "--curvature", "all", "--method", "dual-lp",
                      "--out", str(out_dir)], capsys)
    assert code == 0
    csv = (out_dir / "curvature.csv").read_text().splitlines()
    assert csv[0] == "kind,id1,id2_or_radius,value,method,flags"
    assert any(line.startswith("edge,") for line in csv)
    assert any(line.startswith("vertex,") for line in csv)
    assert any(line.startswith("sphere,") for line in csv)
    assert "[curvature]" in (out_dir / "report.txt").read_text()


def test_analyze_profile_series_and_heatloss(tmp_path, capsys):
    run(["generate", "antitree", "--a", "r+1", "--R", "400", "--profile-only", "--out",
         str(tmp_path / "p")], capsys)
    code, out, _ = run(["analyze", str(tmp_path / "p.profile"), "--sc-series", "--heatloss",
                        "t=1", "R=400", "--out", "-"], capsys)
    assert code == 0
    assert "classification: diverges" in out
    assert "defect_R400" in out
    assert "--- series.csv" in out and "--- heatloss.csv" in out


def test_analyze_volume_grigoryan(tree_file, tmp_path, capsys):
    out_dir = tmp_path / "vol"
    code, _, _ = run(["analyze", str(tree_file), "--metric", "sigma", "--volume", "--grigoryan",
                      "--out", str(out_dir)], capsys)
    assert code == 0
    assert (out_dir / "volume.csv").read_text().startswith(
        "radius,ball_size_vertices,volume_measure,saturated_flag\n")
    assert "verdict: grigoryan:" in (out_dir / "report.txt").read_text()


def test_every_verdict_line_is_labelled(tmp_path, capsys):
    run(["generate", "antitree", "--a", "r+1", "--R", "12", "--out", str(tmp_path / "a")], capsys)
    graph = str(tmp_path / "a.graph")
    reports = [
        run(["analyze", graph, "--sc-series", "--lambda-harmonic", "-1", "--heatloss", "t=1",
             "radii=2,4,8", "--out", "-"], capsys)[1],
        run(["analyze", graph, "--metric", "combinatorial", "--volume", "--grigoryan",
             "--cubic-volume", "--out", "-"], capsys)[1],
        run(["radial", str(tmp_path / "a.profile"), "--t", "1", "--R", "12"], capsys)[1],
    ]
    verdicts = [line for rep in reports for line in rep.splitlines()
                if line.startswith("verdict:")]
    assert len(verdicts) >= 6
    for line in verdicts:
        assert "heuristic" in line and any(ch.isdigit() for ch in line)


def test_output_is_byte_identical(tree_file, tmp_path, capsys):
    args = ["analyze", str(tree_file), "--curvature", "edges", "--intrinsic", "--volume",
            "--jump"]
    for name in ("one", "two"):
        assert run(args + ["--out", str(tmp_path / name)], capsys)[0] == 0
    for f in ("report.txt", "curvature.csv", "volume.csv"):
        assert (tmp_path / "one" / f).read_bytes() == (tmp_path / "two" / f).read_bytes()


def test_radial_curvature_metric_subcommands(tree_file, capsys):
    code, out, _ = run(["curvature", str(tree_file), "--kind", "edges", "--comparison"], capsys)
    assert code == 0 and "laplacian comparison: holds" in out
    code, out, _ = run(["metric", str(tree_file), "--metric", "sigma1", "--radii", "0:3:0.5"],
                       capsys)
    assert code == 0 and "intrinsic: yes" in out and "--- volume.csv" in out
    code, out, _ = run(["radial", str(tree_file)], capsys)
    assert code == 0 and "[lambda-harmonic]" in out


def test_precondition_errors_exit_2(tmp_path, tree_file, capsys):
    assert run(["analyze", str(tmp_path / "missing.graph"), "--volume"], capsys)[0] == 2
    bad = tmp_path / "bad.graph"
    bad.write_text("v a 1\ne a a 1\n")
    code, _, err = run(["analyze", str(bad), "--volume", "--out", "-"], capsys)
    assert code == 2 and "self-loop" in err
    code, _, err = run(["generate", "tree", "--degplus", "3", "--R", "30"], capsys)
    assert code == 2 and "cap" in err
    assert run(["generate", "antitree", "--a", "r-1", "--R", "3"], capsys)[0] == 2
    code, _, err = run(["analyze", str(tree_file), "--lambda-harmonic", "1", "--out", "-"],
                       capsys)
    assert code == 2 and "lambda-harmonic" in err
    assert run(["analyze", str(tree_file), "--out", "-"], capsys)[0] == 2


def test_numerical_failure_exits_3(tree_file, capsys, monkeypatch):
    def broken(rep, kind, obj, params):
        raise NumericalError("eigensolver did not converge")

    monkeypatch.setitem(cli.OPS, "comparison", broken)
    code, _, err = run(["analyze", str(tree_file), "--comparison", "--out", "-"], capsys)
    assert code == 3 and "comparison" in err


def test_console_entry_point(tree_file):
    out = subprocess.run([sys.executable, "-m", "heatgraph", "metric", str(tree_file),
                          "--metric", "combinatorial", "--cubic-volume"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "verdict: cubic volume:" in out.stdout


def test_threads_env_does_not_change_output(tree_file, tmp_path):
    outs = []
    for threads in ("1", "4"):
        env = {"HEATGRAPH_THREADS": threads, "PATH": "/usr/bin:/usr/local/bin"}
        res = subprocess.run([sys.executable, "-m", "heatgraph", "curvature", str(tree_file),
                              "--kind", "all"], capture_output=True, env=env)
        assert res.returncode == 0
        outs.append(res.stdout)
    assert outs[0] == outs[1]
