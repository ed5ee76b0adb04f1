import json
import subprocess
import sys

import pytest

from edgesample.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sample_from_generator(capsys):
    code, out, _ = run(capsys, "sample", "--gen", "two_edge", "--model", "is", "--seed", "3")
    data = json.loads(out)
    assert code == 0 and data["edge"] in ([0, 1], [2, 3])
    assert data["sampling_queries"]["degree"] == 0


def test_sample_from_file(capsys, tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("3 1\n0 2\n")
    code, out, _ = run(capsys, "sample", "--graph", str(path))
    assert code == 0 and json.loads(out)["edge"] == [0, 2]


def test_sample_empty_graph_reports_reject(capsys):
    code, out, _ = run(capsys, "sample", "--gen", "empty:5")
    assert code == 0 and json.loads(out)["edge"] is None


def test_uniformity_writes_json(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "uniformity", "--gen", "two_edge", "--trials", "3000", "--json", str(path))
    assert code == 0 and "verdict=pass" in out
    assert json.loads(path.read_text())["verdict"] == "pass"


def test_uniformity_insufficient_data_exits_one(capsys):
    code, out, _ = run(capsys, "uniformity", "--gen", "two_edge", "--trials", "1")
    assert code == 1 and "insufficient-data" in out


def test_sweep_outputs(capsys, tmp_path):
    js, cs = tmp_path / "s.json", tmp_path / "s.csv"
    code, out, _ = run(capsys, "sweep", "--model", "is", "--regime", "sparse", "--sizes", "16,20",
                       "--trials", "2", "--json", str(js), "--csv", str(cs))
    table = json.loads(js.read_text())
    assert [r["n"] for r in table["rows"]] == [16, 20]
    assert cs.read_text().startswith("n,m,")
    assert code == (1 if table["verdict"] == "fail" else 0)


def test_lowerbound_verify(capsys):
    code, out, _ = run(capsys, "lowerbound", "--n", "16", "--m", "9", "--verify")
    assert code == 0 and json.loads(out)["passed"] is True
    code, out, _ = run(capsys, "lowerbound", "--n", "15", "--m", "9", "--verify")
    assert code == 1 and json.loads(out)["precondition_errors"]


def test_lowerbound_experiment(capsys, tmp_path):
    path = tmp_path / "lb.json"
    code, out, _ = run(capsys, "lowerbound", "--n", "16", "--m", "9", "--experiment", "--trials", "50",
                       "--json", str(path))
    data = json.loads(path.read_text())
    assert code == 0 and data["g_side_rate"] == 0.0 and data["trials"] == 50
    code, _, err = run(capsys, "lowerbound", "--n", "15", "--m", "9", "--experiment")
    assert code == 2 and "below 16" in err


def test_factors(capsys):
    code, out, _ = run(capsys, "factors", "--gen", "path:2", "--kind", "loneliness", "--u", "0", "--v", "1",
                       "--mtilde", "1")
    data = json.loads(out)
    assert code == 0 and data["exact"] and data["value"] == pytest.approx(1.0)
    code, out, _ = run(capsys, "factors", "--gen", "path:3", "--kind", "starness", "--u", "1", "--mtilde", "2")
    assert code == 0 and 0 < json.loads(out)["value"] < 1


@pytest.mark.parametrize(
    "argv",
    [
        ["sample", "--gen", "nope:1"],
        ["sample", "--graph", "/nonexistent/file"],
        ["sample", "--gen", "two_edge", "--advice", "median"],
        ["factors", "--gen", "path:3", "--kind", "neighborhood", "--u", "0", "--v", "2", "--mtilde", "2"],
        ["sweep", "--regime", "sparse", "--sizes", "32,16"],
        ["sweep", "--regime", "sparse", "--sizes", "a,b"],
        ["uniformity", "--gen", "two_edge", "--trials", "0"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("edgesample: error:")


@pytest.mark.parametrize("argv", [[], ["sample"], ["sample", "--gen", "x", "--graph", "y"], ["sweep", "--regime", "mid", "--sizes", "16"]])
def test_argparse_errors_exit_two(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "edgesample", "lowerbound", "--n", "32", "--m", "32", "--verify"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"]
