import math

import pytest

from tfhardcore.cli import main, plot_rows
from tfhardcore.graph_core import cycle_graph, empty_graph, complete_graph, write_graph


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.txt"):
        path = tmp_path / name
        write_graph(g, path)
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_c5(capsys, graph_file):
    code, out, _ = run(capsys, "count", graph_file(cycle_graph(5)), "--alpha", "--polynomial", "--occupancy")
    assert code == 0
    first, poly = out.splitlines()
    assert first.startswith("i=11, logZ/n=0.479579054560, alpha=2") or first.startswith("i=11, logZ/n=0.47957905456")
    assert "occupancy=1.36363636364" in first
    assert poly == "1 5 5"


def test_count_empty_graph(capsys, graph_file):
    code, out, _ = run(capsys, "count", graph_file(empty_graph(0)))
    assert code == 0
    assert out.strip() == "i=1, logZ/n=0"


def test_count_rational_lambda(capsys, graph_file):
    code, out, _ = run(capsys, "count", graph_file(empty_graph(2)), "--lambda", "1/3")
    assert code == 0
    assert f"logZ/n={math.log(4 / 3):.12g}" in out


def test_count_rejects_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 7\n")
    code, _, err = run(capsys, "count", str(bad))
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "count", str(tmp_path / "missing.txt"))
    assert code == 2


def test_bounds(capsys, graph_file):
    code, out, _ = run(capsys, "bounds", graph_file(cycle_graph(5)))
    assert code == 0
    header, row = out.splitlines()
    cols = dict(zip(header.split("\t"), row.split("\t")))
    assert cols["triangle_free"] == "True"
    assert float(cols["lower_slack"]) > 0 and float(cols["upper_slack"]) > 0


def test_bounds_with_triangle(capsys, graph_file):
    code, out, _ = run(capsys, "bounds", graph_file(complete_graph(3)))
    assert code == 0
    assert "\tFalse\t" in out


def test_verify_explicit_lambdas(capsys, tmp_path):
    dest = tmp_path / "verify.tsv"
    code, _, _ = run(capsys, "verify", "--lambdas", "1/2,1", "-o", str(dest))
    assert code == 0
    lines = dest.read_text().splitlines()
    assert lines[0] == "lambda\tclaim\tworst_x\tworst_margin\tpassed"
    assert len(lines) == 1 + 2 * 4
    assert all(line.endswith("True") for line in lines[1:])


def test_verify_range_without_r_mode(capsys):
    code, out, _ = run(capsys, "verify", "--lambda-min", "0", "--lambda-max", "0.2", "--step", "0.1", "--no-r-mode")
    assert code == 0
    assert len(out.splitlines()) == 1 + 3 * 3


def test_lambda_max(capsys):
    code, out, _ = run(capsys, "lambda-max", "--resolution", "0.05")
    assert code == 0
    assert 11.0 <= float(out) <= 12.2


def test_crossover(capsys):
    code, out, _ = run(capsys, "crossover")
    assert code == 0
    assert out.strip() == "13.9706214817"


def test_experiment(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 12\nd = 2\nreplicas = 3\nseed = 1\n")
    dest = tmp_path / "out.csv"
    code, _, err = run(capsys, "experiment", str(cfg), "-o", str(dest))
    assert code == 0
    assert len(dest.read_text().splitlines()) == 4
    assert "median=" in err and "mode=rejection" in err


def test_experiment_bad_config(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 12\nd = 2\nseed = 1\nflavour = mint\n")
    code, _, err = run(capsys, "experiment", str(cfg))
    assert code == 2 and "flavour" in err


def test_experiment_rejection_limit(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 20\nd = 15\nseed = 1\ntf_mode = rejection\nmax_tries = 3\n")
    code, _, _ = run(capsys, "experiment", str(cfg))
    assert code == 2


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--n-max", "4", "--lambdas", "1/4,1", "--top", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# graphs=51 ")
    assert lines[1] == "slack\tlambda\tn\tedges"
    assert len(lines) == 5


def test_plotdata(capsys, tmp_path):
    dest = tmp_path / "curve.txt"
    code, _, _ = run(capsys, "plotdata", "-o", str(dest))
    assert code == 0
    lines = dest.read_text().splitlines()
    assert lines[0] == "d lower upper"
    assert len(lines) == 1 + 401
    d, lo, up = map(float, lines[9].split())
    assert d == 2.0 and lo == pytest.approx(0.426302751007, abs=1e-12)


def test_plotdata_bad_range(capsys):
    code, _, err = run(capsys, "plotdata", "--d-min", "5", "--d-max", "1")
    assert code == 2 and "error" in err


def test_plot_rows_step():
    rows = plot_rows(0, 1, 0.5, 1.0)
    assert [r[0] for r in rows] == [0, 0.5, 1.0]
    assert rows[0][2] == 1.0


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "4", "--triangle-free", "--count-only")
    assert code == 0 and out.strip() == "41 graphs"
    code, out, err = run(capsys, "enumerate", "2")
    assert code == 0 and err.strip() == "2 graphs"
    assert out.count("\n") >= 2


def test_unknown_flag_exits_with_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "--bogus"])
    assert exc.value.code == 2
