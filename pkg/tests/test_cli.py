"""CLI harness: golden output, determinism, exit codes, file artifacts."""

import json

from parkfn import cli
from parkfn.core import UVector, check_u_parking


def run_cli(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_count_three_ways(capsys):
    code, out, err = run_cli(["count", "--u", "2,5"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "method,count"
    methods = dict(line.split(",") for line in lines[1:])
    assert methods == {"goncarov": "16", "composition": "16", "enumeration": "16"}


def test_count_arithmetic_adds_closed_form(capsys):
    code, out, _ = run_cli(["count", "--a", "2", "--b", "1", "--m", "2"], capsys)
    assert code == 0
    assert "closed_form,8" in out


def test_enumerate_matches_membership(capsys):
    code, out, _ = run_cli(["enumerate", "--u", "2,3"], capsys)
    assert code == 0
    rows = [tuple(map(int, line.split(","))) for line in out.strip().splitlines()[1:]]
    assert len(rows) == 8
    assert all(check_u_parking(UVector((2, 3)), row) for row in rows)


def test_check_command(capsys):
    code, out, _ = run_cli(["check", "--u", "2,5", "--pi", "5,2"], capsys)
    assert code == 0 and "5 2,true" in out
    code, out, _ = run_cli(["check", "--u", "2,5", "--pi", "3,3"], capsys)
    assert code == 0 and "3 3,false" in out


def test_decompose_example(capsys):
    code, out, _ = run_cli(["decompose", "--u", "2,3,5,8", "--suffix", "6,2"], capsys)
    assert code == 0
    assert "status,ok" in out
    assert "v,3 5" in out
    assert "k,2 3" in out


def test_decompose_empty(capsys):
    code, out, _ = run_cli(["decompose", "--u", "1,2,3", "--suffix", "3,3"], capsys)
    assert code == 0
    assert "status,empty" in out


def test_sample_deterministic_and_valid(tmp_path, capsys):
    args = ["sample", "--a", "3", "--b", "2", "--m", "4", "--n", "20", "--seed", "5"]
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert run_cli(args + ["-o", str(first)], capsys)[0] == 0
    assert run_cli(args + ["-o", str(second)], capsys)[0] == 0
    assert first.read_bytes() == second.read_bytes()
    u = UVector((3, 5, 7, 9))
    rows = first.read_text().strip().splitlines()[1:]
    assert len(rows) == 20
    for row in rows:
        assert check_u_parking(u, tuple(map(int, row.split(","))))


def test_hist_writes_tables_and_figures(tmp_path, capsys):
    out = tmp_path / "hist.csv"
    args = ["hist", "--c", "1", "--b", "2", "--m", "5", "--n", "500", "--seed", "9",
            "-o", str(out)]
    code, _, _ = run_cli(args, capsys)
    assert code == 0
    disp = tmp_path / "hist_disp.csv"
    assert out.exists() and disp.exists()
    assert (tmp_path / "hist.png").exists() and (tmp_path / "hist_disp.png").exists()
    rows = out.read_text().strip().splitlines()
    assert rows[0] == "value,count"
    counts = [int(line.split(",")[1]) for line in rows[1:]]
    assert sum(counts) == 500
    # support is the full feasible range 1..a+(m-1)b
    assert len(counts) == 7 + 4 * 2
    # byte-identical rerun
    before = out.read_bytes()
    assert run_cli(args, capsys)[0] == 0
    assert out.read_bytes() == before


def test_hist_no_plot(tmp_path, capsys):
    out = tmp_path / "hist.csv"
    code, _, _ = run_cli(
        ["hist", "--a", "2", "--b", "1", "--m", "2", "--n", "50", "--seed", "1",
         "--no-plot", "-o", str(out)], capsys)
    assert code == 0
    assert out.exists()
    assert not (tmp_path / "hist.png").exists()


def test_moments_table(capsys):
    code, out, _ = run_cli(["moments", "--a", "2", "--b", "1", "--m", "2"], capsys)
    assert code == 0
    assert "mean_coord,15/8,1.875" in out
    assert "joint_moment_coords,27/8,3.375" in out


def test_compare_report(tmp_path, capsys):
    out = tmp_path / "cmp.csv"
    code, _, _ = run_cli(
        ["compare", "--c", "1", "--b", "2", "--m", "40", "--stats", "mean,boundary",
         "-o", str(out)], capsys)
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "statistic,exact,predicted,abs_err,rel_err"
    names = [line.split(",")[0] for line in lines[1:]]
    assert names == ["mean_coord", "prob_coord_max", "prob_coord_min"]
    for line in lines[1:]:
        cells = line.split(",")
        exact, predicted, abs_err = map(float, cells[1:4])
        assert abs(abs(exact - predicted) - abs_err) <= 1e-12 * max(1.0, abs_err)
    assert (tmp_path / "cmp.png").exists()


def test_compare_mean_at_scale(capsys):
    # the headline report: at m=1000 the mean prediction is within 1e-4
    code, out, _ = run_cli(
        ["compare", "--c", "1", "--b", "2", "--m", "1000", "--stats", "mean",
         "--no-plot"], capsys)
    assert code == 0
    row = out.strip().splitlines()[1].split(",")
    assert row[0] == "mean_coord"
    assert float(row[4]) <= 1e-4


def test_compare_special_regime(capsys):
    code, out, _ = run_cli(
        ["compare", "--c", "0", "--b", "2", "--m", "30", "--stats", "mean", "--no-plot"],
        capsys)
    assert code == 0
    assert out.startswith("statistic,")


def test_abel_check_passes(capsys):
    code, out, _ = run_cli(["abel-check", "--trials", "8", "--seed", "2"], capsys)
    assert code == 0
    assert out.count("PASS") == 4
    assert "FAIL" not in out


def test_json_format(tmp_path, capsys):
    out = tmp_path / "count.json"
    code, _, _ = run_cli(["count", "--u", "2,5", "--format", "json", "-o", str(out)], capsys)
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == 1
    assert payload["command"] == "count"
    assert {"method": "goncarov", "count": "16"} in payload["rows"]


def test_usage_errors_exit_one(capsys):
    assert run_cli(["count"], capsys)[0] == 1
    assert run_cli(["count", "--u", "2,5", "--a", "2", "--b", "1", "--m", "2"], capsys)[0] == 1
    assert run_cli(["count", "--u", "5,2"], capsys)[0] == 1  # not increasing
    assert run_cli(["sample", "--u", "2,5"], capsys)[0] == 1  # needs arithmetic params
    assert run_cli(["count", "--c", "x", "--b", "1", "--m", "2"], capsys)[0] == 1
    assert run_cli(["compare", "--a", "1", "--b", "2", "--m", "10"], capsys)[0] == 1  # c < 0
    code, _, err = run_cli(["nonsense"], capsys)
    assert code == 1 and err


def test_budget_exceeded_exits_one(monkeypatch, capsys):
    monkeypatch.setenv("PARKFN_BUDGET", "10")
    code, _, err = run_cli(["enumerate", "--u", "2,5"], capsys)
    assert code == 1
    assert "budget" in err


def test_determinism_across_formats(tmp_path, capsys):
    a = tmp_path / "m1.csv"
    b = tmp_path / "m2.csv"
    for path in (a, b):
        assert run_cli(["moments", "--a", "3", "--b", "2", "--m", "3", "-o", str(path)],
                       capsys)[0] == 0
    assert a.read_bytes() == b.read_bytes()
