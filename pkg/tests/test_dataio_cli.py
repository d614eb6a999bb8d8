import json

import numpy as np
import pytest

from fdboot.cli import main
from fdboot.core import Grid, build_sample
from fdboot.dataio import DatasetFormatError, dumps_dataset, loads_dataset, read_dataset, write_dataset
from fdboot.datasets import synthetic_weather
from fdboot.rng import RngStream
from fdboot.sim import GpSpec, simulate_gp

from .conftest import constant_sample


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write_constants(path, levels, T=5):
    write_dataset(path, constant_sample(levels, Grid.uniform(T)),
                  [str(i + 1) for i in range(len(levels))])


# -- dataset files ----------------------------------------------------------------

def test_dataset_round_trip_is_bit_exact():
    sample = simulate_gp(GpSpec(n=12, grid=Grid.uniform(17)), RngStream(8))
    back, ids = loads_dataset(dumps_dataset(sample))
    assert ids == [f"c{i}" for i in range(1, 13)]
    assert back.grid == sample.grid
    assert np.array_equal(back.values, sample.values)


def test_dataset_layout():
    text = dumps_dataset(build_sample(Grid([0.0, 1.0]), [[1.5, 2.0], [3.0, 4.0]]), ["a", "b"])
    assert text == "t,a,b\n0.0,1.5,3.0\n1.0,2.0,4.0\n"


@pytest.mark.parametrize("text, line", [
    ("t,a,b\n0,1,2\n1,3\n", 3),
    ("t,a,b\n0,1,2\n1,x,2\n", 3),
    ("t,a,b\n0,1,2\n1,nan,2\n", 3),
    ("t,a,b\n0,1,2\n0,1,2\n", 3),
    ("t,a,a\n0,1,2\n1,1,2\n", 1),
    ("x,a\n0,1\n1,1\n", 1),
])
def test_malformed_dataset_reports_line(text, line):
    with pytest.raises(DatasetFormatError) as info:
        loads_dataset(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_synthetic_weather_shape():
    sample, ids = synthetic_weather(0)
    assert sample.values.shape == (35, 365)
    assert len(set(ids)) == 35
    assert np.array_equal(sample.grid.points, np.arange(1, 366))


# -- simulate ----------------------------------------------------------------------

def test_simulate_writes_grid_rows(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, stdout, _ = run(capsys, "simulate", "--n", 300, "--T", 101, "--seed", 1, "-o", out)
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 102 and len(lines[0].split(",")) == 301
    manifest = json.loads(stdout)
    assert manifest["config"]["seed"] == 1 and manifest["outputs"] == [str(out)]
    assert {"version", "wall_clock_s", "backend"} <= set(manifest)


def test_simulate_is_byte_reproducible(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "simulate", "--seed", 1, "-o", a)
    run(capsys, "simulate", "--seed", 1, "-o", b)
    assert a.read_bytes() == b.read_bytes()


def test_simulate_single_point_grid_is_invalid(tmp_path, capsys):
    code, _, err = run(capsys, "simulate", "--T", 1, "-o", tmp_path / "x.csv")
    assert code == 1 and "grid" in err


def test_unwritable_path_is_io_error(tmp_path, capsys):
    code, _, err = run(capsys, "simulate", "-o", tmp_path / "missing" / "x.csv")
    assert code == 2 and "cannot write" in err


def test_unknown_flag_is_validation_error(capsys):
    assert run(capsys, "simulate", "--bogus", "1", "-o", "x")[0] == 1


def test_config_file_precedence(tmp_path, capsys, monkeypatch):
    conf = tmp_path / "run.conf"
    conf.write_text("# settings\nn = 4\nT = 3\nseed = 9\n")
    monkeypatch.setenv("FDBOOT_SEED", "77")
    code, stdout, _ = run(capsys, "simulate", "--config", conf, "--n", 6, "-o", tmp_path / "s.csv")
    cfg = json.loads(stdout)["config"]
    assert code == 0 and (cfg["n"], cfg["T"], cfg["seed"]) == (6, 3, 9)


def test_env_seed_replaces_default(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("FDBOOT_SEED", "77")
    _, stdout, _ = run(capsys, "simulate", "--n", 3, "--T", 3, "-o", tmp_path / "s.csv")
    assert json.loads(stdout)["config"]["seed"] == 77


def test_manifest_file_appended(tmp_path, capsys):
    log = tmp_path / "runs.jsonl"
    for _ in range(2):
        run(capsys, "simulate", "--n", 3, "--T", 3, "-o", tmp_path / "s.csv", "--manifest", log)
    assert [json.loads(l)["command"] for l in log.read_text().splitlines()] == ["simulate"] * 2


# -- depth --------------------------------------------------------------------------

def read_depth(path):
    rows = [l.split(",") for l in path.read_text().splitlines()]
    assert rows[0] == ["curve_id", "score", "rank"]
    return [(r[0], float(r[1]), int(r[2])) for r in rows[1:]]


def test_depth_fm_constant_curves(tmp_path, capsys):
    # constant curves at levels 1..5: levels 2 and 3 tie for deepest, then
    # levels 1 and 4; ties go to the earlier curve
    data, out = tmp_path / "d.csv", tmp_path / "depth.csv"
    write_constants(data, [1, 2, 3, 4, 5])
    assert run(capsys, "depth", "-i", data, "-o", out)[0] == 0
    rows = read_depth(out)
    assert [r[0] for r in rows] == ["2", "3", "1", "4", "5"]
    assert [r[2] for r in rows] == [1, 2, 3, 4, 5]
    assert rows[0][1] == rows[1][1] and rows[2][1] == rows[3][1]


def test_depth_fm_order_follows_level_not_position(tmp_path, capsys):
    data, out = tmp_path / "d.csv", tmp_path / "depth.csv"
    write_constants(data, [5, 3, 1, 4, 2])
    run(capsys, "depth", "-i", data, "-o", out)
    assert [r[0] for r in read_depth(out)] == ["2", "5", "3", "4", "1"]


def test_depth_identical_curves_follow_input_order(tmp_path, capsys):
    data, out = tmp_path / "d.csv", tmp_path / "depth.csv"
    write_constants(data, [2, 2, 2, 2])
    run(capsys, "depth", "-i", data, "-o", out)
    rows = read_depth(out)
    assert [r[0] for r in rows] == ["1", "2", "3", "4"]
    assert len({r[1] for r in rows}) == 1


def test_depth_radius_example(tmp_path, capsys):
    data, out = tmp_path / "d.csv", tmp_path / "depth.csv"
    write_constants(data, [0, 1, 3])
    run(capsys, "depth", "-i", data, "--method", "radius", "--alpha", 0.5, "-o", out)
    rows = read_depth(out)
    assert rows[0][0] == "2" and rows[0][2] == 1


def test_depth_infeasible_alpha(tmp_path, capsys):
    data = tmp_path / "d.csv"
    write_constants(data, [0, 1, 3])
    code, _, err = run(capsys, "depth", "-i", data, "--method", "radius", "--alpha", 0.99,
                       "-o", tmp_path / "x.csv")
    assert code == 1 and "alpha" in err


def test_depth_missing_input_is_io_error(tmp_path, capsys):
    assert run(capsys, "depth", "-i", tmp_path / "nope.csv", "-o", tmp_path / "x.csv")[0] == 2


# -- ci -----------------------------------------------------------------------------

def test_ci_malformed_csv_reports_line(tmp_path, capsys):
    data = tmp_path / "bad.csv"
    data.write_text("t,a,b\n0,1,2\n1,1,oops\n")
    code, _, err = run(capsys, "ci", "-i", data, "-o", tmp_path / "ci.csv")
    assert code == 1 and "line 3" in err


def test_ci_round_trip_and_reproducible(tmp_path, capsys):
    data = tmp_path / "s.csv"
    run(capsys, "simulate", "--n", 20, "--T", 11, "--seed", 4, "-o", data)
    outs = []
    for name in ("a", "b"):
        out = tmp_path / f"{name}.csv"
        code, stdout, _ = run(capsys, "ci", "-i", data, "--statistic", "median", "--depth", "radius",
                              "--B1", 15, "--B2", 4, "--seed", 2, "-o", out)
        assert code == 0
        outs.append(out)
    assert outs[0].read_bytes() == outs[1].read_bytes()
    assert outs[0].with_suffix(".svg").read_bytes() == outs[1].with_suffix(".svg").read_bytes()
    lines = outs[0].read_text().splitlines()
    assert lines[0] == "t,estimate,lower_single,upper_single,lower_double,upper_double"
    vals = np.array([[float(x) for x in l.split(",")] for l in lines[1:]])
    assert vals.shape == (11, 6)
    assert np.all(vals[:, 2] <= vals[:, 1]) and np.all(vals[:, 1] <= vals[:, 3])
    assert np.all(vals[:, 4] <= vals[:, 1]) and np.all(vals[:, 1] <= vals[:, 5])


def test_ci_constant_curves_zero_width(tmp_path, capsys):
    data, out = tmp_path / "c.csv", tmp_path / "ci.csv"
    write_constants(data, [1.5] * 6)
    assert run(capsys, "ci", "-i", data, "--B1", 5, "--B2", 3, "-o", out)[0] == 0
    vals = np.array([[float(x) for x in l.split(",")] for l in out.read_text().splitlines()[1:]])
    assert np.all(vals[:, 1:] == 1.5)


def test_ci_weather_sized_dataset(tmp_path, capsys):
    data, out = tmp_path / "w.csv", tmp_path / "ci.csv"
    sample, ids = synthetic_weather(1)
    write_dataset(data, sample, ids)
    assert run(capsys, "ci", "-i", data, "--B1", 49, "--B2", 9, "-o", out)[0] == 0
    assert len(out.read_text().splitlines()) == 366
    assert read_dataset(data)[0].values.shape == (35, 365)


def test_ci_infeasible_gamma(tmp_path, capsys):
    data = tmp_path / "c.csv"
    write_constants(data, [1, 2, 3])
    code, _, err = run(capsys, "ci", "-i", data, "--statistic", "trimmed", "--gamma", 1.0,
                       "-o", tmp_path / "x.csv")
    assert code == 1 and "gamma" in err


# -- coverage -----------------------------------------------------------------------

def coverage_args(out, *extra):
    return ["coverage", "--n", 12, "--T", 11, "--B1", 7, "--B2", 3, "--R", 3, "--seed", 6,
            "-o", out, *extra]


def test_coverage_csv_schema(tmp_path, capsys):
    out = tmp_path / "cov.csv"
    code, stdout, _ = run(capsys, *coverage_args(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "statistic,depth,metric,bootstrap,method,n,B1,B2,R,nominal,empirical,mc_stderr"
    assert len(lines) == 21
    svg = out.with_suffix(".svg").read_text()
    assert svg.lstrip().startswith("<?xml") and "<svg" in svg
    assert json.loads(stdout)["config"]["R"] == 3


def test_coverage_single_level_and_linf(tmp_path, capsys):
    out = tmp_path / "cov.csv"
    run(capsys, *coverage_args(out, "--levels", "0.95", "--metric", "linf"))
    lines = out.read_text().splitlines()
    assert len(lines) == 3 and ",linf," in lines[1]


def test_coverage_byte_identical_across_workers(tmp_path, capsys):
    a, b, c = (tmp_path / f"{x}.csv" for x in "abc")
    run(capsys, *coverage_args(a, "--workers", 1))
    run(capsys, *coverage_args(b, "--workers", 1))
    run(capsys, *coverage_args(c, "--workers", 3))
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()
    assert a.with_suffix(".svg").read_bytes() == c.with_suffix(".svg").read_bytes()


def test_coverage_infeasible_parameter_named(tmp_path, capsys):
    code, _, err = run(capsys, *coverage_args(tmp_path / "x.csv", "--statistic", "median",
                                              "--depth", "radius", "--alpha", 0.99, "--n", 4))
    assert code == 1 and "alpha" in err


def test_coverage_unknown_statistic(tmp_path, capsys):
    code, _, err = run(capsys, *coverage_args(tmp_path / "x.csv", "--statistic", "mode"))
    assert code == 1 and "statistic" in err
