import csv
import io
import json
import os
import subprocess
from fractions import Fraction

import pytest

CLI = os.environ.get("LCL_CLI", "lcl")


def run(*args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop("LCL_PRECISION", None)
    full_env.update(env or {})
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, env=full_env, cwd=cwd)


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_gen_tbinc_grid3():
    r = run("gen", "tbinc", "--grid", 3)
    assert r.returncode == 0, r.stderr
    rs = rows(r.stdout)
    assert len(rs) == 9
    assert (rs[0]["F_lo"], rs[0]["F_hi"]) == ("0", "0")


def test_gen_parabola_exact_squares():
    rs = rows(run("gen", "parabola", "--grid", 2).stdout)
    assert len(rs) == 5
    for row in rs:
        x = Fraction(row["x"])
        assert Fraction(row["F_lo"]) == Fraction(row["F_hi"]) == x * x
        assert Fraction(row["f_lo"]) == Fraction(row["f_hi"]) == 2 * x


def test_gen_tcantc_stage_widths():
    rs = rows(run("gen", "tcantc", "--grid", 3, "--stage", 6).stdout)
    assert len(rs) == 9
    for row in rs:
        assert Fraction(row["f_hi"]) - Fraction(row["f_lo"]) <= Fraction(1, 32)
        assert Fraction(row["F_hi"]) - Fraction(row["F_lo"]) <= Fraction(1, 2**40)


def test_gen_json_format():
    data = json.loads(run("gen", "parabola", "--grid", 1, "--format", "json").stdout)
    assert len(data) == 3
    assert data[1]["x"] == {"num": "1", "exp": 1}


def test_precision_from_env_and_flag():
    wide = rows(run("gen", "tbinc", "--grid", 3, env={"LCL_PRECISION": "8"}).stdout)
    narrow = rows(run("gen", "tbinc", "--grid", 3, "-p", 60, env={"LCL_PRECISION": "8"}).stdout)
    w = lambda rs: max(Fraction(r["F_hi"]) - Fraction(r["F_lo"]) for r in rs)
    assert w(wide) <= Fraction(1, 2**8)
    assert w(narrow) <= Fraction(1, 2**60)
    assert w(narrow) < w(wide)


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("curve=parabola\ngrid=1\nformat=json\n")
    data = json.loads(run("gen", "--config", cfg).stdout)
    assert len(data) == 3


def test_invalid_curve_exit_code():
    r = run("gen", "nosuch")
    assert r.returncode != 0
    assert "error" in r.stderr


def test_missing_family_file():
    r = run("boxcount", "--family", "/nonexistent/family.json")
    assert r.returncode != 0
    assert r.stderr


def test_malformed_family_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("plot", "--family", bad).returncode != 0


def test_verify_lipschitz_tbinc():
    r = run("verify", "lipschitz", "--curve", "tbinc", "--samples", 200, "--seed", 7)
    assert r.returncode == 0, r.stdout
    assert json.loads(r.stdout)["passed"]


def test_verify_gapbound():
    r = run("verify", "gapbound", "--max-ni", 12)
    assert r.returncode == 0, r.stdout
    rep = json.loads(r.stdout)
    assert rep["passed"]
    assert "strict_bound_counts" in rep


@pytest.mark.parametrize("curve", ["parabola", "tbinc", "tcantc"])
def test_verify_cover(curve):
    r = run("verify", "cover", "--curve", curve)
    assert r.returncode == 0, r.stdout


def test_verify_slopecover():
    assert run("verify", "slopecover").returncode == 0


def test_lines_and_boxcount(tmp_path):
    fam = tmp_path / "parabola.json"
    seg = tmp_path / "seg.csv"
    r = run("lines", "parabola", "--grid", 10, "-o", fam, "--segments", seg)
    assert r.returncode == 0, r.stderr
    family = json.loads(fam.read_text())
    assert family["curve"] == "parabola"
    assert len(family["lines"]) == 1024
    assert seg.read_text().startswith("x0,y0,x1,y1\n")
    rep = json.loads(run("boxcount", "--family", fam, "--scales", "3:9").stdout)
    assert rep["scales"] == list(range(3, 10))
    assert float(rep["fit"]["dim"]) >= 1.8
    table = rows(run("boxcount", "--family", fam, "--scales", "3:9", "--format", "csv").stdout)
    assert [int(t["k"]) for t in table] == list(range(3, 10))


def test_lines_cover_report(tmp_path):
    cover = tmp_path / "cover.json"
    assert run("lines", "tbinc", "--grid", 2, "-o", tmp_path / "f.json", "--cover", cover).returncode == 0
    assert json.loads(cover.read_text())


def test_plot_three_tangents(tmp_path):
    fam = tmp_path / "f.json"
    run("lines", "parabola", "--points", "1/4,1/2,3/4", "-o", fam)
    svg = run("plot", "--family", fam).stdout
    assert svg.count("<path") == 4


def test_plot_empty_family(tmp_path):
    fam = tmp_path / "empty.json"
    fam.write_text(json.dumps({"curve": "parabola", "window": "0,-1,1,1", "lines": []}))
    svg = run("plot", "--family", fam).stdout
    assert svg.count("<path") == 1


def test_plot_grid_overlay(tmp_path):
    fam = tmp_path / "f.json"
    run("lines", "parabola", "--points", "1/4,1/2,3/4", "-o", fam)
    svg = run("plot", "--family", fam, "--grid", 4).stdout
    # 2^-4 cells over a 1 x 2 window: 17 vertical and 33 horizontal rules.
    assert svg.count("<line") == 50
    rep = json.loads(run("boxcount", "--family", fam, "--scales", "4:5", "--fit", "4:5").stdout)
    assert svg.count('fill="#dde6f0"') == int(rep["counts"][0])


def test_lines_deterministic(tmp_path):
    a = run("lines", "tcantc", "--scheme", "random", "--count", 20, "--seed", 99, "--sides", "random").stdout
    b = run("lines", "tcantc", "--scheme", "random", "--count", 20, "--seed", 99, "--sides", "random").stdout
    c = run("lines", "tcantc", "--scheme", "random", "--count", 20, "--seed", 98, "--sides", "random").stdout
    assert a == b
    assert a != c
