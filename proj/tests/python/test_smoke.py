from fractions import Fraction

import pytest

import lcl
from lcl import to_fraction


def contains(enc, q):
    return to_fraction(enc["lo"]) <= q <= to_fraction(enc["hi"])


def test_parabola_values_and_slopes():
    for x in ["0", "1/4", "3/8", "1"]:
        q = Fraction(x)
        assert contains(lcl.value("parabola", x), q * q)
        side = "left" if q == 1 else "right"
        assert contains(lcl.slope("parabola", x, side), 2 * q)


def test_enclosure_width_meets_precision():
    e = lcl.value("tbinc", "5/16", p=50)
    assert to_fraction(e["hi"]) - to_fraction(e["lo"]) <= Fraction(1, 2**50)


def test_tangent_json():
    t = lcl.tangent("parabola", "1/2")
    assert t["kind"] == "tangent"
    assert contains(t["a"], Fraction(1))
    assert contains(t["b"], Fraction(-1, 4))


def test_family_and_lipschitz():
    fam = lcl.build_family("tbinc", depth=2)
    assert fam["curve"] == "tbinc"
    assert len(fam["lines"]) >= 4
    assert lcl.code_lipschitz(fam, 0, len(fam["lines"]) - 1) == "certified_true"


def test_boxcount_report():
    fam = lcl.build_family("parabola", depth=4)
    r = lcl.boxcount(fam, 2, 6)
    assert r["scales"] == [2, 3, 4, 5, 6]
    assert len(r["counts"]) == 5
    counts = [int(c) for c in r["counts"]]
    assert counts == sorted(counts)


def test_single_intersection():
    fam = lcl.build_family("parabola", points=["1/2"])
    assert lcl.single_intersection(fam, 0, 8) == "certified_single"


def test_slope_cover_and_gap_image():
    c = lcl.slope_cover(3)
    assert c["certified"]
    assert len(c["intervals"]) == 8
    g = lcl.gap_image(1, 1)
    assert g["certified_le_relaxed"]
    assert g["strict_bound"] == "certified_false"
    assert Fraction(2666, 10000) < to_fraction(g["delta"]["lo"]) <= to_fraction(g["delta"]["hi"]) < Fraction(2667, 10000)


def test_registry_and_membership():
    reg = lcl.registry(2, 20)
    assert reg
    assert lcl.in_cstar("1/2")["kind"] == "no"


def test_svg():
    fam = lcl.build_family("parabola", points=["1/4", "1/2", "3/4"])
    s = lcl.svg("parabola", fam, grid=3)
    assert s.startswith("<svg") or s.startswith("<?xml")
    assert s.count("<path") == 4


def test_verify_slopecover():
    r = lcl.verify("slopecover")
    assert r["passed"]


def test_errors():
    with pytest.raises(Exception):
        lcl.value("nosuchcurve", "0")
    with pytest.raises(Exception):
        lcl.verify("nosuchcheck")
