"""Certified convex curves, covering lines and box counts.

Numbers go in as strings ("3/8", "0.375") and come back in the JSON forms
used by the command line tool.
"""
import json as _json

from . import _lcl
from ._lcl import PrecisionFailure

__all__ = [
    "PrecisionFailure",
    "value",
    "slope",
    "tangent",
    "build_family",
    "code_lipschitz",
    "single_intersection",
    "boxcount",
    "slope_cover",
    "registry",
    "gap_image",
    "in_cstar",
    "svg",
    "verify",
    "to_fraction",
]


def _family_text(family):
    return family if isinstance(family, str) else _json.dumps(family)


def value(curve, x, p=40):
    return _json.loads(_lcl.value(curve, str(x), p))


def slope(curve, x, side="right", p=40):
    return _json.loads(_lcl.slope(curve, str(x), side, p))


def tangent(curve, x, side="right", p=40):
    return _json.loads(_lcl.tangent(curve, str(x), side, p))


def build_family(curve, scheme="grid", depth=3, count=1, seed=0, sides="right", window="0,-1,1,1", points=(), p=40):
    return _json.loads(
        _lcl.build_family(curve, scheme, depth, count, seed, sides, window, [str(x) for x in points], p)
    )


def code_lipschitz(family, i, j, p=40):
    return _lcl.code_lipschitz(_family_text(family), i, j, p)


def single_intersection(family, i, g=10, p=40):
    return _lcl.single_intersection(_family_text(family), i, g, p)


def boxcount(family, kmin=3, kmax=9, fit=None):
    return _json.loads(_lcl.boxcount(_family_text(family), kmin, kmax, fit))


def slope_cover(n):
    return _json.loads(_lcl.slope_cover(n))


def registry(max_stage, budget):
    return _json.loads(_lcl.registry(max_stage, budget))


def gap_image(n, i, p=40):
    return _json.loads(_lcl.gap_image(n, str(i), p))


def in_cstar(x, depth=12):
    return _json.loads(_lcl.in_cstar(str(x), depth))


def svg(curve, family=None, grid=-1, window="0,-1,1,1", p=40):
    return _lcl.svg(curve, None if family is None else _family_text(family), grid, window, p)


def verify(what, curve="tbinc", p=40, seed=7, samples=200, lines=50, depth=10, max_ni=14):
    return _json.loads(_lcl.verify(what, curve, p, seed, samples, lines, depth, max_ni))


def to_fraction(d):
    """A {"num", "exp"} or {"num", "den"} object as a Fraction."""
    from fractions import Fraction

    if "den" in d:
        return Fraction(int(d["num"]), int(d["den"]))
    return Fraction(int(d["num"]), 2 ** int(d["exp"]))
