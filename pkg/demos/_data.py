"""Loaders shared by the demo scripts."""

import json
from importlib import resources

from ecirr.curve import Curve
from ecirr.poly import Poly
from ecirr.quadorder import QuadInt
from ecirr.ratmap import RationalMap

DATA = resources.files("ecirr") / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def f83_example():
    meta = load("f83_example.json")
    curve = Curve.from_json(load("f83_curve.json"))
    m = RationalMap.from_json(load("f83_l17.json"))
    return curve, m, Poly(curve.ctx, meta["f0"]), QuadInt.from_json(meta["alpha"]), meta["d"]


def fixture(name):
    o = load(f"fixtures/{name}.json")
    curve = Curve.from_json(o["curve"])
    return curve, RationalMap.from_json(o["map"]), QuadInt.from_json(o["alpha"]), o["d"], o["k0"]
