import json
from dataclasses import dataclass
from importlib import resources

import pytest

from ecirr.curve import Curve
from ecirr.poly import Poly
from ecirr.quadorder import QuadInt
from ecirr.ratmap import RationalMap

DATA = resources.files("ecirr") / "data"


@dataclass
class Fixture:
    name: str
    curve: Curve
    map: RationalMap
    alpha: QuadInt
    d: int
    k0: int
    f0: Poly

    @property
    def p(self):
        return self.curve.ctx.p


def _load(name):
    return json.loads((DATA / name).read_text())


def load_fixtures():
    out = []
    for entry in sorted((DATA / "fixtures").iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".json"):
            continue
        o = json.loads(entry.read_text())
        c = Curve.from_json(o["curve"])
        m = RationalMap.from_json(o["map"])
        out.append(Fixture(o["name"], c, m, QuadInt.from_json(o["alpha"]), o["d"], o["k0"], Poly(c.ctx, o["f0"])))
    return out


FIXTURES = load_fixtures()
SMALL = [f for f in FIXTURES if f.p < 100]


def load_example():
    meta = _load("f83_example.json")
    c = Curve.from_json(_load("f83_curve.json"))
    m = RationalMap.from_json(_load("f83_l17.json"))
    return Fixture("f83_l17", c, m, QuadInt.from_json(meta["alpha"]), meta["d"], None, Poly(c.ctx, meta["f0"]))


@pytest.fixture(params=FIXTURES, ids=lambda f: f.name)
def fixture(request):
    return request.param


@pytest.fixture(params=SMALL, ids=lambda f: f.name)
def small_fixture(request):
    return request.param


@pytest.fixture(scope="session")
def example():
    return load_example()


# acceptance reporting: one PASS/FAIL line per criterion in the terminal summary

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
