import pytest

from ecirr.errors import DegreeMismatch, ExhaustedChoices, IrreducibilityViolation
from ecirr.poly import Poly, is_irreducible
from ecirr.ratmap import RationalMap
from ecirr.sequence import (
    IterationState, Phase, Selection, SequenceParams, growth_diagnostic, run, run_detailed,
    step_sub1, step_sub2, transform_factors,
)


@pytest.mark.parametrize("text,kind,arg", [
    ("largest-degree", "largest-degree", None),
    ("smallest-degree", "smallest-degree", None),
    ("smallest-degree-above(6)", "smallest-degree-above", 6),
    ("smallest-degree-above-d", "smallest-degree-above", None),
    ("kth-canonical(2)", "kth-canonical", 2),
])
def test_selection_parse(text, kind, arg):
    s = Selection.parse(text)
    assert (s.kind, s.arg) == (kind, arg)


@pytest.mark.parametrize("bad", ["largest", "kth-canonical", "smallest-degree(x)", ""])
def test_selection_parse_rejects(bad):
    with pytest.raises(ValueError):
        Selection.parse(bad)


def test_example_first_factorization(example):
    fac = transform_factors(example.f0, example.map)
    assert fac.degrees() == [3] + [6] * 8
    assert all(e == 1 for _, e in fac.factors)
    assert sum(fac.degrees()) == 17 * 3


def test_step_sub1_strategies(example):
    st = IterationState.start(example.f0)
    small = step_sub1(st, SequenceParams(example.map, 3, selection="smallest-degree"))
    assert small.f.degree == 3 and small.phase is Phase.SUB1
    above = step_sub1(st, SequenceParams(example.map, 3, selection="smallest-degree-above-d"))
    assert above.f.degree == 6 and above.phase is Phase.SUB1  # 6 is not above 2d
    nxt = step_sub1(above, SequenceParams(example.map, 3))
    assert nxt.f.degree == 102 and nxt.phase is Phase.SUB2
    assert nxt.history[-1] == (102, nxt.f.fingerprint()) and nxt.factorizations == 2


def test_factor_degrees_divide_and_sum(example):
    st = step_sub1(IterationState.start(example.f0), SequenceParams(example.map, 3))
    fac = transform_factors(st.f, example.map)
    assert sum(g.degree * e for g, e in fac.factors) == 17 * st.f.degree
    assert all((17 * st.f.degree) % g.degree == 0 for g in fac.distinct())


def test_step_sub2_degree_law(example):
    params = SequenceParams(example.map, 3)
    st = step_sub1(step_sub1(IterationState.start(example.f0), params), params)
    nxt = step_sub2(st, SequenceParams(example.map, 3, verify_sub2=False))
    assert nxt.f.degree == 17 * 102 and nxt.f.is_monic()
    with pytest.raises(ValueError):
        step_sub1(nxt, params)


def test_step_sub2_detects_bad_map(example):
    m = example.map
    bad = RationalMap.make(m.a, m.b + Poly.monomial(m.ctx, 2))
    st = IterationState(0, example.f0, Phase.SUB2)
    with pytest.raises(IrreducibilityViolation):
        step_sub2(st, SequenceParams(bad, 3, verify_sub2=True))


def test_run_trivial_target(example):
    assert run(example.f0, SequenceParams(example.map, 3), 0) == [example.f0]


def test_run_rejects_bad_f0(example):
    with pytest.raises(DegreeMismatch):
        run(example.f0, SequenceParams(example.map, 4), 1)
    x = Poly.x(example.map.ctx)
    with pytest.raises(IrreducibilityViolation):
        run(x**3 - x, SequenceParams(example.map, 3), 1)


def test_run_deterministic(example):
    a = run(example.f0, SequenceParams(example.map, 3, verify_sub2=False), 2, seed=7)
    b = run(example.f0, SequenceParams(example.map, 3, verify_sub2=False), 2, seed=7)
    assert a == b and [f.degree for f in a] == [3, 6, 102]


def test_exhausted_choices(example):
    # budget of one SUB1 step: no factor of f_0^r has degree above 6
    with pytest.raises(ExhaustedChoices) as err:
        run(example.f0, SequenceParams(example.map, 3, k0=0, max_sub1_steps=1), 2)
    assert len(err.value.history) == 9
    assert {tuple(h) for h in err.value.history} == {(3, 3), (3, 6)}


def test_fixture_sequences(fixture):
    """SUB1 degrees lie in {d, 2d}; at most k0 factorizations after the first; irreducible outputs."""
    d = fixture.d
    for sel in ("largest-degree", "smallest-degree"):
        res = run_detailed(fixture.f0, SequenceParams(fixture.map, d, fixture.k0, sel), 3)
        degs = res.degrees
        j = res.switch_index
        assert all(x in (d, 2 * d) for x in degs[:j])
        assert res.state.factorizations - 1 <= fixture.k0
        for h in range(j, len(degs) - 1):
            assert degs[h + 1] == fixture.map.l * degs[h]
        assert all(f.is_monic() and is_irreducible(f) for f in res.polys)


def test_growth_diagnostic():
    g = growth_diagnostic(83, 1, 3, 17)
    assert g["q=p^(nd)"] == {"q_mod_l": 9, "q_is_1_mod_l": False}
    assert g["q=p^(2nd)"] == {"q_mod_l": 13, "q_is_1_mod_l": False}
    assert growth_diagnostic(83, 1, 4, 17)["q=p^(2nd)"]["q_is_1_mod_l"]
