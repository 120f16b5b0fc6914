"""Iterated r-transforms producing irreducible polynomials of growing degree.

Sub-procedure 1 repeatedly transforms f_i and keeps one irreducible factor
of f_i^r, until that factor has degree above 2d.  From then on (Sub-procedure
2) f_i^r is already irreducible and is taken as is, so degrees grow by l
at every step.

A bad first choice can trap SUB1 in a cycle of low-degree factors.  ``run``
notices when SUB1 overstays its budget (k0 + 1 steps when k0 is known) and
restarts with the next factor of f_0^r.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import DegreeMismatch, ExhaustedChoices, IrreducibilityViolation
from .poly import Factorization, Poly, factor, is_irreducible
from .ratmap import RationalMap, r_transform

VERIFY_SUB2_BELOW = 5000


class Phase(str, Enum):
    SUB1 = "SUB1"
    SUB2 = "SUB2"


@dataclass(frozen=True)
class Selection:
    """A rule picking one factor from the canonical list of distinct factors.

    kinds: ``smallest-degree``, ``largest-degree``,
    ``smallest-degree-above(t)`` (t defaults to d; falls back to
    largest-degree when nothing qualifies) and ``kth-canonical(k)``
    (1-based, clamped to the last factor).
    """

    kind: str
    arg: int | None = None

    KINDS = ("smallest-degree", "largest-degree", "smallest-degree-above", "kth-canonical")

    @classmethod
    def parse(cls, text: str | Selection) -> Selection:
        if isinstance(text, Selection):
            return text
        m = re.fullmatch(r"\s*([a-z-]+?)(?:-d|\((\d+)\))?\s*", text)
        if not m or m.group(1) not in cls.KINDS:
            raise ValueError(f"unknown selection strategy {text!r}; expected one of {', '.join(cls.KINDS)}")
        kind, arg = m.group(1), m.group(2)
        if kind == "kth-canonical" and arg is None:
            raise ValueError("kth-canonical needs an index, e.g. kth-canonical(2)")
        return cls(kind, int(arg) if arg is not None else None)

    def pick(self, factors: list[Poly], d: int) -> Poly:
        if self.kind == "smallest-degree":
            return min(factors, key=lambda g: g.degree)
        if self.kind == "largest-degree":
            # max() keeps the first maximum, i.e. the canonically smallest
            return max(factors, key=lambda g: g.degree)
        if self.kind == "smallest-degree-above":
            t = d if self.arg is None else self.arg
            above = [g for g in factors if g.degree > t]
            if not above:
                return max(factors, key=lambda g: g.degree)
            return min(above, key=lambda g: g.degree)
        return factors[min(self.arg, len(factors)) - 1]

    def __str__(self):
        return self.kind if self.arg is None else f"{self.kind}({self.arg})"


@dataclass(frozen=True)
class SequenceParams:
    map: RationalMap
    d: int
    k0: int | None = None
    selection: Selection = field(default_factory=lambda: Selection("largest-degree"))
    max_sub1_steps: int = 12
    verify_sub2: bool | None = None  # None: verify while deg < VERIFY_SUB2_BELOW

    def __post_init__(self):
        object.__setattr__(self, "selection", Selection.parse(self.selection))
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.k0 is not None:
            if self.k0 < 0:
                raise ValueError("k0 must be nonnegative")
            if self.max_sub1_steps < self.k0 + 1:
                object.__setattr__(self, "max_sub1_steps", self.k0 + 1)

    @property
    def sub1_budget(self) -> int:
        return self.k0 + 1 if self.k0 is not None else self.max_sub1_steps

    def should_verify(self, degree: int) -> bool:
        return degree < VERIFY_SUB2_BELOW if self.verify_sub2 is None else self.verify_sub2


@dataclass(frozen=True)
class IterationState:
    i: int
    f: Poly
    phase: Phase
    history: tuple = ()
    retries: int = 0
    factorizations: int = 0

    @classmethod
    def start(cls, f0: Poly) -> IterationState:
        return cls(0, f0, Phase.SUB1, ((f0.degree, f0.fingerprint()),))


def _advance(st: IterationState, g: Poly, d: int, factored: bool) -> IterationState:
    phase = Phase.SUB2 if (st.phase is Phase.SUB2 or g.degree > 2 * d) else Phase.SUB1
    return replace(
        st,
        i=st.i + 1,
        f=g,
        phase=phase,
        history=st.history + ((g.degree, g.fingerprint()),),
        factorizations=st.factorizations + int(factored),
    )


def transform_factors(f: Poly, m: RationalMap, seed: int = 0) -> Factorization:
    return factor(r_transform(f, m), seed=seed)


def step_sub1(st: IterationState, params: SequenceParams, seed: int = 0) -> IterationState:
    """Factor f_i^r and keep the factor chosen by ``params.selection``."""
    if st.phase is not Phase.SUB1:
        raise ValueError("step_sub1 called in phase SUB2")
    fac = transform_factors(st.f, params.map, seed)
    g = params.selection.pick(fac.distinct(), params.d)
    return _advance(st, g, params.d, factored=True)


def step_sub2(st: IterationState, params: SequenceParams) -> IterationState:
    """f_{i+1} = f_i^r, checked irreducible when verification is on."""
    if st.phase is not Phase.SUB2:
        raise ValueError("step_sub2 called in phase SUB1")
    g = r_transform(st.f, params.map)
    if g.degree != params.map.l * st.f.degree:
        raise DegreeMismatch(f"deg f^r = {g.degree}, expected {params.map.l * st.f.degree}")
    if params.should_verify(g.degree) and not is_irreducible(g):
        raise IrreducibilityViolation(
            f"f_{st.i + 1} = f_{st.i}^r of degree {g.degree} is reducible; "
            "the map is probably not an endomorphism of the given curve"
        )
    return _advance(st, g, params.d, factored=False)


@dataclass
class SequenceResult:
    polys: list
    state: IterationState
    switch_index: int | None
    attempts: list  # degree histories of abandoned first choices

    @property
    def degrees(self) -> list[int]:
        return [f.degree for f in self.polys]

    def to_json(self, full: bool = False) -> dict:
        return {
            "degrees": self.degrees,
            "switch_index": self.switch_index,
            "retries": self.state.retries,
            "factorizations": self.state.factorizations,
            "abandoned": self.attempts,
            "polys": [f.to_list() if full else {"degree": f.degree, "sha256": f.fingerprint()} for f in self.polys],
        }


def _check_f0(f0: Poly, params: SequenceParams):
    if f0.ctx != params.map.ctx:
        raise DegreeMismatch("f0 and the map live over different fields")
    if f0.degree != params.d:
        raise DegreeMismatch(f"deg f0 = {f0.degree} but d = {params.d}")
    if not f0.is_monic() or not is_irreducible(f0):
        raise IrreducibilityViolation("f0 must be monic irreducible")


def run_detailed(f0: Poly, params: SequenceParams, target_index: int, seed: int = 0) -> SequenceResult:
    """Build f_0..f_target, restarting SUB1 at the first branch point on a stall.

    SUB1 is always driven to the switch before truncating to the target,
    so a trapped choice is detected even for short targets.
    """
    if target_index < 0:
        raise ValueError("target_index must be nonnegative")
    _check_f0(f0, params)
    st0 = IterationState.start(f0)
    if target_index == 0:
        return SequenceResult([f0], st0, None, [])

    first = transform_factors(f0, params.map, seed)
    choices = first.distinct()
    pick = params.selection.pick(choices, params.d)
    order = [pick] + [g for g in choices if g != pick]
    budget = params.sub1_budget
    attempts = []
    for retry, g1 in enumerate(order):
        st = _advance(replace(st0, retries=retry), g1, params.d, factored=True)
        polys = [f0, g1]
        while st.phase is Phase.SUB1 and st.i < budget:
            st = step_sub1(st, params, seed)
            polys.append(st.f)
        if st.phase is Phase.SUB1:
            attempts.append([h[0] for h in st.history])
            continue
        switch = st.i
        while st.i < target_index:
            st = step_sub2(st, params)
            polys.append(st.f)
        return SequenceResult(polys[: target_index + 1], st, switch, attempts)
    raise ExhaustedChoices(
        f"no choice of f_1 among {len(order)} factors left SUB1 within {budget} steps "
        f"(degrees never exceeded 2d = {2 * params.d})",
        history=attempts,
    )


def run(f0: Poly, params: SequenceParams, target_index: int, seed: int = 0) -> list[Poly]:
    return run_detailed(f0, params, target_index, seed).polys


def growth_diagnostic(p: int, n: int, d: int, l: int) -> dict:
    """Whether q = 1 mod l under both readings of q (p^(nd) and p^(2nd))."""
    out = {}
    for label, e in (("q=p^(nd)", n * d), ("q=p^(2nd)", 2 * n * d)):
        r = pow(p, e, l)
        out[label] = {"q_mod_l": r, "q_is_1_mod_l": r == 1}
    return out
