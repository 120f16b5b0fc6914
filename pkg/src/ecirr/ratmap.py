"""Rational maps r = a/b on the projective line, and the r-transform.

The r-transform of a polynomial g is b^deg(g) * g(a/b), a polynomial of
degree l*deg(g) whose roots are the r-preimages of the roots of g.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContextMismatch, DegreeZero, InvalidMap
from .ff import FieldCtx, FieldElem, embed
from .poly import Poly, poly_gcd


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
"""The point at infinity of P^1; affine points are plain :class:`FieldElem`."""


def is_infinity(pt) -> bool:
    return pt is INFINITY


@dataclass(frozen=True)
class RationalMap:
    """r = a/b with a monic, deg b < deg a = l and gcd(a, b) = 1.

    ``unit`` records the scalar divided out of the pair when the input a
    was not monic; ``s_num``/``s_den`` optionally carry the y-multiplier
    s(x) of an endomorphism (x, y) -> (r(x), y s(x)).
    """

    a: Poly
    b: Poly
    l: int
    unit: FieldElem | None = None
    s_num: Poly | None = None
    s_den: Poly | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def make(cls, a: Poly, b: Poly, l: int | None = None, s_num=None, s_den=None) -> RationalMap:
        """Validate and normalise so that a is monic (b absorbs the unit)."""
        if a.ctx != b.ctx:
            raise ContextMismatch("a and b over different fields")
        if a.degree < 1:
            raise InvalidMap("numerator must have positive degree")
        if not b:
            raise InvalidMap("denominator is zero")
        if b.degree >= a.degree:
            raise InvalidMap(f"need deg b < deg a, got {b.degree} >= {a.degree}")
        if l is None:
            l = a.degree
        if l != a.degree:
            raise InvalidMap(f"deg a = {a.degree} but l = {l}")
        if not poly_gcd(a, b).is_one():
            raise InvalidMap("a and b share a common factor")
        unit = a.lc()
        if unit != 1:
            inv = unit.inverse()
            a, b = a * inv, b * inv
        return cls(a, b, int(l), unit if unit != 1 else None, s_num, s_den)

    @property
    def ctx(self) -> FieldCtx:
        return self.a.ctx

    def to_json(self) -> dict:
        out = {"a": self.a.to_list(), "b": self.b.to_list(), "l": self.l, "field": self.ctx.to_json()}
        if self.s_num is not None:
            out["s_num"] = self.s_num.to_list()
            out["s_den"] = self.s_den.to_list()
        return out

    @classmethod
    def from_json(cls, obj: dict, ctx: FieldCtx | None = None) -> RationalMap:
        """Parse the map schema; ``a_scale`` (optional) multiplies the printed a."""
        if ctx is None:
            ctx = FieldCtx.from_json(obj["field"])
        a = Poly(ctx, obj["a"]) * obj.get("a_scale", 1)
        b = Poly(ctx, obj["b"])
        s_num = Poly(ctx, obj["s_num"]) if obj.get("s_num") is not None else None
        s_den = Poly(ctx, obj["s_den"]) if obj.get("s_den") is not None else None
        return cls.make(a, b, obj.get("l"), s_num, s_den)

    def over(self, target: FieldCtx) -> RationalMap:
        """The same map with coefficients embedded in an extension field."""
        if target == self.ctx:
            return self
        key = ("over", target)
        if key not in self._cache:
            lift = lambda g: None if g is None else Poly(target, embed(g.c, self.ctx, target), _raw=True)
            self._cache[key] = RationalMap(
                lift(self.a), lift(self.b), self.l, None, lift(self.s_num), lift(self.s_den)
            )
        return self._cache[key]

    def __call__(self, pt):
        return map_eval(self, pt)


def map_eval(m: RationalMap, pt):
    """r(pt) on P^1; poles and infinity go to infinity."""
    if is_infinity(pt):
        return INFINITY
    x = m.ctx.elem(pt)
    bx = m.b(x)
    if not bx:
        return INFINITY
    return m.a(x) / bx


def eval_values(m: RationalMap, values) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised r on an array of affine points.

    Returns ``(images, at_infinity)``; images are zero where at_infinity.
    """
    ctx = m.ctx
    av = m.a.eval_values(values)
    bv = m.b.eval_values(values)
    pole = ctx.is_zero_vec(bv)
    return ctx.mul(av, ctx.inv_vec(bv)), pole


def map_compose_check(m: RationalMap, k: int, pt):
    """Apply r k times."""
    if k < 1:
        raise ValueError("k must be positive")
    for _ in range(k):
        pt = map_eval(m, pt)
    return pt


def r_transform(g: Poly, m: RationalMap) -> Poly:
    """b^deg(g) * g(a/b) = sum_k g_k a^k b^(deg g - k), by Horner in a with running b powers."""
    if g.ctx != m.ctx:
        raise ContextMismatch("polynomial and map over different fields")
    D = g.degree
    if D < 1:
        raise DegreeZero("r-transform needs positive degree")
    a, b = m.a, m.b
    acc = Poly.const(g.ctx, g.coeff(D))
    bpow = Poly.const(g.ctx, 1)
    for k in range(D - 1, -1, -1):
        bpow = bpow * b
        acc = acc * a + bpow * g.coeff(k)
    return acc
