"""Short Weierstrass curves y^2 = x^3 + A x + B over small finite fields.

Point counting is by brute force (quadratic character over all x), which
is all the desk-scale checks need.  :func:`verify_endomorphism` tests
whether a rational map behaves like the x-coordinate of an endomorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContextMismatch, PointNotOnCurve, SingularCurve
from .ff import FieldCtx, FieldElem, embed, enum_cap, is_prime
from .ratmap import RationalMap, eval_values, is_infinity, map_eval


class _Identity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "O"


IDENTITY = _Identity()


@dataclass(frozen=True)
class Point:
    x: FieldElem
    y: FieldElem

    def __repr__(self):
        return f"({self.x!r}, {self.y!r})"


@dataclass(frozen=True)
class Curve:
    ctx: FieldCtx
    A: FieldElem
    B: FieldElem

    def __post_init__(self):
        A, B = self.ctx.elem(self.A), self.ctx.elem(self.B)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        if not (4 * A**3 + 27 * B**2):
            raise SingularCurve(f"4A^3 + 27B^2 = 0 for A={A!r}, B={B!r}")

    @classmethod
    def from_json(cls, obj: dict) -> Curve:
        ctx = FieldCtx.from_json(obj["field"])
        return cls(ctx, ctx.elem(obj["A"]), ctx.elem(obj["B"]))

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json(), "field": self.ctx.to_json()}

    def rhs(self, x: FieldElem) -> FieldElem:
        return x * x * x + self.A * x + self.B

    def rhs_values(self, xs):
        ctx = self.ctx
        x2 = ctx.mul(xs, xs)
        return ctx.add(ctx.add(ctx.mul(x2, xs), ctx.mul(xs, self.A.value)), self.B.value)

    def contains(self, P) -> bool:
        if P is IDENTITY:
            return True
        return P.y * P.y == self.rhs(P.x)

    def base_change(self, target: FieldCtx) -> Curve:
        lift = lambda e: FieldElem.from_value(target, embed(e.value, self.ctx, target))
        return Curve(target, lift(self.A), lift(self.B))

    def __repr__(self):
        return f"y^2 = x^3 + {self.A!r}x + {self.B!r} over {self.ctx!r}"


@dataclass(frozen=True)
class CurveOrderData:
    count: int
    trace: int
    q: int

    def __post_init__(self):
        assert self.count == self.q + 1 - self.trace
        assert self.trace * self.trace <= 4 * self.q, "Hasse bound violated"


def _check(c: Curve, *pts):
    for P in pts:
        if not c.contains(P):
            raise PointNotOnCurve(f"{P!r} is not on {c!r}")


def point_neg(c: Curve, P):
    if P is IDENTITY:
        return P
    return Point(P.x, -P.y)


def _add(c: Curve, P, Q):
    if P is IDENTITY:
        return Q
    if Q is IDENTITY:
        return P
    if P.x == Q.x:
        if P.y == -Q.y:
            return IDENTITY
        lam = (3 * P.x * P.x + c.A) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    return Point(x3, lam * (P.x - x3) - P.y)


def point_add(c: Curve, P, Q):
    """Chord-and-tangent addition."""
    _check(c, P, Q)
    return _add(c, P, Q)


def scalar_mul(c: Curve, k: int, P):
    _check(c, P)
    if k < 0:
        k, P = -k, point_neg(c, P)
    R = IDENTITY
    while k:
        if k & 1:
            R = _add(c, R, P)
        k >>= 1
        if k:
            P = _add(c, P, P)
    return R


def sqrt(a: FieldElem) -> FieldElem | None:
    """A square root by Tonelli-Shanks, or None for non-squares."""
    ctx = a.ctx
    if not a:
        return a
    Q = ctx.order
    if a ** ((Q - 1) // 2) != 1:
        return None
    s, m = 0, Q - 1
    while m % 2 == 0:
        s += 1
        m //= 2
    z = next(e for e in _candidates(ctx) if e and e ** ((Q - 1) // 2) != 1)
    M, c, t, R = s, z**m, a**m, a ** ((m + 1) // 2)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2
            i += 1
        b = c ** (1 << (M - i - 1))
        M, c = i, b * b
        t, R = t * c, R * b
    return R


def _candidates(ctx: FieldCtx):
    k = 1
    while True:
        yield FieldElem.from_value(ctx, ctx.decode(k % ctx.order))
        k += 1


def lift_x(c: Curve, x: FieldElem):
    y = sqrt(c.rhs(x))
    return None if y is None else Point(x, y)


def random_point(c: Curve, rng: np.random.Generator) -> Point:
    while True:
        P = lift_x(c, c.ctx.random_elem(rng))
        if P is not None:
            if rng.integers(2):
                P = Point(P.x, -P.y)
            return P


def count_points(c: Curve) -> CurveOrderData:
    """#E(F_Q) = 1 + sum_x (1 + chi(x^3 + A x + B))."""
    xs = c.ctx.all_values()
    chi = c.ctx.chi_vec(c.rhs_values(xs))
    N = 1 + int(np.sum(1 + chi))
    return CurveOrderData(N, c.ctx.order + 1 - N, c.ctx.order)


def is_ordinary(c: Curve) -> bool:
    return count_points(c).trace % c.ctx.p != 0


def points(c: Curve):
    """All affine points (exhaustive)."""
    out = []
    for x in c.ctx.enumerate():
        y = sqrt(c.rhs(x))
        if y is None:
            continue
        out.append(Point(x, y))
        if y:
            out.append(Point(x, -y))
    return out


@dataclass
class EndoReport:
    """Outcome of :func:`verify_endomorphism`; ``passed`` combines every check."""

    mode: str
    samples: int
    degree_ok: bool
    x_compatible: bool
    character_ok: bool
    additive_ok: bool
    additive_pairs: int
    s_checked: bool = False
    s_ok: bool | None = None
    fields_checked: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.degree_ok
            and self.x_compatible
            and self.character_ok
            and self.additive_ok
            and (self.s_ok is not False)
        )

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["passed"] = self.passed
        return out


def _character_checks(c: Curve, m: RationalMap, xs) -> tuple[bool, bool, list]:
    """x-compatibility and character preservation on an array of x values.

    For an endomorphism f(r(x)) = f(x) s(x)^2, so the quadratic character of
    f is preserved wherever r(x) is finite and s(x) != 0.
    """
    ctx = c.ctx
    fx = ctx.chi_vec(c.rhs_values(xs))
    rx, pole = eval_values(m, xs)
    frx = ctx.chi_vec(c.rhs_values(rx))
    fin = ~pole
    on_curve = fx >= 0
    xcompat = bool(np.all(frx[fin & on_curve] >= 0))
    same = (frx == 0) | (frx == fx)
    two_torsion = fin & (fx == 0)
    char_ok = bool(np.all(same[fin]) and np.all(frx[two_torsion] == 0))
    failures = []
    if not xcompat:
        failures.append(f"x-compatibility fails over {ctx!r}")
    if not char_ok:
        failures.append(f"quadratic character not preserved over {ctx!r}")
    return xcompat, char_ok, failures


def _xonly_sum_product(c: Curve, x1: FieldElem, x2: FieldElem):
    d2 = (x1 - x2) ** 2
    s = (2 * (x1 * x2 + c.A) * (x1 + x2) + 4 * c.B) / d2
    pr = ((x1 * x2 - c.A) ** 2 - 4 * c.B * (x1 + x2)) / d2
    return s, pr


def _additivity(c: Curve, m: RationalMap, pairs: int, rng) -> tuple[bool, int, list]:
    """x-only homomorphism test: {r(x(P+Q)), r(x(P-Q))} is fixed by r(x(P)), r(x(Q))."""
    done = 0
    tries = 0
    while done < pairs and tries < 20 * pairs:
        tries += 1
        P, Q = random_point(c, rng), random_point(c, rng)
        S, D = _add(c, P, Q), _add(c, P, point_neg(c, Q))
        if S is IDENTITY or D is IDENTITY:
            continue
        imgs = [map_eval(m, T.x) for T in (P, Q, S, D)]
        if any(is_infinity(v) for v in imgs) or imgs[0] == imgs[1]:
            continue
        s, pr = _xonly_sum_product(c, imgs[0], imgs[1])
        if imgs[2] + imgs[3] != s or imgs[2] * imgs[3] != pr:
            return False, done, [f"x-only additivity fails at P={P!r}, Q={Q!r}"]
        done += 1
    return True, done, []


def _s_checks(c: Curve, m: RationalMap, pairs: int, rng) -> tuple[bool, list]:
    def alpha(P):
        if P is IDENTITY:
            return IDENTITY
        bx = m.b(P.x)
        sd = m.s_den(P.x)
        if not bx or not sd:
            return IDENTITY
        return Point(m.a(P.x) / bx, P.y * m.s_num(P.x) / sd)

    for _ in range(pairs):
        P, Q = random_point(c, rng), random_point(c, rng)
        aP, aQ, aS = alpha(P), alpha(Q), alpha(_add(c, P, Q))
        if not (c.contains(aP) and c.contains(aQ)):
            return False, [f"alpha(P) leaves the curve at P={P!r}"]
        if _add(c, aP, aQ) != aS:
            return False, [f"alpha(P+Q) != alpha(P)+alpha(Q) at P={P!r}, Q={Q!r}"]
    return True, []


def verify_endomorphism(c: Curve, m: RationalMap, samples: int = 200, seed: int = 0) -> EndoReport:
    """Check that ``m`` is the x-part of a degree-l endomorphism of ``c``.

    Exhaustive over the base field (and its quadratic extension when that is
    enumerable) when the field fits under the enumeration cap; otherwise
    ``samples`` random x values are used.
    """
    if m.ctx != c.ctx:
        raise ContextMismatch("curve and map over different fields")
    rng = np.random.default_rng(seed)
    ctx = c.ctx
    failures = []
    l = m.l
    degree_ok = l > 2 and is_prime(l) and m.a.degree == l and m.b.degree == l - 1
    if not degree_ok:
        failures.append(f"degree check: need odd prime l = deg a = deg b + 1, got l={l}, "
                        f"deg a={m.a.degree}, deg b={m.b.degree}")

    exhaustive = ctx.order <= enum_cap()
    checked = []
    xcompat = char_ok = True
    if exhaustive:
        targets = [c]
        if ctx.order**2 <= enum_cap():
            targets.append(c.base_change(FieldCtx.extension(ctx.p, 2 * ctx.n)))
        for cc in targets:
            mm = m.over(cc.ctx)
            xc, ch, fl = _character_checks(cc, mm, cc.ctx.all_values())
            xcompat &= xc
            char_ok &= ch
            failures += fl
            checked.append(repr(cc.ctx))
    else:
        xs = np.stack([ctx.random_elem(rng).value for _ in range(samples)])
        xcompat, char_ok, fl = _character_checks(c, m, xs)
        failures += fl
        checked.append(repr(ctx))

    add_ok, pairs, fl = _additivity(c, m, min(samples, 64), rng)
    failures += fl
    report = EndoReport(
        mode="exhaustive" if exhaustive else "sampled",
        samples=ctx.order if exhaustive else samples,
        degree_ok=degree_ok,
        x_compatible=xcompat,
        character_ok=char_ok,
        additive_ok=add_ok,
        additive_pairs=pairs,
        fields_checked=checked,
        failures=failures,
    )
    if m.s_num is not None and m.s_den is not None:
        ok, fl = _s_checks(c, m, min(samples, 64), rng)
        report.s_checked = True
        report.s_ok = ok
        report.failures += fl
    return report
