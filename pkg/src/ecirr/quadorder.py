"""Exact arithmetic in the maximal order of Q(sqrt(D)), D < 0 squarefree.

Elements are ``c0 + c1*w`` with w = (1 + sqrt(D))/2 when D = 1 mod 4 and
w = sqrt(D) otherwise.  This is where the Frobenius element, its powers
delta_i and the alpha-adic valuations of delta_i - 1 are computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateAlpha, DivisionByZero, NotDivisible, NotInOrder, OrderMismatch
from .ff import is_prime


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class QuadOrder:
    D: int

    def __post_init__(self):
        if self.D >= 0 or not _squarefree(self.D):
            raise ValueError(f"D must be negative and squarefree, got {self.D}")

    @property
    def half_integral(self) -> bool:
        return self.D % 4 == 1

    @property
    def disc(self) -> int:
        return self.D if self.half_integral else 4 * self.D

    @property
    def w_trace(self) -> int:
        return 1 if self.half_integral else 0

    @property
    def w_norm(self) -> int:
        return (1 - self.D) // 4 if self.half_integral else -self.D

    def __call__(self, c0: int, c1: int = 0) -> QuadInt:
        return QuadInt(int(c0), int(c1), self)

    @property
    def w(self) -> QuadInt:
        return QuadInt(0, 1, self)

    def elements_of_norm(self, n: int) -> list[QuadInt]:
        """All elements of norm n (brute force over the bounded ellipse)."""
        out = []
        # 4N = (2c0 + T c1)^2 + |disc| c1^2
        bound = math.isqrt(4 * n // abs(self.disc)) + 1
        for c1 in range(-bound, bound + 1):
            for c0 in range(-2 * math.isqrt(n) - abs(c1) - 1, 2 * math.isqrt(n) + abs(c1) + 2):
                z = QuadInt(c0, c1, self)
                if z.norm() == n:
                    out.append(z)
        return out


@dataclass(frozen=True)
class QuadInt:
    c0: int
    c1: int
    order: QuadOrder

    def _o(self, other) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(other, 0, self.order)
        if not isinstance(other, QuadInt):
            return NotImplemented
        if other.order != self.order:
            raise OrderMismatch("elements of different orders")
        return other

    def __add__(self, other):
        o = self._o(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.c0 + o.c0, self.c1 + o.c1, self.order)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.c0, -self.c1, self.order)

    def __sub__(self, other):
        o = self._o(other)
        if o is NotImplemented:
            return o
        return QuadInt(self.c0 - o.c0, self.c1 - o.c1, self.order)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._o(other)
        if o is NotImplemented:
            return o
        T, N = self.order.w_trace, self.order.w_norm
        a0, a1, b0, b1 = self.c0, self.c1, o.c0, o.c1
        # w^2 = T w - N
        t = a1 * b1
        return QuadInt(a0 * b0 - N * t, a0 * b1 + a1 * b0 + T * t, self.order)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return qi_pow(self, e)

    def conj(self) -> QuadInt:
        return QuadInt(self.c0 + self.order.w_trace * self.c1, -self.c1, self.order)

    def norm(self) -> int:
        T, N = self.order.w_trace, self.order.w_norm
        return self.c0 * self.c0 + T * self.c0 * self.c1 + N * self.c1 * self.c1

    def trace(self) -> int:
        return 2 * self.c0 + self.order.w_trace * self.c1

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def mod(self, M: int) -> QuadInt:
        """Coordinates reduced mod M: the image in R/MR."""
        return QuadInt(self.c0 % M, self.c1 % M, self.order)

    def to_json(self) -> dict:
        return {"D": self.order.D, "c0": self.c0, "c1": self.c1}

    @classmethod
    def from_json(cls, obj: dict) -> QuadInt:
        return cls(int(obj["c0"]), int(obj["c1"]), QuadOrder(int(obj["D"])))

    def __repr__(self):
        if max(abs(self.c0), abs(self.c1)).bit_length() > 256:
            return f"QuadInt(<{self.c0.bit_length()}-bit>, <{self.c1.bit_length()}-bit>; D={self.order.D})"
        return f"({self.c0}, {self.c1})"


def qi_add(x: QuadInt, y: QuadInt) -> QuadInt:
    return x + y


def qi_mul(x: QuadInt, y: QuadInt) -> QuadInt:
    return x * y


def qi_conj(x: QuadInt) -> QuadInt:
    return x.conj()


def qi_norm(x: QuadInt) -> int:
    return x.norm()


def qi_pow(x: QuadInt, e: int, M: int | None = None) -> QuadInt:
    """x**e, optionally reducing coordinates mod M after each product."""
    if e < 0:
        raise ValueError("negative exponent")
    result = QuadInt(1, 0, x.order)
    base = x if M is None else x.mod(M)
    while e:
        if e & 1:
            result = result * base
            if M is not None:
                result = result.mod(M)
        e >>= 1
        if e:
            base = base * base
            if M is not None:
                base = base.mod(M)
    return result


def qi_exact_div(x: QuadInt, y: QuadInt) -> QuadInt:
    """q with q*y == x, via x*conj(y)/norm(y); raises NotDivisible."""
    if not y:
        raise DivisionByZero("division by zero in the order")
    num = x * y.conj()
    n = y.norm()
    if num.c0 % n or num.c1 % n:
        raise NotDivisible("divisor does not divide dividend exactly")
    return QuadInt(num.c0 // n, num.c1 // n, x.order)


def divides(y: QuadInt, x: QuadInt) -> bool:
    try:
        qi_exact_div(x, y)
    except NotDivisible:
        return False
    return True


def check_alpha(alpha: QuadInt) -> int:
    """Return l = norm(alpha) after checking it is an odd prime that splits."""
    l = alpha.norm()
    if l < 3 or not is_prime(l):
        raise DegenerateAlpha(f"norm(alpha) = {l} is not an odd prime")
    if divides(alpha, alpha.conj()):
        raise DegenerateAlpha(f"l = {l} ramifies (divides the discriminant {alpha.order.disc})")
    return l


def nu_alpha(beta: QuadInt, alpha: QuadInt) -> tuple[int, QuadInt]:
    """(k, cofactor) with beta = alpha^k * cofactor and alpha not dividing cofactor."""
    check_alpha(alpha)
    if not beta:
        raise ValueError("valuation of zero is infinite")
    k = 0
    while True:
        try:
            q = qi_exact_div(beta, alpha)
        except NotDivisible:
            return k, beta
        beta = q
        k += 1


def nu_alpha_mod(beta: QuadInt, alpha: QuadInt, precision: int) -> int | None:
    """nu_alpha(beta) from beta mod l^precision; None when it is >= precision.

    Valid because l^K = alpha^K * conj(alpha)^K, so alpha^j divides beta
    iff it divides any representative of beta mod l^K, for j <= K.
    """
    l = check_alpha(alpha)
    red = beta.mod(l**precision)
    if not red:
        return None
    k, _ = nu_alpha(red, alpha)
    return k if k < precision else None


def frobenius_from_trace(order: QuadOrder, t: int, q0: int) -> tuple[QuadInt, QuadInt]:
    """Both roots of z^2 - t z + q0 = 0 inside ``order``."""
    disc_f = t * t - 4 * q0
    if disc_f >= 0:
        raise NotInOrder(f"t^2 - 4q = {disc_f} is not negative")
    if disc_f % order.disc:
        raise NotInOrder(f"t^2 - 4q = {disc_f} is not a square multiple of {order.disc}")
    c2 = disc_f // order.disc
    c = math.isqrt(c2)
    if c * c != c2:
        raise NotInOrder(f"t^2 - 4q = {disc_f} is not a square multiple of {order.disc}")
    # z = (t + c sqrt(disc))/2; sqrt(disc) = 2w - 1 or 2w
    if order.half_integral:
        roots = (QuadInt((t - c) // 2, c, order), QuadInt((t + c) // 2, -c, order))
    else:
        roots = (QuadInt(t // 2, c, order), QuadInt(t // 2, -c, order))
    for z in roots:
        assert z.trace() == t and z.norm() == q0
    return roots


def delta_chain(pi: QuadInt, n_exp: int, l: int, depth: int, modulus: int | None = None) -> list[QuadInt]:
    """[delta_0, ..., delta_depth] with delta_0 = pi^n_exp and delta_{i+1} = delta_i^l."""
    out = [qi_pow(pi, n_exp, modulus)]
    for _ in range(depth):
        out.append(qi_pow(out[-1], l, modulus))
    return out


@dataclass
class ValLemmaReport:
    """nu_alpha(delta^e - 1) for e = 1..l.

    ``hypothesis`` is nu_alpha(delta - 1) >= 1, the standing assumption
    under which the valuation jumps by exactly one at e = l.
    """

    l: int
    valuations: list

    @property
    def base(self) -> int:
        return self.valuations[0]

    @property
    def hypothesis(self) -> bool:
        return self.base >= 1

    @property
    def holds(self) -> bool:
        v = self.valuations
        return all(x == v[0] for x in v[:-1]) and v[-1] == v[0] + 1

    def to_json(self) -> dict:
        return {"l": self.l, "valuations": self.valuations, "hypothesis": self.hypothesis, "holds": self.holds}


def check_val_lemma(delta: QuadInt, alpha: QuadInt, l: int, precision: int | None = None) -> ValLemmaReport:
    """Compute nu_alpha(delta^e - 1), e = 1..l.

    With ``precision`` the powers are taken in R / l^precision R, and the
    precision is doubled until every valuation is determined.
    """
    if check_alpha(alpha) != l:
        raise DegenerateAlpha(f"norm(alpha) = {alpha.norm()} but l = {l}")
    if precision is None:
        vals = []
        power = QuadInt(1, 0, delta.order)
        for _ in range(l):
            power = power * delta
            vals.append(nu_alpha(power - 1, alpha)[0])
        return ValLemmaReport(l, vals)
    K = precision
    while True:
        M = l**K
        d = delta.mod(M)
        power = QuadInt(1, 0, delta.order)
        vals = []
        for _ in range(l):
            power = (power * d).mod(M)
            v = nu_alpha_mod(power - 1, alpha, K)
            if v is None:
                break
            vals.append(v)
        if len(vals) == l:
            return ValLemmaReport(l, vals)
        K *= 2
