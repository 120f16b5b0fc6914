"""Dense univariate polynomials over a :class:`~ecirr.ff.FieldCtx`.

A :class:`Poly` stores a little-endian numpy coefficient array in the
context's element layout (see ``ff``), trimmed so the last entry is
nonzero.  The zero polynomial has an empty array and degree -1.

Factorization is the classical pipeline: squarefree decomposition,
distinct-degree factorization, then Cantor-Zassenhaus equal-degree
splitting.  Powers x^(Q^k) mod f (Q the field order) come from a
Frobenius matrix once enough of them are needed, which keeps the
irreducibility test affordable in degree ~2000.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BothZero, ContextMismatch, DegreeZero, DivisionByZero, SplittingFailed
from .ff import FieldCtx, FieldElem, prime_factors

# Frobenius matrices above this degree would need too much memory
_MATRIX_DEGREE_LIMIT = 6000
EDF_RETRY_CAP = 64


def _trim(ctx: FieldCtx, c: np.ndarray) -> np.ndarray:
    if ctx.n == 1:
        nz = np.flatnonzero(c)
    else:
        nz = np.flatnonzero(np.any(c != 0, axis=-1)) if len(c) else np.array([], dtype=int)
    return c[: nz[-1] + 1] if len(nz) else c[:0]


class Poly:
    """Polynomial over a finite field; immutable."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs=(), _raw: bool = False):
        self.ctx = ctx
        if _raw:
            self.c = _trim(ctx, coeffs)
            return
        if isinstance(coeffs, np.ndarray) and coeffs.shape[1:] == ctx.elem_shape and coeffs.dtype != object:
            arr = coeffs.astype(ctx.dtype) % ctx.p
        else:
            arr = ctx.zeros(len(coeffs))
            for i, v in enumerate(coeffs):
                if isinstance(v, FieldElem):
                    if v.ctx != ctx:
                        raise ContextMismatch("coefficient from a different field")
                    arr[i] = v.value
                elif isinstance(v, (int, np.integer)):
                    arr[i] = ctx.elem(int(v)).value
                else:
                    arr[i] = ctx.elem(v).value
        self.c = _trim(ctx, arr)

    # constructors ----------------------------------------------------

    @classmethod
    def x(cls, ctx: FieldCtx) -> Poly:
        return cls(ctx, [0, 1])

    @classmethod
    def const(cls, ctx: FieldCtx, v) -> Poly:
        return cls(ctx, [v])

    @classmethod
    def monomial(cls, ctx: FieldCtx, k: int, coeff=1) -> Poly:
        return cls(ctx, [0] * k + [coeff])

    @classmethod
    def from_json(cls, ctx: FieldCtx, obj) -> Poly:
        return cls(ctx, obj)

    def _new(self, arr) -> Poly:
        return Poly(self.ctx, arr, _raw=True)

    # basic properties ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __len__(self):
        return len(self.c)

    def coeff(self, i: int) -> FieldElem:
        if i < 0 or i >= len(self.c):
            return self.ctx.zero
        return FieldElem.from_value(self.ctx, self.c[i])

    def lc(self) -> FieldElem:
        if not len(self.c):
            return self.ctx.zero
        return self.coeff(self.degree)

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def __bool__(self):
        return len(self.c) > 0

    def is_monic(self) -> bool:
        return bool(self) and self.lc() == 1

    def is_one(self) -> bool:
        return self.degree == 0 and self.lc() == 1

    def monic(self) -> Poly:
        if not self:
            return self
        lc = self.lc()
        if lc == 1:
            return self
        return self * lc.inverse()

    def to_list(self) -> list:
        if self.ctx.n == 1:
            return [int(v) for v in self.c]
        return [[int(x) for x in v] for v in self.c]

    to_json = to_list

    def sort_key(self) -> tuple:
        """Canonical order: degree, then little-endian coefficients."""
        return (self.degree, tuple(np.ravel(self.c).tolist()))

    def fingerprint(self) -> str:
        h = hashlib.sha256(repr((self.ctx.p, self.ctx.modulus, self.to_list())).encode())
        return h.hexdigest()[:16]

    def __repr__(self):
        if not self:
            return "0"
        if self.degree > 12:
            return f"<Poly deg={self.degree} over F_{self.ctx.p}^{self.ctx.n} #{self.fingerprint()}>"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if not c:
                continue
            cs = repr(c) if self.ctx.n == 1 else f"({c!r})"
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(cs + ("*" + mono if mono else ""))
        return " + ".join(terms)

    # arithmetic ------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ContextMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, np.integer, FieldElem)):
            return Poly(self.ctx, [other])
        return NotImplemented

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Poly) else other
        if o is NotImplemented:
            return NotImplemented
        return self.ctx == o.ctx and self.c.shape == o.c.shape and bool(np.all(self.c == o.c))

    def __hash__(self):
        return hash((self.ctx, tuple(np.ravel(self.c).tolist())))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] = (out[: len(b)] + b) % self.ctx.p
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new((-self.c) % self.ctx.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, FieldElem)):
            s = self.ctx.elem(other)
            return self._new(self.ctx.mul(self.c, s.value))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._new(self.ctx.conv(self.c, o.c))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            raise ValueError("negative exponent")
        result = Poly.const(self.ctx, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        q, r = _divrem(self.ctx, self.c, o.c)
        return self._new(q), self._new(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> Poly:
        if self.degree < 1:
            return Poly(self.ctx)
        k = np.arange(1, len(self.c), dtype=self.ctx.dtype) % self.ctx.p
        if self.ctx.n > 1:
            k = k[:, None]
        return self._new((self.c[1:] * k) % self.ctx.p)

    def __call__(self, x):
        """Evaluate at a field element (Horner)."""
        x = self.ctx.elem(x)
        acc = self.ctx.zero
        for i in range(self.degree, -1, -1):
            acc = acc * x + self.coeff(i)
        return acc

    def eval_values(self, values) -> np.ndarray:
        """Vectorised Horner evaluation at an array of elements of ``self.ctx``."""
        ctx = self.ctx
        values = np.asarray(values)
        acc = np.zeros_like(values)
        for i in range(self.degree, -1, -1):
            acc = ctx.add(ctx.mul(acc, values), self.c[i])
        return acc


def _divrem(ctx: FieldCtx, A: np.ndarray, B: np.ndarray):
    if len(B) == 0:
        raise DivisionByZero("polynomial division by zero")
    db = len(B) - 1
    if len(A) < len(B):
        return ctx.zeros(0), A.copy()
    p = ctx.p
    R = A.copy()
    Q = ctx.zeros(len(A) - db)
    if ctx.n == 1:
        inv = pow(int(B[-1]), -1, p)
        Bn = (B * inv) % p
        for k in range(len(A) - len(B), -1, -1):
            c = R[k + db]
            if c:
                Q[k] = c
                R[k : k + db + 1] = (R[k : k + db + 1] - c * Bn) % p
        Q = (Q * inv) % p
    else:
        inv = ctx.inv_vec(B[-1])
        for k in range(len(A) - len(B), -1, -1):
            c = R[k + db]
            if np.any(c != 0):
                c = ctx.mul(c, inv)
                Q[k] = c
                R[k : k + db + 1] = ctx.sub(R[k : k + db + 1], ctx.mul(c, B))
    return Q, _trim(ctx, R[:db])


class _Reducer:
    """Barrett reduction modulo a fixed polynomial m of degree d >= 1.

    Valid for inputs of degree < 2d, i.e. products of two residues.
    """

    def __init__(self, m: Poly):
        self.m = m
        self.ctx = m.ctx
        self.d = m.degree
        self.inv = _series_inverse(self.ctx, m.c[::-1], self.d)

    def reduce(self, A: np.ndarray) -> np.ndarray:
        ctx, d = self.ctx, self.d
        L = len(A)
        if L <= d:
            return A
        if L > 2 * d:
            return _divrem(ctx, A, self.m.c)[1]
        k = L - d
        qrev = ctx.conv(A[::-1][:k], self.inv[:k])[:k]
        Q = qrev[::-1]
        R = ctx.sub(A[:d], ctx.conv(Q, self.m.c)[:d])
        return _trim(ctx, R)

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(self.ctx.conv(a, b))

    def powmod(self, a: np.ndarray, e: int) -> np.ndarray:
        ctx = self.ctx
        result = _trim(ctx, ctx.one_vec()[None].copy()) if self.d > 0 else ctx.zeros(0)
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mulmod(result, base)
            e >>= 1
            if e:
                base = self.mulmod(base, base)
        return result


def _series_inverse(ctx: FieldCtx, h: np.ndarray, K: int) -> np.ndarray:
    """g with h*g = 1 mod x^K (h[0] invertible), by Newton iteration."""
    g = ctx.inv_vec(h[0])[None].copy()
    prec = 1
    while prec < K:
        prec = min(2 * prec, K)
        hg = ctx.conv(h[:prec], g)[:prec]
        corr = ctx.neg(hg)
        corr[0] = ctx.add(corr[0], 2 * ctx.one_vec() % ctx.p)
        g = ctx.conv(g, corr)[:prec]
    if len(g) < K:
        g = np.concatenate([g, ctx.zeros(K - len(g))])
    return g


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def poly_divrem(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    return divmod(f, g)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; raises :class:`BothZero` for gcd(0, 0)."""
    if f.ctx != g.ctx:
        raise ContextMismatch("polynomials over different fields")
    if not f and not g:
        raise BothZero("gcd(0, 0) is undefined")
    ctx = f.ctx
    a, b = f.c, g.c
    while len(b):
        a, b = b, _divrem(ctx, a, b)[1]
    return Poly(ctx, a, _raw=True).monic()


gcd = poly_gcd


def poly_powmod(f: Poly, e: int, m: Poly) -> Poly:
    """``f**e mod m`` by square-and-multiply."""
    if not m:
        raise DivisionByZero("modulus is zero")
    if m.degree < 1:
        raise DivisionByZero("modulus must have positive degree")
    if e < 0:
        raise ValueError("negative exponent")
    red = _Reducer(m)
    return Poly(f.ctx, red.powmod(f.c, int(e)), _raw=True)


class FrobeniusPowers:
    """Successive x^(Q^k) mod f for k = 1, 2, ... (Q = field order).

    Starts by plain powering and switches to a Frobenius matrix once that
    amortises (g -> g^Q is F_Q-linear on F_Q[x]/(f)).
    """

    def __init__(self, f: Poly):
        self.f = f
        self.ctx = f.ctx
        self.N = f.degree
        self.red = _Reducer(f)
        self.cur = self.red.reduce(Poly.x(self.ctx).c)
        self.k = 0
        self.M = None
        bits = max(1, self.ctx.order.bit_length())
        self._switch = max(1, self.N // bits)
        self._float = None

    def _build_matrix(self):
        ctx, N = self.ctx, self.N
        h = self.red.powmod(Poly.x(ctx).c, ctx.order)
        M = ctx.zeros(N, N)
        row = ctx.one_vec()[None].copy()
        for j in range(N):
            M[j, : len(row)] = row
            row = self.red.mulmod(row, h)
        self.M = M
        # float64 BLAS is exact while every dot product stays below 2**53
        if ctx.n == 1 and ctx.dtype is not object and N * (ctx.p - 1) ** 2 < 2**53:
            self._float = M.astype(np.float64)

    def _apply(self, v: np.ndarray) -> np.ndarray:
        ctx, N = self.ctx, self.N
        full = ctx.zeros(N)
        full[: len(v)] = v
        if ctx.n == 1:
            if self._float is not None:
                out = np.rint(full.astype(np.float64) @ self._float).astype(np.int64) % ctx.p
            else:
                out = (full @ self.M) % ctx.p
        else:
            raw = np.einsum("ja,jkb->kab", full, self.M) % ctx.p
            out = np.tensordot(raw, ctx._tensor, axes=([1, 2], [0, 1])) % ctx.p
        return _trim(ctx, out)

    def next(self) -> Poly:
        if self.M is None and self.N <= _MATRIX_DEGREE_LIMIT and self.k >= self._switch:
            self._build_matrix()
        if self.M is not None:
            self.cur = self._apply(self.cur)
        else:
            self.cur = self.red.powmod(self.cur, self.ctx.order)
        self.k += 1
        return Poly(self.ctx, self.cur, _raw=True)


def is_irreducible(f: Poly) -> bool:
    """Rabin's test over F_Q: x^(Q^N) = x mod f and gcd(x^(Q^(N/l)) - x, f) = 1."""
    N = f.degree
    if N < 1:
        raise DegreeZero("irreducibility needs positive degree")
    if N == 1:
        return True
    f = f.monic()
    x = Poly.x(f.ctx)
    checkpoints = {N // ell for ell in prime_factors(N)}
    frob = FrobeniusPowers(f)
    for k in range(1, N + 1):
        h = frob.next()
        if k in checkpoints:
            if not poly_gcd(f, h - x).is_one():
                return False
        if k < N and h == x:
            # some root lies in a proper subfield
            return False
    return h == x


@dataclass
class Factorization:
    """unit * prod(factor**mult) with monic irreducible factors in canonical order."""

    unit: FieldElem
    factors: list

    def expand(self) -> Poly:
        ctx = self.unit.ctx
        out = Poly.const(ctx, self.unit)
        for g, e in self.factors:
            out = out * g**e
        return out

    def degrees(self) -> list[int]:
        return [g.degree for g, _ in self.factors]

    def distinct(self) -> list[Poly]:
        return [g for g, _ in self.factors]

    def to_json(self) -> dict:
        return {
            "unit": self.unit.to_json(),
            "factors": [{"poly": g.to_list(), "multiplicity": e} for g, e in self.factors],
        }


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g_i, i) with f/lc(f) = prod g_i**i and each g_i squarefree."""
    f = f.monic()
    out = []
    fp = f.derivative()
    c = poly_gcd(f, fp) if fp else f
    w = f // c
    i = 1
    while not w.is_one():
        y = poly_gcd(w, c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        i += 1
        w = y
        c = c // y
    if not c.is_one():
        c = _pth_root(c)
        for g, e in squarefree_decomposition(c):
            out.append((g, e * f.ctx.p))
    return out


def _pth_root(f: Poly) -> Poly:
    # f' = 0 so only exponents divisible by p occur; c^(1/p) = c^(Q/p)
    ctx = f.ctx
    p = ctx.p
    coeffs = f.c[::p]
    if ctx.n > 1:
        coeffs = ctx.pow_vec(coeffs, ctx.order // p)
    return Poly(ctx, coeffs, _raw=True)


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f: pairs (g_k, k), g_k the product of all degree-k factors."""
    out = []
    fstar = f
    x = Poly.x(f.ctx)
    frob = FrobeniusPowers(f)
    k = 0
    while 2 * (k + 1) <= fstar.degree:
        k += 1
        h = frob.next()
        g = poly_gcd(fstar, (h - x) % fstar)
        if g.degree > 0:
            out.append((g, k))
            fstar = fstar // g
    if fstar.degree > 0:
        out.append((fstar, fstar.degree))
    return out


def _random_poly(ctx: FieldCtx, deg_below: int, rng: np.random.Generator) -> Poly:
    shape = (deg_below,) + ctx.elem_shape
    return Poly(ctx, rng.integers(0, ctx.p, size=shape).astype(ctx.dtype), _raw=True)


def equal_degree(g: Poly, k: int, rng: np.random.Generator) -> list[Poly]:
    """Split squarefree monic g whose irreducible factors all have degree k."""
    if g.degree == k:
        return [g]
    ctx = g.ctx
    e = (ctx.order**k - 1) // 2
    red = _Reducer(g)
    for _ in range(EDF_RETRY_CAP):
        a = _random_poly(ctx, g.degree, rng)
        if a.degree < 1:
            continue
        d = poly_gcd(a, g)
        if 0 < d.degree < g.degree:
            return equal_degree(d, k, rng) + equal_degree(g // d, k, rng)
        b = Poly(ctx, red.powmod(a.c, e), _raw=True)
        d = poly_gcd(b - 1, g)
        if 0 < d.degree < g.degree:
            return equal_degree(d, k, rng) + equal_degree(g // d, k, rng)
    raise SplittingFailed(f"no split of a degree-{g.degree} polynomial after {EDF_RETRY_CAP} attempts")


def factor(f: Poly, seed: int = 0) -> Factorization:
    """Complete factorization into monic irreducibles, canonically sorted.

    The seed only drives the Las Vegas splitting; output does not depend on it.
    """
    if f.degree < 1:
        raise DegreeZero("factor needs positive degree")
    rng = np.random.default_rng(seed)
    mult: dict[Poly, int] = {}
    for g, e in squarefree_decomposition(f):
        for h, k in distinct_degree(g):
            for irr in equal_degree(h, k, rng):
                mult[irr] = mult.get(irr, 0) + e
    factors = sorted(mult.items(), key=lambda t: t[0].sort_key())
    return Factorization(f.lc(), factors)


def roots(f: Poly, seed: int = 0) -> list[FieldElem]:
    """Distinct roots in the coefficient field, in canonical order."""
    fac = factor(f, seed)
    return sorted(-g.coeff(0) for g, _ in fac.factors if g.degree == 1)


def first_irreducible(ctx: FieldCtx, n: int) -> Poly:
    """The first monic irreducible of degree n in lexicographic coefficient order."""
    # c_0 is the most significant digit; c_0 = 0 means x | f when n > 1
    heads = range(ctx.p) if n == 1 else range(1, ctx.p)
    for head in heads:
        for rest in itertools.product(range(ctx.p), repeat=n - 1):
            f = Poly(ctx, [head, *rest, 1])
            if is_irreducible(f):
                return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def monic_polys(ctx: FieldCtx, n: int):
    """All monic polynomials of degree n, lexicographic in (c_0, ..., c_{n-1})."""
    if ctx.n == 1:
        for tail in itertools.product(range(ctx.p), repeat=n):
            yield Poly(ctx, list(tail) + [1])
        return
    one = ctx.one_vec()
    for idx in itertools.product(range(ctx.order), repeat=n):
        yield Poly(ctx, np.concatenate([ctx.decode(np.array(idx)), one[None]]), _raw=True)
