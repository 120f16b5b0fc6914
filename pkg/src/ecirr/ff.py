"""Finite fields F_{p^n} presented as F_p[t]/(m(t)).

Elements live in numpy arrays of residues mod p.  For a prime field an
element is a scalar entry; for an extension of degree n it is a length-n
coefficient vector in the power basis of the modulus, so arrays of
elements carry a trailing axis of size n.  All vector kernels on
:class:`FieldCtx` broadcast over leading axes, which is what makes the
brute-force enumerations in ``curve`` and ``graph`` cheap.

:class:`FieldElem` wraps a single element for scalar code.

Coefficient lists are little-endian everywhere (index = degree).
"""

from __future__ import annotations

import functools
import itertools
import os

import numpy as np

from .errors import (
    ContextMismatch,
    DegreeMismatch,
    DivisionByZero,
    FieldTooLarge,
    NotPrime,
    ReducibleModulus,
)

DEFAULT_ENUM_CAP = 10**6

# int64 kernels are exact while sums of products stay below 2**63
_INT64_PRIME_LIMIT = 2**20


def enum_cap() -> int:
    """Largest field order that may be enumerated (env ``ECIRR_ENUM_CAP``)."""
    return int(os.environ.get("ECIRR_ENUM_CAP", DEFAULT_ENUM_CAP))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """The field F_p[t]/(modulus) of order p**n.

    The modulus is checked for irreducibility at construction unless
    ``check=False``.  Instances are immutable and hashable.
    """

    def __init__(self, p: int, n: int = 1, modulus=None, check: bool = True):
        p, n = int(p), int(n)
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if p == 2:
            raise NotPrime("characteristic 2 is not supported; p must be odd")
        if n < 1:
            raise DegreeMismatch("extension degree must be positive")
        if modulus is None:
            if n != 1:
                raise DegreeMismatch("extension fields need an explicit modulus")
            modulus = [0, 1]
        mod = [int(c) % p for c in modulus]
        while mod and mod[-1] == 0:
            mod.pop()
        if len(mod) - 1 != n:
            raise DegreeMismatch(f"modulus has degree {len(mod) - 1}, expected {n}")
        if mod[-1] != 1:
            raise DegreeMismatch("modulus must be monic")
        self.p = p
        self.n = n
        self.modulus = tuple(mod)
        self.order = p**n
        self.dtype = np.int64 if p < _INT64_PRIME_LIMIT else object
        if n > 1:
            if check:
                from .poly import Poly, is_irreducible

                base = FieldCtx(p)
                if not is_irreducible(Poly(base, mod)):
                    raise ReducibleModulus(f"modulus {mod} is reducible over F_{p}")
            self._tensor = self._mul_tensor()

    @classmethod
    def extension(cls, p: int, n: int) -> FieldCtx:
        """F_{p^n} with the lexicographically first monic irreducible modulus."""
        if n == 1:
            return cls(p)
        from .poly import first_irreducible

        return cls(p, n, first_irreducible(cls(p), n).to_list())

    def _mul_tensor(self):
        # T[i, j] = t^(i+j) mod m, as a coefficient vector
        n, p = self.n, self.p
        red = np.zeros((2 * n - 1, n), dtype=self.dtype)
        cur = [0] * n
        cur[0] = 1
        for k in range(2 * n - 1):
            red[k] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * m) % p for c, m in zip(cur, self.modulus)]
        T = np.zeros((n, n, n), dtype=self.dtype)
        for i in range(n):
            for j in range(n):
                T[i, j] = red[i + j]
        return T

    # identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.n == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.p}^{self.n}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldCtx:
        return cls(obj["p"], obj.get("n", 1), obj.get("modulus"))

    # vector kernels ---------------------------------------------------

    @property
    def elem_shape(self) -> tuple:
        return () if self.n == 1 else (self.n,)

    def zeros(self, *lead) -> np.ndarray:
        return np.zeros(tuple(lead) + self.elem_shape, dtype=self.dtype)

    def array(self, values) -> np.ndarray:
        """Reduce ``values`` into canonical residues in the context dtype."""
        return np.asarray(values, dtype=self.dtype) % self.p

    def one_vec(self) -> np.ndarray:
        v = self.zeros()
        if self.n == 1:
            return np.asarray(1, dtype=self.dtype)
        v[0] = 1
        return v

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        """Elementwise product with broadcasting over leading axes."""
        p = self.p
        if self.n == 1:
            return (a * b) % p
        a = np.asarray(a)
        b = np.asarray(b)
        raw = (a[..., :, None] * b[..., None, :]) % p
        return np.tensordot(raw, self._tensor, axes=([-2, -1], [0, 1])) % p

    def pow_vec(self, a, e: int):
        """Elementwise ``a**e`` by square-and-multiply (0**0 == 1)."""
        a = np.asarray(a)
        shape = a.shape[: a.ndim - len(self.elem_shape)]
        result = np.broadcast_to(self.one_vec(), shape + self.elem_shape).copy()
        base = a.copy()
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def is_zero_vec(self, a) -> np.ndarray:
        a = np.asarray(a)
        if self.n == 1:
            return a == 0
        return ~np.any(a != 0, axis=-1)

    def inv_vec(self, a):
        """Elementwise inverse; zero entries map to zero."""
        return self.pow_vec(a, self.order - 2)

    def chi_vec(self, a) -> np.ndarray:
        """Quadratic character (Euler's criterion) as int array in {-1, 0, 1}."""
        e = self.pow_vec(a, (self.order - 1) // 2)
        if self.n > 1:
            e = e[..., 0] + self.p * np.any(e[..., 1:] != 0, axis=-1)
        out = np.zeros(np.shape(e), dtype=np.int64)
        out[e == 1] = 1
        out[e == self.p - 1] = -1
        return out

    def conv(self, A, B):
        """Coefficient arrays of the product of two polynomials over this field."""
        p = self.p
        if len(A) == 0 or len(B) == 0:
            return self.zeros(0)
        if self.n == 1:
            return np.convolve(A, B) % p
        n = self.n
        L = len(A) + len(B) - 1
        raw = np.empty((L, n, n), dtype=self.dtype)
        for i in range(n):
            for j in range(n):
                raw[:, i, j] = np.convolve(A[:, i], B[:, j]) % p
        return np.tensordot(raw, self._tensor, axes=([1, 2], [0, 1])) % p

    # enumeration and encoding ----------------------------------------

    def check_enumerable(self):
        if self.order > enum_cap():
            raise FieldTooLarge(f"field of order {self.order} exceeds enumeration cap {enum_cap()}")

    def all_values(self) -> np.ndarray:
        """Every element, lexicographic in the coefficient vector (c_0 first)."""
        self.check_enumerable()
        idx = np.arange(self.order, dtype=np.int64)
        return self.decode(idx)

    def decode(self, idx):
        idx = np.asarray(idx, dtype=np.int64)
        if self.n == 1:
            return idx.astype(self.dtype)
        out = np.empty(idx.shape + (self.n,), dtype=self.dtype)
        for i in range(self.n):
            out[..., i] = (idx // self.p ** (self.n - 1 - i)) % self.p
        return out

    def encode(self, values) -> np.ndarray:
        """Inverse of :meth:`decode`: the lexicographic index of each element."""
        values = np.asarray(values)
        if self.n == 1:
            return values.astype(np.int64)
        weights = np.array([self.p ** (self.n - 1 - i) for i in range(self.n)], dtype=np.int64)
        return (values.astype(np.int64) * weights).sum(axis=-1)

    def enumerate(self):
        """Yield every element as a :class:`FieldElem`, lexicographic order."""
        self.check_enumerable()
        for c in itertools.product(range(self.p), repeat=self.n):
            yield FieldElem(self, c)

    # scalar helpers --------------------------------------------------

    def __call__(self, value) -> FieldElem:
        return self.elem(value)

    def elem(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ContextMismatch(f"{value!r} does not belong to {self!r}")
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, (int(value),) + (0,) * (self.n - 1))
        vals = [int(v) for v in np.ravel(value)]
        if len(vals) != self.n:
            raise DegreeMismatch(f"expected {self.n} coordinates, got {len(vals)}")
        return FieldElem(self, vals)

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.n)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.n - 1))

    def random_elem(self, rng: np.random.Generator) -> FieldElem:
        return FieldElem(self, [int(rng.integers(self.p)) for _ in range(self.n)])


class FieldElem:
    """A single element of a :class:`FieldCtx` (canonical coefficient tuple)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(int(c) % ctx.p for c in coeffs)

    @property
    def value(self):
        if self.ctx.n == 1:
            return self.ctx.dtype(self.coeffs[0]) if self.ctx.dtype is not object else self.coeffs[0]
        return np.array(self.coeffs, dtype=self.ctx.dtype)

    @classmethod
    def from_value(cls, ctx: FieldCtx, v) -> FieldElem:
        if ctx.n == 1:
            return cls(ctx, (int(v),))
        return cls(ctx, [int(c) for c in v])

    def _other(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatch("operands belong to different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.ctx.elem(int(other))
        return NotImplemented

    def _wrap(self, v) -> FieldElem:
        return FieldElem.from_value(self.ctx, v)

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, [(a + b) for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.ctx, [(a - b) for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return FieldElem(self.ctx, [-a for a in self.coeffs])

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.ctx.n == 1:
            return FieldElem(self.ctx, (self.coeffs[0] * o.coeffs[0],))
        return self._wrap(self.ctx.mul(self.value, o.value))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if not self:
            raise DivisionByZero("zero has no inverse")
        if self.ctx.n == 1:
            return FieldElem(self.ctx, (pow(self.coeffs[0], -1, self.ctx.p),))
        return self ** (self.ctx.order - 2)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        if self.ctx.n == 1:
            return FieldElem(self.ctx, (pow(self.coeffs[0], e, self.ctx.p),))
        return self._wrap(self.ctx.pow_vec(self.value, e))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.ctx.elem(int(other))
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __lt__(self, other: FieldElem):
        return self.coeffs < other.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __int__(self):
        if self.ctx.n != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.coeffs[0]

    def is_square(self) -> bool:
        return not self or (self ** ((self.ctx.order - 1) // 2)) == 1

    def to_json(self):
        return self.coeffs[0] if self.ctx.n == 1 else list(self.coeffs)

    def __repr__(self):
        if self.ctx.n == 1:
            return f"{self.coeffs[0]}"
        terms = [f"{c}" if i == 0 else f"{c}*t^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def field_make(p: int, n: int, modulus) -> FieldCtx:
    return FieldCtx(p, n, modulus)


@functools.lru_cache(maxsize=64)
def embedding_matrix(src: FieldCtx, dst: FieldCtx) -> np.ndarray:
    """Rows are theta**i for the canonical root theta of ``src.modulus`` in ``dst``.

    ``vec @ M % p`` then maps src coefficient vectors into dst.
    """
    if src.p != dst.p or dst.n % src.n:
        raise ContextMismatch(f"{src!r} does not embed in {dst!r}")
    M = np.zeros((src.n, dst.n), dtype=dst.dtype)
    if src.n == 1:
        M[0, 0] = 1
        return M
    if src == dst:
        return np.eye(src.n, dtype=dst.dtype)
    from .poly import Poly, roots

    theta = roots(Poly(dst, [dst.elem(c) for c in src.modulus]))[0]
    cur = dst.one
    for i in range(src.n):
        M[i] = cur.coeffs
        cur = cur * theta
    return M


def embed(values, src: FieldCtx, dst: FieldCtx):
    """Map an array of ``src`` elements into ``dst`` (same characteristic)."""
    if src == dst:
        return np.asarray(values)
    M = embedding_matrix(src, dst)
    v = np.asarray(values, dtype=dst.dtype)
    if src.n == 1:
        v = v[..., None]
    return (v @ M) % dst.p
