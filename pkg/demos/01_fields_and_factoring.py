"""Finite fields, polynomials and factorization.

    python demos/01_fields_and_factoring.py
"""

from ecirr.ff import FieldCtx
from ecirr.poly import Poly, factor, first_irreducible, is_irreducible

F = FieldCtx(83)
f0 = Poly(F, [-2, 3, 0, 1])
print(f"Over {F}: f0 = {f0}")
print(f"  coefficients normalise to {f0.to_list()}, irreducible: {is_irreducible(f0)}")

K = FieldCtx.extension(83, 3)
print(f"\nF_83^3 built from the first irreducible cubic: modulus {list(K.modulus)}")
t = K([0, 1, 0])
print(f"  t^(83^3) == t: {t ** K.order == t}   (Frobenius fixes the whole field)")

x = Poly.x(F)
g = (x**2 + 1) ** 2 * (x - 5) * first_irreducible(F, 4)
fac = factor(g)
print(f"\nfactor({g}):")
for h, e in fac.factors:
    print(f"  ({h})^{e}")
print(f"  reassembles exactly: {fac.expand() == g}")
