"""The r-transform g -> b^deg(g) g(a/b) and how its roots pull back.

f0 is irreducible over F_83, so its roots live in F_83^3; the roots of
f0^r are exactly the r-preimages of those roots.

    python demos/03_r_transform.py
"""

from ecirr.ff import FieldCtx, embed
from ecirr.poly import Poly, factor, roots
from ecirr.ratmap import map_eval, r_transform

from _data import f83_example

_, m, f0, _, d = f83_example()
g = r_transform(f0, m)
print(f"deg f0 = {f0.degree}, deg f0^r = {g.degree} = {m.l} * {f0.degree}, monic: {g.is_monic()}")
print(f"factor degrees of f0^r over F_83: {factor(g).degrees()}")

K = FieldCtx.extension(83, d)
lift = lambda h: Poly(K, embed(h.c, m.ctx, K), _raw=True)
mk = m.over(K)
base = roots(lift(f0))
pulled = roots(lift(g))
print(f"\nover F_83^{d}: f0 has {len(base)} roots, f0^r has {len(pulled)}")
images = {map_eval(mk, x) for x in pulled}
print(f"r maps the roots of f0^r into the roots of f0: {images <= set(base)}")
print(f"(only the degree-3 factor splits over F_83^{d}; the degree-6 factors need F_83^6)")
