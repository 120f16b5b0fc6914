"""Point counting and checking that a rational map is an endomorphism's x-part.

    python demos/02_curves_and_endomorphisms.py
"""

from ecirr.curve import count_points, is_ordinary, verify_endomorphism
from ecirr.poly import Poly
from ecirr.ratmap import RationalMap

from _data import f83_example

curve, m, _, _, _ = f83_example()
data = count_points(curve)
print(curve)
print(f"  #E = {data.count}, trace t = {data.trace}, ordinary: {is_ordinary(curve)}")

print(f"\nDegree-{m.l} map r = a/b (a normalised to monic; scalar {m.unit!r} moved into b)")
rep = verify_endomorphism(curve, m)
print(f"  mode {rep.mode}, fields {rep.fields_checked}")
print(f"  x-compatible {rep.x_compatible}, character preserved {rep.character_ok}, "
      f"additive on {rep.additive_pairs} pairs {rep.additive_ok}  ->  passed {rep.passed}")

bad = RationalMap.make(m.a, m.b + Poly.monomial(m.ctx, 4))
rep = verify_endomorphism(curve, bad)
print(f"\nSame map with b perturbed by x^4: passed {rep.passed}")
for line in rep.failures[:3]:
    print(f"  {line}")
