"""Frobenius in the CM order and the alpha-adic valuations that control tree depth.

    python demos/04_valuations.py
"""

from ecirr.quadorder import check_val_lemma, delta_chain, frobenius_from_trace, nu_alpha

from _data import f83_example

_, m, _, alpha, d = f83_example()
R = alpha.order
pi, pib = frobenius_from_trace(R, 16, 83)
print(f"Order of discriminant {R.disc}; Frobenius roots {pi} and {pib} (norm 83, trace 16)")
print(f"alpha = {alpha}, norm {alpha.norm()}; pi - 1 = {pi - 1} = 2 * alpha")

for name, z in (("pi", pi), ("conj(pi)", pib)):
    k, _ = nu_alpha(z ** (2 * d) - 1, alpha)
    print(f"  nu_alpha({name}^{2 * d} - 1) = {k}")

print("\nValuations nu(delta^e - 1), e = 1..17, along delta_{i+1} = delta_i^17 (computed mod 17^16):")
for i, delta in enumerate(delta_chain(pi, 2 * d, 17, 3, modulus=17**16)):
    rep = check_val_lemma(delta, alpha, 17, precision=8)
    print(f"  i={i}: {rep.valuations}  jump at e=17: {rep.holds}")
