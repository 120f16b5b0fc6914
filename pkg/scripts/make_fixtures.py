"""Search small CM curves for degree-3/5 endomorphisms and write test fixtures.

Development tool, not part of the library: endomorphisms are inputs to
ecirr, and this script is how the shipped ones were produced.

For each class-number-one discriminant D with a split prime l = norm(alpha),
it reduces the CM j-invariant mod p, picks the curve or its twist whose
group order is divisible by l with cyclic l-part, takes the unique
rational subgroup of order l as kernel, and applies Velu's formulas.  The quotient
curve is isomorphic to E, so rescaling x gives the x-map of an endomorphism.
alpha is fixed as the norm-l element dividing pi - 1, where pi is the first
Frobenius root returned by frobenius_from_trace.

    python scripts/make_fixtures.py --list        # show candidates
    python scripts/make_fixtures.py --write       # regenerate shipped fixtures
"""

import argparse
import json
from pathlib import Path

import numpy as np

from ecirr.curve import IDENTITY, Curve, count_points, random_point, scalar_mul, verify_endomorphism
from ecirr.ff import FieldCtx, is_prime
from ecirr.poly import Poly, first_irreducible
from ecirr.quadorder import QuadOrder, divides, frobenius_from_trace, nu_alpha
from ecirr.ratmap import RationalMap

CM_J = {-2: 8000, -11: -32768, -19: -884736}

OUT = Path(__file__).resolve().parents[1] / "src" / "ecirr" / "data" / "fixtures"

# (name, D, l, p, d, k0) picked from --list output: cyclic l-part of E(F_p),
# p^(2d) = 1 mod l so both Frobenius conjugates meet the valuation hypothesis,
# and a spread of k0 values.
CHOSEN = [
    ("d2_l3_p11", -2, 3, 11, 1, 2),
    ("d11_l3_p47", -11, 3, 47, 1, 2),
    ("d2_l3_p59", -2, 3, 59, 1, 3),
    ("d11_l3_p311", -11, 3, 311, 1, 4),
    ("d11_l5_p59", -11, 5, 59, 1, 2),
    ("d19_l5_p17", -19, 5, 17, 2, 2),
    ("d11_l5_p389", -11, 5, 389, 1, 3),
]


def kronecker(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def cm_curves(j, p):
    F = FieldCtx(p)
    k = F(1728 - j)
    jj = F(j)
    A, B = 3 * jj * k, 2 * jj * k * k
    E = Curve(F, A, B)
    # quadratic twist by a non-square
    z = next(F(c) for c in range(2, p) if kronecker(c, p) == -1)
    Et = Curve(F, A * z * z, B * z * z * z)
    return E, Et


def velu(E, kernel):
    """x-map of E -> E/<kernel> and the quotient's (A', B'); kernel holds one point per +-pair."""
    F = E.ctx
    X = Poly.x(F)
    psi = Poly.const(F, 1)
    for Q in kernel:
        psi = psi * (X - Q.x)
    num = X * psi * psi
    v = w = F.zero
    for Q in kernel:
        vQ = 6 * Q.x * Q.x + 2 * E.A
        uQ = 4 * E.rhs(Q.x)
        cof = psi // (X - Q.x)
        num = num + cof * psi * vQ + cof * cof * uQ
        v = v + vQ
        w = w + uQ + Q.x * vQ
    return num, psi * psi, E.A - 5 * v, E.B - 7 * w


def endomorphism(E, l, N, rng):
    while True:
        P = scalar_mul(E, N // l, random_point(E, rng))
        if P is not IDENTITY:
            break
    kernel = [scalar_mul(E, k, P) for k in range(1, (l - 1) // 2 + 1)]
    num, den, A2, B2 = velu(E, kernel)
    s = E.B * A2 / (B2 * E.A)
    if s * s * A2 != E.A or s * s * s * B2 != E.B:
        return None
    return RationalMap.make(num * s, den, l)


def candidates(D, l, primes, d_values=(1, 2), seed=1):
    R = QuadOrder(D)
    alphas = [z for z in R.elements_of_norm(l)]
    for p in primes:
        if kronecker(R.disc, p) != 1 or (CM_J[D] % p) in (0, 1728 % p):
            continue
        for E in cm_curves(CM_J[D], p):
            N = count_points(E).count
            if N % l:
                continue
            t = p + 1 - N
            pis = frobenius_from_trace(R, t, p)
            alpha = next((a for a in alphas if divides(a, pis[0] - 1)), None)
            # a cyclic l-part makes the rational kernel of order l unique
            if alpha is None or divides(alpha.conj(), pis[0] - 1):
                continue
            rng = np.random.default_rng(seed)
            m = endomorphism(E, l, N, rng)
            if m is None or not verify_endomorphism(E, m).passed:
                continue
            for d in d_values:
                if p ** (2 * d) > 2 * 10**5:
                    continue
                k0 = nu_alpha(pis[0] ** (2 * d) - 1, alpha)[0]
                both = pow(p, 2 * d, l) == 1
                yield dict(D=D, l=l, p=p, d=d, N=N, t=t, k0=k0, both=both, E=E, m=m, alpha=alpha)


def fixture_json(name, c):
    E, m, d = c["E"], c["m"], c["d"]
    f0 = first_irreducible(E.ctx, d)
    return {
        "name": name,
        "curve": E.to_json(),
        "map": m.to_json(),
        "alpha": c["alpha"].to_json(),
        "d": d,
        "k0": c["k0"],
        "f0": f0.to_list(),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--list", action="store_true")
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args()
    primes = [p for p in range(7, 450) if is_prime(p)]
    if args.list:
        for D, l in [(-11, 3), (-2, 3), (-19, 5), (-11, 5)]:
            for c in candidates(D, l, primes):
                print(f"D={c['D']} l={c['l']} p={c['p']} d={c['d']} N={c['N']} t={c['t']} "
                      f"k0={c['k0']} both={c['both']} A={c['E'].A} B={c['E'].B}")
    if args.write:
        OUT.mkdir(parents=True, exist_ok=True)
        for name, D, l, p, d, k0 in CHOSEN:
            c = next(c for c in candidates(D, l, [p], d_values=(d,)) if c["k0"] == k0)
            (OUT / f"{name}.json").write_text(json.dumps(fixture_json(name, c), indent=1) + "\n")
            print("wrote", name, "k0 =", c["k0"])


if __name__ == "__main__":
    main()
