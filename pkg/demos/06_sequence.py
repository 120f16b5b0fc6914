"""Irreducible sequence f_0, f_1, ... from the degree-17 map over F_83.

    python demos/06_sequence.py
"""

import time

from ecirr.sequence import SequenceParams, growth_diagnostic, run_detailed

from _data import f83_example

_, m, f0, _, d = f83_example()
print(f"f0 = {f0}, d = {d}")
print(f"growth check: {growth_diagnostic(83, 1, d, m.l)}")

print("\nGreedy smallest-degree choice keeps returning a cubic; run() notices and restarts:")
params = SequenceParams(m, d, selection="smallest-degree", verify_sub2=False)
res = run_detailed(f0, params, 2)
print(f"  abandoned first choice, degrees {res.attempts[0]}")
print(f"  after {res.state.retries} restart: degrees {res.degrees}")

print("\nDefault (largest-degree) selection, with every output checked irreducible:")
t = time.perf_counter()
res = run_detailed(f0, SequenceParams(m, d, k0=1), 3)
for i, f in enumerate(res.polys):
    print(f"  f_{i}: degree {f.degree:>5}  {f.fingerprint()}")
print(f"  switched to pure transforms at i = {res.switch_index}; {time.perf_counter() - t:.1f}s")
