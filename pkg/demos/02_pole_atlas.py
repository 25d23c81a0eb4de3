"""Pole counts across the fractional exponent grid.

Runs a reduced sweep over (s, t) exponent pairs and weight combinations,
printing the largest pole count per exponent cell and the share of fits whose
poles are all real and nonpositive.  The full production sweep is available
as ``fracra sweep poles`` or :func:`fracra.pole_sweep`.
"""

import numpy as np

from fracra import pole_sweep

exponents = tuple(np.round(np.linspace(-1.0, 1.0, 6), 1))
alphas = (1e-6, 1.0)
betas = (1e-2, 1e2)

records = pole_sweep(tolerance=1e-12, exponents=exponents,
                     alphas=alphas, betas=betas)

print(f"{len(records)} fits over a {len(exponents)}x{len(exponents)} exponent "
      f"grid and {len(alphas) * len(betas)} weight pairs")
failures = [r for r in records if r.failure]
print(f"failures: {len(failures)}")
print(f"worst achieved error: {max(r.achieved_error for r in records):.2e}")
print()

print("max pole count per (s, t) cell:")
header = "  s\\t  " + "".join(f"{t:>6.1f}" for t in exponents)
print(header)
for s in exponents:
    row = [max(r.n_poles for r in records if r.s == s and r.t == t)
           for t in exponents]
    print(f"  {s:>4.1f} " + "".join(f"{n:>6d}" for n in row))

clean = sum(1 for r in records if r.all_real_nonpositive)
print()
print(f"fits with all poles real and nonpositive: {clean}/{len(records)} "
      f"({clean / len(records):.0%})")
print("cells with complex pairs sit where |t - s| > 1: there the underlying")
print("function itself has conjugate roots of x**s + gamma*x**t off the axis,")
print("and an accurate rational fit reproduces them.")
