"""Fitting reciprocals of weighted fractional-power sums.

Walks through the scalar side of the package: build a function
1/(alpha*x**s + beta*x**t), fit it with the greedy barycentric algorithm,
inspect the pole/residue form, and check the interval rescaling identity.
"""

import numpy as np

from fracra import (
    FractionalSumFunction,
    eval_pf,
    fit_fractional_sum,
    normalize,
    scale_to_interval,
    sup_error,
)

np.set_printoptions(precision=3)


def describe(pf, label):
    audit = pf.pole_audit.as_dict()
    print(f"{label}: N={pf.degree} poles, fit error {pf.fit_error:.2e}")
    print(f"  audit: {audit}")
    if pf.degree:
        order = np.argsort(np.abs(pf.poles))
        print(f"  poles:    {pf.poles[order]}")
        print(f"  residues: {pf.residues[order]}")
    print(f"  c0 = {pf.c0:.6g}")


print("== the interface workhorse: 1/(x**-0.5 + x**0.5) ==")
f = FractionalSumFunction(1, 1, -0.5, 0.5, 1.0)
pf = fit_fractional_sum(f, 1e-12)
describe(pf, "sqrt pair")
grid = np.geomspace(1e-2, 1, 5000)
print(f"  sup deviation on a dense grid: {sup_error(pf, f, grid):.2e}")

print()
print("== degenerate corner: equal weights, s = t = 1 is just 1/(2x) ==")
pf = fit_fractional_sum(FractionalSumFunction(1, 1, 1, 1, 1.0), 1e-12)
describe(pf, "1/(2x)")

print()
print("== wildly unequal weights are handled by normalization ==")
g = FractionalSumFunction(1e-3, 1e2, 0.3, -0.7, 1.0)
norm = normalize(g)
print(f"  gamma = {norm.gamma:g}, leading weight = {norm.leading_weight:g}, "
      f"swapped = {norm.swapped}")
pf = fit_fractional_sum(g, 1e-12)
describe(pf, "normalized fit")

print()
print("== rescaling a unit-interval fit to (0, rho] ==")
pf = fit_fractional_sum(f, 1e-10)
rho = 1e6
scaled = scale_to_interval(pf, rho)
x = rho * np.array([1e-6, 1e-3, 0.5, 1.0])
lhs = eval_pf(scaled, x)
rhs = eval_pf(pf, x / rho)
print(f"  max |scaled(x) - original(x/rho)| = {np.max(np.abs(lhs - rhs)):.2e}")
