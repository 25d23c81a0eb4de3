"""Shifted-solve realization of a partial fraction acting on a pencil.

An operator built from the form c0 + sum(c_i / (x - p_i)) maps a residual r to

    z = c0 * M^{-1} r + sum_i c_i * (A - p_i M)^{-1} r,

which applies the reciprocal symbol of the pencil through one sparse solve per
pole.  For symmetric positive pencils and nonpositive real poles each shifted
matrix is SPD, which the direct backend verifies through a no-pivoting
symmetric factorization.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from . import krylov

__all__ = [
    "FactorizationError",
    "InnerSolveError",
    "RationalOperator",
    "SpdAuditReport",
    "spd_audit",
]


class FactorizationError(RuntimeError):
    """A shifted matrix could not be factorized (or is not SPD where required)."""


class InnerSolveError(RuntimeError):
    """An inner iterative solve failed to reach its tolerance."""


class _DirectSolver:
    """Sparse LU solver; in SPD mode the factorization doubles as an SPD check."""

    def __init__(self, matrix, label, expect_spd):
        try:
            if expect_spd:
                # No row pivoting in symmetric mode emulates a Cholesky
                # factorization; positive U pivots certify definiteness.
                self._lu = splu(
                    matrix,
                    diag_pivot_thresh=0.0,
                    permc_spec="MMD_AT_PLUS_A",
                    options={"SymmetricMode": True},
                )
                pivots = self._lu.U.diagonal()
                if np.any(pivots.real <= 0.0):
                    raise FactorizationError(
                        f"shifted matrix for {label} is not positive definite"
                    )
            else:
                self._lu = splu(matrix)
        except FactorizationError:
            raise
        except RuntimeError as exc:
            raise FactorizationError(f"factorization failed for {label}: {exc}") from exc

    def solve(self, rhs):
        return self._lu.solve(rhs)


class _CgSolver:
    """Diagonally preconditioned conjugate gradient solver for an SPD shift."""

    def __init__(self, matrix, label, rtol, max_iter):
        self._matrix = matrix.tocsr()
        diag = self._matrix.diagonal()
        if np.any(diag <= 0):
            raise FactorizationError(f"nonpositive diagonal in shifted matrix for {label}")
        self._inv_diag = 1.0 / diag
        self._label = label
        self._rtol = rtol
        self._max_iter = max_iter
        self.iterations_total = 0

    def solve(self, rhs):
        x, report = krylov.pcg(
            self._matrix,
            lambda v: self._inv_diag * v,
            rhs,
            tol=self._rtol,
            max_iter=self._max_iter,
            stop="rel",
        )
        if not report.converged:
            raise InnerSolveError(
                f"inner cg for {self._label} stalled at residual "
                f"{report.preconditioned_residual_history[-1]:.3e}"
            )
        self.iterations_total += report.iterations
        return x


class RationalOperator:
    """Applies a partial fraction to a pencil via cached shifted solves.

    Conjugate pole pairs share one complex factorization; the pair contributes
    2*Re(c*w) so the output stays real.  Contributions are accumulated in
    ascending |pole| order, which makes repeated applies bitwise reproducible.

    The ``backend`` is "direct" (sparse factorization per shift, the default)
    or "cg" (diagonally preconditioned conjugate gradients for the real SPD
    shifts; complex shifts and positive poles stay direct).  A built operator
    is immutable apart from its telemetry counters, so concurrent applies are
    safe when the telemetry is not needed.
    """

    def __init__(self, pf, pencil, backend="direct", inner_tol=1e-10, inner_max_iter=5000):
        if backend not in ("direct", "cg"):
            raise ValueError(f"unknown backend {backend!r}")
        self.pf = pf
        self.pencil = pencil
        self.backend = backend
        A = pencil.A.tocsr()
        M = pencil.M.tocsr()
        self._M = M
        self.apply_count = 0

        units = []
        for k in pf._real_idx:
            units.append(("real", pf.poles[k].real, pf.residues[k].real))
        for k in pf._pair_idx:
            units.append(("pair", pf.poles[k], pf.residues[k]))
        units.sort(key=lambda u: (abs(u[1]), u[1].real, abs(u[1].imag)))

        self._mass_solver = _DirectSolver(M.tocsc(), "mass matrix", expect_spd=True)
        self._terms = []
        for kind, pole, residue in units:
            label = f"pole {pole:.6e}"
            if kind == "real":
                shifted = (A - pole * M).tocsc()
                if pole > 0:
                    warnings.warn(
                        f"positive pole {pole:.3e}: shifted matrix may be indefinite, "
                        "solving it directly",
                        RuntimeWarning,
                    )
                    solver = _DirectSolver(shifted, label, expect_spd=False)
                elif backend == "cg":
                    solver = _CgSolver(shifted, label, inner_tol, inner_max_iter)
                else:
                    solver = _DirectSolver(shifted, label, expect_spd=True)
            else:
                shifted = (A.astype(complex) - pole * M).tocsc()
                solver = _DirectSolver(shifted, label, expect_spd=False)
            self._terms.append((kind, pole, residue, solver))
        self.shift_seconds = np.zeros(len(self._terms) + 1)

    @property
    def n(self):
        return self.pencil.n_c

    @property
    def n_poles(self):
        return self.pf.degree

    @property
    def solves_per_apply(self):
        """Mass solve plus one solve per real pole or conjugate pair."""
        return 1 + len(self._terms)

    def apply(self, r):
        """z = c0 M^{-1} r + sum_i c_i (A - p_i M)^{-1} r, real output."""
        r = np.asarray(r, dtype=float)
        if r.shape != (self.n,):
            raise ValueError(f"expected a vector of length {self.n}")
        tic = time.perf_counter()
        if self.pf.c0 != 0.0:
            z = self.pf.c0 * self._mass_solver.solve(r)
        else:
            z = np.zeros_like(r)
        self.shift_seconds[0] += time.perf_counter() - tic
        for k, (kind, _pole, residue, solver) in enumerate(self._terms):
            tic = time.perf_counter()
            if kind == "real":
                z = z + residue * solver.solve(r)
            else:
                w = solver.solve(r.astype(complex))
                z = z + 2.0 * np.real(residue * w)
            self.shift_seconds[k + 1] += time.perf_counter() - tic
        self.apply_count += 1
        return z

    @property
    def telemetry(self):
        return {
            "apply_count": self.apply_count,
            "solves_per_apply": self.solves_per_apply,
            "shift_seconds": self.shift_seconds.tolist(),
        }


@dataclass(frozen=True)
class SpdAuditReport:
    """Random-probe estimates of definiteness and symmetry of the realized map."""

    min_rayleigh: float
    max_symmetry_defect: float
    trials: int

    @property
    def positive_definite(self):
        return self.min_rayleigh > 0


def spd_audit(operator, trials, seed=0):
    """Probe the operator with random vector pairs.

    Reports the smallest Rayleigh quotient <z, r> / <r, r> over the trials and
    the largest relative symmetry defect |<apply(r), q> - <r, apply(q)>|.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    n = operator.n
    min_ray = np.inf
    defect = 0.0
    for _ in range(trials):
        r = rng.standard_normal(n)
        q = rng.standard_normal(n)
        zr = operator.apply(r)
        zq = operator.apply(q)
        min_ray = min(min_ray, float(zr @ r) / float(r @ r))
        scale = np.linalg.norm(zr) * np.linalg.norm(q) + np.linalg.norm(zq) * np.linalg.norm(r)
        defect = max(defect, abs(float(zr @ q) - float(r @ zq)) / max(scale, np.finfo(float).tiny))
    return SpdAuditReport(float(min_ray), float(defect), trials)
