"""Preconditioned conjugate gradient and minimal residual iterations.

Both solvers start from a zero initial guess, track the preconditioned
residual norm sqrt(<r, P r>), and stop when it drops below the tolerance,
either absolutely (the default) or relative to its initial value.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

__all__ = [
    "CurvatureBreakdownError",
    "IndefinitePreconditionerError",
    "SolveReport",
    "pcg",
    "minres",
]


class CurvatureBreakdownError(RuntimeError):
    """Conjugate gradients met a nonpositive curvature direction: the operator is indefinite."""


class IndefinitePreconditionerError(RuntimeError):
    """The preconditioner produced a negative inner product and cannot define a norm."""


@dataclass
class SolveReport:
    """Iteration record of one Krylov solve."""

    iterations: int
    converged: bool
    preconditioned_residual_history: list
    wall_time: float
    inner_solve_total: int
    method: str = ""

    def to_dict(self):
        return {
            "schema": "fracra.solve_report/1",
            "method": self.method,
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "preconditioned_residual_history": [
                float(v) for v in self.preconditioned_residual_history
            ],
            "wall_time": float(self.wall_time),
            "inner_solve_total": int(self.inner_solve_total),
        }

    def csv_row(self):
        final = self.preconditioned_residual_history[-1]
        return [self.method, self.iterations, self.converged, final,
                self.wall_time, self.inner_solve_total]


def _as_matvec(op):
    if op is None:
        return None
    if hasattr(op, "apply") and callable(op.apply):
        return op.apply
    if sp.issparse(op) or isinstance(op, np.ndarray):
        return lambda v: op @ v
    if callable(op):
        return op
    raise TypeError(f"cannot interpret {type(op).__name__} as a linear operator")


def _check_stop(tol, max_iter, stop):
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if stop not in ("abs", "rel"):
        raise ValueError("stop must be 'abs' or 'rel'")


def pcg(system, precond, b, tol=1e-10, max_iter=500, stop="abs"):
    """Preconditioned conjugate gradients from a zero initial guess.

    ``system`` and ``precond`` may be arrays, sparse matrices, callables, or
    objects with an ``apply`` method; ``precond=None`` means no
    preconditioning.  Returns ``(x, SolveReport)``.  A nonpositive curvature
    direction raises CurvatureBreakdownError; exceeding ``max_iter`` returns
    with ``converged=False``.
    """
    _check_stop(tol, max_iter, stop)
    amat = _as_matvec(system)
    pmat = _as_matvec(precond)
    b = np.asarray(b, dtype=float)
    tic = time.perf_counter()

    precond_calls = 0

    def papply(v):
        nonlocal precond_calls
        if pmat is None:
            return v.copy()
        precond_calls += 1
        return pmat(v)

    x = np.zeros_like(b)
    r = b.copy()
    z = papply(r)
    rho = float(r @ z)
    if rho < 0:
        raise IndefinitePreconditionerError(f"<r, Pr> = {rho:.3e} at start")
    norm0 = np.sqrt(rho)
    history = [norm0]
    threshold = tol if stop == "abs" else tol * norm0
    converged = norm0 <= threshold

    p = z.copy()
    it = 0
    while not converged and it < max_iter:
        q = amat(p)
        pq = float(p @ q)
        if pq <= 0:
            raise CurvatureBreakdownError(
                f"nonpositive curvature <p, Ap> = {pq:.3e} at iteration {it + 1}"
            )
        alpha = rho / pq
        x += alpha * p
        r -= alpha * q
        z = papply(r)
        rho_new = float(r @ z)
        if rho_new < 0:
            if abs(rho_new) > 1e-8 * np.linalg.norm(r) * np.linalg.norm(z):
                raise IndefinitePreconditionerError(
                    f"<r, Pr> = {rho_new:.3e} at iteration {it + 1}"
                )
            rho_new = 0.0
        norm_k = np.sqrt(rho_new)
        history.append(norm_k)
        it += 1
        converged = norm_k <= threshold
        if converged or rho_new == 0.0:
            break
        p = z + (rho_new / rho) * p
        rho = rho_new

    solves_per = getattr(precond, "solves_per_apply", 1)
    report = SolveReport(
        iterations=it,
        converged=bool(converged),
        preconditioned_residual_history=history,
        wall_time=time.perf_counter() - tic,
        inner_solve_total=precond_calls * solves_per,
        method="pcg",
    )
    return x, report


def minres(system, precond, b, tol=1e-10, max_iter=500, stop="abs"):
    """Preconditioned minimal residual iteration from a zero initial guess.

    The system must be symmetric (definiteness is not required); the
    preconditioner must be SPD.  The tracked quantity is the preconditioned
    residual norm, which is non-increasing.  Returns ``(x, SolveReport)``.
    """
    _check_stop(tol, max_iter, stop)
    amat = _as_matvec(system)
    pmat = _as_matvec(precond)
    b = np.asarray(b, dtype=float)
    tic = time.perf_counter()

    precond_calls = 0

    def papply(v):
        nonlocal precond_calls
        if pmat is None:
            return v.copy()
        precond_calls += 1
        return pmat(v)

    n = b.size
    x = np.zeros(n)
    r1 = b.copy()
    y = papply(r1)
    beta_sq = float(r1 @ y)
    if beta_sq < 0:
        raise IndefinitePreconditionerError(f"<r, Pr> = {beta_sq:.3e} at start")
    beta1 = np.sqrt(beta_sq)
    history = [beta1]
    threshold = tol if stop == "abs" else tol * beta1

    def report(it, converged):
        solves_per = getattr(precond, "solves_per_apply", 1)
        return SolveReport(
            iterations=it,
            converged=bool(converged),
            preconditioned_residual_history=history,
            wall_time=time.perf_counter() - tic,
            inner_solve_total=precond_calls * solves_per,
            method="minres",
        )

    if beta1 <= threshold:
        return x, report(0, True)

    oldb = 0.0
    beta = beta1
    dbar = 0.0
    epsln = 0.0
    phibar = beta1
    cs = -1.0
    sn = 0.0
    w = np.zeros(n)
    w2 = np.zeros(n)
    r2 = r1.copy()
    converged = False
    it = 0

    # Lanczos recursion on the preconditioned pencil with a QR update of the
    # tridiagonal factor; phibar tracks the preconditioned residual norm.
    while it < max_iter:
        it += 1
        v = y / beta
        y = amat(v)
        if it >= 2:
            y = y - (beta / oldb) * r1
        alfa = float(v @ y)
        y = y - (alfa / beta) * r2
        r1 = r2
        r2 = y
        y = papply(r2)
        oldb = beta
        beta_sq = float(r2 @ y)
        if beta_sq < 0:
            if abs(beta_sq) > 1e-8 * np.linalg.norm(r2) * np.linalg.norm(y):
                raise IndefinitePreconditionerError(
                    f"<r, Pr> = {beta_sq:.3e} at iteration {it}"
                )
            beta_sq = 0.0
        beta = np.sqrt(beta_sq)

        oldeps = epsln
        delta = cs * dbar + sn * alfa
        gbar = sn * dbar - cs * alfa
        epsln = sn * beta
        dbar = -cs * beta
        gamma = max(np.sqrt(gbar * gbar + beta * beta), np.finfo(float).tiny)
        cs = gbar / gamma
        sn = beta / gamma
        phi = cs * phibar
        phibar = sn * phibar

        w1 = w2
        w2 = w
        w = (v - oldeps * w1 - delta * w2) / gamma
        x = x + phi * w

        history.append(abs(phibar))
        if abs(phibar) <= threshold:
            converged = True
            break
        if beta == 0.0:
            break

    return x, report(it, converged)
