"""Sweep drivers: pole-count atlas, interface robustness, and timing studies.

The interface problem solves S lam = g where S realizes the symbol
mu^{-1} x^{-1/2} + K mu^{-1} x^{1/2} of the shifted closed-curve pencil, and
the preconditioner is the shifted-solve realization of the reciprocal symbol.
"""

from __future__ import annotations

import csv
import json
import platform
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np
import scipy

from .aaa import (DEFAULT_FLOOR_RATIO, aaa_fit, fit_for_pencil,
                  fit_fractional_sum, scale_to_interval, to_partial_fraction)
from .functions import FractionalSumFunction, normalize
from .krylov import minres, pcg
from .operator import RationalOperator, spd_audit
from .pencil import DENSE_CAP_DEFAULT, assemble_interface, dense_eigendecomposition

__all__ = [
    "EXPONENT_GRID",
    "POLE_SWEEP_ALPHAS",
    "POLE_SWEEP_BETAS",
    "ROBUSTNESS_MUS",
    "ROBUSTNESS_KS",
    "ROBUSTNESS_MESHES",
    "COMPLEXITY_MESHES",
    "SweepRecord",
    "InterfaceProblem",
    "ShiftedSumSystem",
    "build_interface_problem",
    "build_interface_system_dense",
    "interface_rhs",
    "solve_interface",
    "pole_sweep",
    "robustness_sweep",
    "complexity_study",
    "write_sweep_csv",
    "write_sweep_summary",
    "summarize_records",
]

EXPONENT_GRID = tuple(float(v) for v in np.round(np.linspace(-1.0, 1.0, 11), 1))
POLE_SWEEP_ALPHAS = (1e-9, 1e-6, 1e-3, 1.0)
POLE_SWEEP_BETAS = (1e-10, 1e-6, 1e-2, 1e2)
ROBUSTNESS_MUS = (1e-6, 1e-4, 1e-2, 1.0, 1e2)
ROBUSTNESS_KS = (1e-6, 1e-4, 1e-2, 1.0)
ROBUSTNESS_MESHES = (64, 128, 256, 512)
COMPLEXITY_MESHES = (32, 64, 128, 256, 512, 1024)


@dataclass
class SweepRecord:
    """One grid point of a sweep; unused fields stay None."""

    kind: str
    s: float = None
    t: float = None
    alpha: float = None
    beta: float = None
    mu: float = None
    K: float = None
    n_cells: int = None
    n_c: int = None
    gamma: float = None
    swapped: bool = None
    tolerance: float = None
    tol_krylov: float = None
    n_poles: int = None
    achieved_error: float = None
    pf_error: float = None
    real_negative: int = None
    real_zero: int = None
    real_positive: int = None
    complex_pair: int = None
    iterations_minres: int = None
    iterations_pcg: int = None
    converged: bool = None
    min_rayleigh: float = None
    setup_seconds: float = None
    solve_seconds: float = None
    failure: str = ""

    def fill_pf(self, pf):
        audit = pf.pole_audit
        self.n_poles = pf.degree
        self.achieved_error = pf.fit_error
        self.pf_error = pf.validation_error
        self.real_negative = audit.real_negative
        self.real_zero = audit.real_zero
        self.real_positive = audit.real_positive
        self.complex_pair = audit.complex_pair

    @property
    def all_real_nonpositive(self):
        return self.real_positive == 0 and self.complex_pair == 0


_CSV_COLUMNS = {
    "poles": (
        "s", "t", "alpha", "beta", "gamma", "swapped", "tolerance", "n_poles",
        "achieved_error", "pf_error", "real_negative", "real_zero",
        "real_positive", "complex_pair", "setup_seconds", "failure",
    ),
    "robustness": (
        "mu", "K", "n_cells", "n_c", "tolerance", "tol_krylov", "n_poles",
        "iterations_minres", "iterations_pcg", "converged", "min_rayleigh",
        "setup_seconds", "solve_seconds", "failure",
    ),
    "complexity": (
        "mu", "K", "n_cells", "n_c", "tolerance", "n_poles",
        "iterations_minres", "setup_seconds", "solve_seconds", "failure",
    ),
}


@dataclass
class InterfaceProblem:
    """Closed-curve interface system S lam = g for viscosity mu, permeability K."""

    mu: float
    K: float
    pencil: object
    system: object
    system_mode: str


class ShiftedSumSystem:
    """O(n) realization of the forward symbol through shifted solves.

    A rational fit of the forward symbol over the pencil's spectral interval
    is sandwiched between two mass applications:
    S x = M (c0 M^{-1} + sum c_i (A - p_i M)^{-1}) M x.  All factorizations
    are prepared at construction, so every apply costs O(n) sparse work.
    """

    def __init__(self, pencil, mu, K, tol=1e-12, max_degree=30, n_samples=2000):
        rho = pencil.rho_bound
        # The generalized spectrum lies in [1, rho]; sample just below it.
        y = np.geomspace(0.5 / rho, 1.0, n_samples)
        symbol = FractionalSumFunction(1.0 / mu, K / mu, -0.5, 0.5, rho)
        values = symbol.forward(rho * y)
        form = aaa_fit(y, values, tol, max_degree)
        self.pf = scale_to_interval(to_partial_fraction(form), rho)
        self._rop = RationalOperator(self.pf, pencil, backend="direct")
        self._M = pencil.M.tocsr()

    @property
    def n(self):
        return self._M.shape[0]

    def apply(self, x):
        x = np.asarray(x, dtype=float)
        return self._M @ self._rop.apply(self._M @ x)


def build_interface_system_dense(pencil, mu, K, dense_cap=DENSE_CAP_DEFAULT):
    """Dense realization M U F(lam) U^T M of the forward interface symbol."""
    lam, u = dense_eigendecomposition(pencil, dense_cap)
    values = (1.0 / mu) * lam**-0.5 + (K / mu) * lam**0.5
    mv = pencil.M @ u
    system = (mv * values) @ mv.T
    return 0.5 * (system + system.T)


def build_interface_problem(mu, K, n_cells, system_mode="dense",
                            dense_cap=DENSE_CAP_DEFAULT, system_tol=1e-12):
    """Assemble the shifted closed-curve pencil and the system operator.

    ``system_mode`` is "dense" (spectral ground truth, O(n^2) applies) or
    "rational" (matrix-free realization with O(n) applies, used for timing
    studies).
    """
    if mu <= 0 or K <= 0:
        raise ValueError("mu and K must be positive")
    pencil = assemble_interface(n_cells)
    if system_mode == "dense":
        system = build_interface_system_dense(pencil, mu, K, dense_cap)
    elif system_mode == "rational":
        system = ShiftedSumSystem(pencil, mu, K, tol=system_tol)
    else:
        raise ValueError(f"unknown system_mode {system_mode!r}")
    return InterfaceProblem(mu, K, pencil, system, system_mode)


def interface_rhs(pencil, seed=0):
    """Deterministic pseudo-random right-hand side, orthogonal to constants.

    The component along the constant function is removed in the dual pairing,
    i.e. sum(g) = 0 against the mass-weighted constant.
    """
    rng = np.random.default_rng(seed)
    g = rng.standard_normal(pencil.n_c)
    m_one = pencil.M @ np.ones(pencil.n_c)
    g -= (g.sum() / m_one.sum()) * m_one
    return g


def solve_interface(problem, tol_ra, tol_krylov=1e-10, method="minres", seed=0,
                    backend="direct", max_iter=500, max_degree=30):
    """Fit the reciprocal symbol, precondition, and solve S lam = g.

    Returns ``(solution, SolveReport, PartialFraction, setup_seconds)`` where
    ``setup_seconds`` covers the fit and pole extraction only (factorizations
    excluded).
    """
    if method not in ("minres", "pcg"):
        raise ValueError(f"unknown method {method!r}")
    pencil = problem.pencil
    tic = time.perf_counter()
    pf = fit_for_pencil(1.0 / problem.mu, problem.K / problem.mu, -0.5, 0.5,
                        pencil, tol_ra, max_degree=max_degree)
    setup_seconds = time.perf_counter() - tic
    precond = RationalOperator(pf, pencil, backend=backend)
    g = interface_rhs(pencil, seed)
    solver = minres if method == "minres" else pcg
    solution, report = solver(problem.system, precond, g, tol=tol_krylov,
                              max_iter=max_iter, stop="abs")
    return solution, report, pf, setup_seconds


def pole_sweep(tolerance=1e-12, exponents=EXPONENT_GRID, alphas=POLE_SWEEP_ALPHAS,
               betas=POLE_SWEEP_BETAS, max_degree=30, n_samples=2000,
               floor_ratio=DEFAULT_FLOOR_RATIO):
    """Fit every (s, t, alpha, beta) grid point on (0, 1] and record the poles.

    Per-point failures are recorded in the record instead of raised, so the
    grid is always fully enumerated.
    """
    records = []
    for s in exponents:
        for t in exponents:
            for alpha in alphas:
                for beta in betas:
                    rec = SweepRecord(kind="poles", s=s, t=t, alpha=alpha,
                                      beta=beta, tolerance=tolerance)
                    try:
                        func = FractionalSumFunction(alpha, beta, s, t, 1.0)
                        norm = normalize(func)
                        rec.gamma = norm.gamma
                        rec.swapped = norm.swapped
                        tic = time.perf_counter()
                        pf = fit_fractional_sum(func, tolerance, max_degree,
                                                n_samples, floor_ratio)
                        rec.setup_seconds = time.perf_counter() - tic
                        rec.fill_pf(pf)
                    except Exception as exc:
                        rec.failure = f"{type(exc).__name__}: {exc}"
                    records.append(rec)
    return records


def robustness_sweep(mu_grid=ROBUSTNESS_MUS, K_grid=ROBUSTNESS_KS,
                     mesh_grid=ROBUSTNESS_MESHES, tolerance=1e-12,
                     tol_krylov=1e-10, seed=0, max_iter=500, backend="direct",
                     audit_trials=1, dense_cap=DENSE_CAP_DEFAULT):
    """Solve the interface problem over the (mu, K, mesh) grid.

    Each point runs both minres and pcg to the same absolute tolerance and
    records iteration counts, pole counts, and a quick definiteness probe of
    the preconditioner.
    """
    by_point = {}
    for n_cells in mesh_grid:
        pencil = assemble_interface(n_cells)
        for mu in mu_grid:
            for K in K_grid:
                rec = SweepRecord(kind="robustness", mu=mu, K=K,
                                  n_cells=n_cells, n_c=pencil.n_c,
                                  tolerance=tolerance, tol_krylov=tol_krylov)
                try:
                    system = build_interface_system_dense(pencil, mu, K, dense_cap)
                    problem = InterfaceProblem(mu, K, pencil, system, "dense")
                    _, rep_minres, pf, setup = solve_interface(
                        problem, tolerance, tol_krylov, "minres", seed,
                        backend, max_iter)
                    precond = RationalOperator(pf, pencil, backend=backend)
                    g = interface_rhs(pencil, seed)
                    tic = time.perf_counter()
                    _, rep_pcg = pcg(system, precond, g, tol=tol_krylov,
                                     max_iter=max_iter, stop="abs")
                    rec.solve_seconds = time.perf_counter() - tic
                    rec.fill_pf(pf)
                    rec.setup_seconds = setup
                    rec.iterations_minres = rep_minres.iterations
                    rec.iterations_pcg = rep_pcg.iterations
                    rec.converged = rep_minres.converged and rep_pcg.converged
                    if audit_trials:
                        rec.min_rayleigh = spd_audit(precond, audit_trials, seed).min_rayleigh
                except Exception as exc:
                    rec.failure = f"{type(exc).__name__}: {exc}"
                by_point[(mu, K, n_cells)] = rec
    return [by_point[(mu, K, n)] for mu in mu_grid for K in K_grid for n in mesh_grid]


def complexity_study(mesh_grid=COMPLEXITY_MESHES, tolerance_grid=(1e-12,),
                     mu=1e-2, K=1e-6, tol_krylov=1e-10, seed=0, repeats=3,
                     max_iter=500):
    """Time the fit setup and the preconditioned solve across mesh doublings.

    The system is the matrix-free realization so every timed operation is O(n)
    sparse work; ``setup_seconds`` covers the fit and pole extraction only and
    ``solve_seconds`` the full Krylov loop including preconditioner applies.
    Each timing is the best of ``repeats`` runs.
    """
    pencils = {n: assemble_interface(n) for n in mesh_grid}
    # One fit window for the whole study keeps the setup cost comparable
    # across meshes; it must reach below the smallest scaled eigenvalue of the
    # finest pencil.
    floor = 0.5 / max(p.rho_bound for p in pencils.values())
    records = []
    for n_cells in mesh_grid:
        pencil = pencils[n_cells]
        system = ShiftedSumSystem(pencil, mu, K)
        g = interface_rhs(pencil, seed)
        for tol in tolerance_grid:
            rec = SweepRecord(kind="complexity", mu=mu, K=K, n_cells=n_cells,
                              n_c=pencil.n_c, tolerance=tol)
            try:
                setup_times = []
                for _ in range(repeats):
                    tic = time.perf_counter()
                    pf = fit_for_pencil(1.0 / mu, K / mu, -0.5, 0.5, pencil, tol,
                                        floor_ratio=floor)
                    setup_times.append(time.perf_counter() - tic)
                rec.setup_seconds = min(setup_times)
                precond = RationalOperator(pf, pencil)
                solve_times = []
                for _ in range(repeats):
                    tic = time.perf_counter()
                    _, report = minres(system, precond, g, tol=tol_krylov,
                                       max_iter=max_iter, stop="abs")
                    solve_times.append(time.perf_counter() - tic)
                rec.solve_seconds = min(solve_times)
                rec.iterations_minres = report.iterations
                rec.converged = report.converged
                rec.fill_pf(pf)
            except Exception as exc:
                rec.failure = f"{type(exc).__name__}: {exc}"
            records.append(rec)
    return records


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def write_sweep_csv(records, path):
    """One row per record with the fixed column order of the sweep kind."""
    if not records:
        raise ValueError("no records to write")
    kinds = {rec.kind for rec in records}
    if len(kinds) != 1:
        raise ValueError(f"records mix sweep kinds: {sorted(kinds)}")
    columns = _CSV_COLUMNS[records[0].kind]
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for rec in records:
            writer.writerow([_cell(getattr(rec, col)) for col in columns])


def summarize_records(records):
    """Aggregate extremes used by the CLI summaries."""
    def values(name):
        return [getattr(r, name) for r in records if getattr(r, name) is not None]

    summary = {
        "n_records": len(records),
        "n_failures": sum(1 for r in records if r.failure),
    }
    poles = values("n_poles")
    if poles:
        summary["max_poles"] = int(max(poles))
    for name in ("iterations_minres", "iterations_pcg"):
        vals = values(name)
        if vals:
            summary[f"max_{name}"] = int(max(vals))
    for name in ("setup_seconds", "solve_seconds"):
        vals = values(name)
        if vals:
            summary[f"{name}_min"] = float(min(vals))
            summary[f"{name}_max"] = float(max(vals))
    errors = values("achieved_error")
    if errors:
        summary["max_achieved_error"] = float(max(errors))
    return summary


def write_sweep_summary(records, path, grids=None, seed=None):
    """JSON summary with the grid definitions, seed, and environment notes."""
    kind = records[0].kind if records else "empty"
    payload = {
        "schema": "fracra.sweep_summary/1",
        "kind": kind,
        "grids": grids or {},
        "seed": seed,
        "environment": {
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "platform": platform.platform(),
        },
        "summary": summarize_records(records),
    }
    Path(path).write_text(json.dumps(payload, indent=2))
    return payload
