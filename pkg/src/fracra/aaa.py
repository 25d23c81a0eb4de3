"""Greedy barycentric rational fitting and pole/residue conversion.

The fitter picks support points where the current deviation is largest and
solves for barycentric weights with the smallest singular vector of the
(column-equilibrated) Loewner matrix restricted to the remaining samples.
Fitted interpolants are converted to the partial fraction form
``c0 + sum(c_i / (x - p_i))`` whose poles drive the shifted-solve operators
in :mod:`fracra.operator`.
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .functions import (
    FractionalSumFunction,
    evaluate,
    normalize,
    sample_grid,
    to_unit_interval,
)

__all__ = [
    "BarycentricForm",
    "PartialFraction",
    "PoleAudit",
    "PoleExtractionError",
    "aaa_fit",
    "bary_eval",
    "to_partial_fraction",
    "eval_pf",
    "sup_error",
    "scale_to_interval",
    "denormalize",
    "fit_fractional_sum",
    "fit_for_pencil",
    "partial_fraction_to_dict",
    "partial_fraction_from_dict",
]

# |Im p| below this (relative to the pole scale) is eigensolver noise.
REAL_IMAG_RTOL = 1e-11
# |p| below max(1, pole scale) times this counts as a pole at zero.
ZERO_POLE_ATOL = 1e-10
# Residues smaller than this (relative to the largest) mark spurious
# pole/zero cancellation pairs and are dropped.
FROISSART_RTOL = 1e-13
# Default lower end of the fit grid, relative to the interval length. The
# tolerance is absolute, so the window must keep the sampled values below
# roughly tolerance/eps for the fit to be able to terminate; deep floors also
# force the root-exponential regime of fractional-power approximation and
# inflate the pole count beyond what a degree-30 budget can absorb.
DEFAULT_FLOOR_RATIO = 5e-3
# The greedy loop stops once the deviation is safely below tolerance. Iterates
# that only just meet the target are transitional and occasionally carry stray
# positive or complex denominator roots that the next step resolves.
STOP_SAFETY = 0.5


class PoleExtractionError(RuntimeError):
    """Pole or residue computation from a barycentric form failed."""


@dataclass
class BarycentricForm:
    """Rational interpolant sum(w*f/(x-z)) / sum(w/(x-z)).

    ``achieved_error`` is the largest absolute deviation on the non-support
    samples of the returned iterate.  ``error_history`` holds the best such
    deviation achieved up to each iteration and is therefore non-increasing.
    """

    support_points: np.ndarray
    support_values: np.ndarray
    weights: np.ndarray
    achieved_error: float
    converged: bool
    tolerance: float
    error_history: tuple = ()
    grid: np.ndarray = field(default=None, repr=False)
    grid_values: np.ndarray = field(default=None, repr=False)
    scale: float = 1.0

    def __post_init__(self):
        self.support_points = np.asarray(self.support_points, dtype=float)
        self.support_values = np.asarray(self.support_values, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        m = self.support_points.size
        if self.support_values.size != m or self.weights.size != m:
            raise ValueError("support points, values and weights must have equal length")
        if m == 0:
            raise ValueError("a barycentric form needs at least one support point")
        if np.unique(self.support_points).size != m:
            raise ValueError("support points must be pairwise distinct")
        if not np.any(self.weights):
            raise ValueError("weights must not all be zero")
        if self.achieved_error < 0:
            raise ValueError("achieved_error must be nonnegative")

    @property
    def degree(self):
        return self.support_points.size - 1

    def __call__(self, x):
        return bary_eval(self, x)


def bary_eval(form, x):
    """Evaluate a barycentric form at scalar or array ``x``.

    Points that hit a support node exactly return the stored node value.
    """
    scalar = np.isscalar(x)
    xv = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    zj, fj, wj = form.support_points, form.support_values, form.weights
    diff = xv[:, None] - zj[None, :]
    hit_row, hit_col = np.nonzero(diff == 0.0)
    diff[hit_row, hit_col] = 1.0
    cauchy = 1.0 / diff
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (cauchy @ (wj * fj)) / (cauchy @ wj)
    out[hit_row] = fj[hit_col]
    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def aaa_fit(x, y, tolerance, max_degree=30):
    """Fit a barycentric rational approximant to the samples ``(x, y)``.

    Support points are added greedily at the sample of largest deviation until
    the absolute deviation on the remaining samples drops safely below
    ``tolerance`` or ``max_degree`` support additions beyond the first have
    been made.  The deviation can oscillate between iterations, so the best
    iterate seen is returned; ``converged`` is False when the target was
    missed.

    A rank-deficient weight solve (the data is exactly rational of lower
    degree) is reported with a RuntimeWarning and the smallest singular vector
    is used regardless.
    """
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise ValueError("sample abscissae and values must have equal length")
    if x.size < 2:
        raise ValueError("need at least 2 samples")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    order = np.argsort(x, kind="stable")
    x, y = x[order], y[order]
    if np.any(np.diff(x) == 0):
        raise ValueError("sample abscissae must be distinct")

    scale = max(float(np.max(np.abs(y))), np.finfo(float).tiny)
    # The greedy stops only once the deviation is safely inside the tolerance,
    # but convergence is judged against the tolerance itself.
    target = STOP_SAFETY * tolerance

    best, history, _ = _greedy_pass(x, y, target, max_degree, equilibrate=True)
    if best[3] > tolerance:
        # Either weight solve can plateau a hair above the tolerance; the
        # equilibrated one copes better with badly scaled Loewner columns and
        # runs first, the plain one is the fallback.  Keep whichever pass got
        # further.
        best2, history2, _ = _greedy_pass(x, y, target, max_degree,
                                          equilibrate=False)
        if best2[3] < best[3]:
            best, history = best2, history2

    zj, fj, wj, err_best = best
    converged = err_best <= tolerance
    return BarycentricForm(
        zj,
        fj,
        wj,
        err_best,
        converged,
        tolerance,
        error_history=tuple(history),
        grid=x,
        grid_values=y,
        scale=scale,
    )


def _greedy_pass(x, y, target, max_degree, equilibrate):
    n = x.size
    in_support = np.zeros(n, dtype=bool)
    resid_approx = np.full(n, y.mean())
    best = None
    history = []
    warned_degenerate = False
    converged = False

    for m in range(1, max_degree + 2):
        # Greedy pick: argmax returns the first (smallest abscissa) on ties.
        j = int(np.argmax(np.abs(y - resid_approx)))
        in_support[j] = True
        idx_s = np.flatnonzero(in_support)
        idx_r = np.flatnonzero(~in_support)
        zj, fj = x[idx_s], y[idx_s]

        cauchy = 1.0 / (x[idx_r, None] - zj[None, :])
        loewner = (y[idx_r, None] - fj[None, :]) * cauchy
        if equilibrate:
            col_scale = np.linalg.norm(loewner, axis=0)
            col_scale[col_scale == 0.0] = 1.0
            loewner = loewner / col_scale
        if loewner.shape[0] >= loewner.shape[1]:
            _, sing, vh = np.linalg.svd(loewner, full_matrices=False)
        else:
            _, sing, vh = np.linalg.svd(loewner, full_matrices=True)
        wj = vh[-1, :].conj().real
        if equilibrate:
            wj = wj / col_scale
            wj /= np.linalg.norm(wj)
        if (
            not warned_degenerate
            and sing.size >= 2
            and sing[-2] <= 1e-14 * max(sing[0], np.finfo(float).tiny)
        ):
            warnings.warn(
                "rank-deficient barycentric weight solve; the data is rational "
                "of lower degree and the interpolant is not unique",
                RuntimeWarning,
            )
            warned_degenerate = True

        numer = cauchy @ (wj * fj)
        denom = cauchy @ wj
        resid_approx = y.copy()
        with np.errstate(divide="ignore", invalid="ignore"):
            resid_approx[idx_r] = numer / denom

        err = np.max(np.abs(y - resid_approx))
        err = float(err) if np.isfinite(err) else float("inf")
        if best is None or err < best[3]:
            best = (zj.copy(), fj.copy(), wj.copy(), err)
        history.append(min(err, history[-1]) if history else err)
        if err <= target:
            converged = True
            break

    return best, history, converged


@dataclass(frozen=True)
class PoleAudit:
    """Counts of pole locations; complex_pair counts poles living in pairs."""

    real_negative: int
    real_zero: int
    real_positive: int
    complex_pair: int

    @property
    def total(self):
        return self.real_negative + self.real_zero + self.real_positive + self.complex_pair

    @property
    def all_real_nonpositive(self):
        return self.real_positive == 0 and self.complex_pair == 0

    def as_dict(self):
        return {
            "real_negative": self.real_negative,
            "real_zero": self.real_zero,
            "real_positive": self.real_positive,
            "complex_pair": self.complex_pair,
        }


def _audit_poles(poles):
    poles = np.asarray(poles, dtype=complex)
    if poles.size == 0:
        return PoleAudit(0, 0, 0, 0)
    scale = max(1.0, float(np.max(np.abs(poles))))
    real_mask = poles.imag == 0.0
    realp = poles[real_mask].real
    zero = int(np.count_nonzero(np.abs(realp) <= ZERO_POLE_ATOL * scale))
    negative = int(np.count_nonzero(realp < -ZERO_POLE_ATOL * scale))
    positive = int(np.count_nonzero(realp > ZERO_POLE_ATOL * scale))
    return PoleAudit(negative, zero, positive, int(np.count_nonzero(~real_mask)))


@dataclass
class PartialFraction:
    """Pole/residue form c0 + sum(c_i / (x - p_i)).

    Complex poles must come in exact conjugate pairs with conjugate residues,
    and residues attached to real poles must be real, so that evaluation is
    real on real arguments.  ``tolerance`` records the absolute deviation
    target the fit was run at and ``fit_error`` the deviation it achieved on
    the fit grid; both refer to the normalized unit-interval fit and are left
    untouched by rescaling.  ``validation_error`` is the deviation of this
    converted form against the samples it was derived from (None when
    unknown).
    """

    c0: float
    residues: np.ndarray
    poles: np.ndarray
    tolerance: float
    pole_audit: PoleAudit = None
    fit_error: float = None
    validation_error: float = None

    def __post_init__(self):
        self.residues = np.atleast_1d(np.asarray(self.residues, dtype=complex))
        self.poles = np.atleast_1d(np.asarray(self.poles, dtype=complex))
        if self.residues.size != self.poles.size:
            raise ValueError("residues and poles must have equal length")
        self.c0 = float(self.c0)
        real_mask = self.poles.imag == 0.0
        if np.any(self.residues[real_mask].imag != 0.0):
            raise ValueError("residues of real poles must be real")
        nonreal = ~real_mask
        if np.any(nonreal):
            units = Counter(zip(self.poles[nonreal].tolist(), self.residues[nonreal].tolist()))
            mirrored = Counter(
                (np.conj(p), np.conj(c)) for (p, c) in units.elements()
            )
            if units != mirrored:
                raise ValueError("complex poles must form exact conjugate pairs with conjugate residues")
        self._real_idx = np.flatnonzero(real_mask)
        self._pair_idx = np.flatnonzero(self.poles.imag > 0.0)
        if self.pole_audit is None:
            self.pole_audit = _audit_poles(self.poles)

    @property
    def degree(self):
        return self.poles.size

    def __call__(self, x):
        return eval_pf(self, x)


def _symmetrize_conjugates(poles, residues):
    """Strip eigensolver noise off real poles and enforce exact pairing."""
    poles = np.asarray(poles, dtype=complex)
    residues = np.asarray(residues, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(poles))) if poles.size else 1.0)
    real_mask = np.abs(poles.imag) <= REAL_IMAG_RTOL * scale

    units = [("real", complex(p.real), complex(c.real))
             for p, c in zip(poles[real_mask], residues[real_mask])]

    cpoles = poles[~real_mask]
    cres = residues[~real_mask]
    upper = sorted(
        np.flatnonzero(cpoles.imag > 0), key=lambda k: (cpoles[k].real, cpoles[k].imag)
    )
    lower = list(np.flatnonzero(cpoles.imag < 0))
    for i in upper:
        if not lower:
            warnings.warn("unpaired complex pole; treating it as real", RuntimeWarning)
            units.append(("real", complex(cpoles[i].real), complex(cres[i].real)))
            continue
        j = min(lower, key=lambda k: abs(np.conj(cpoles[i]) - cpoles[k]))
        lower.remove(j)
        p = 0.5 * (cpoles[i] + np.conj(cpoles[j]))
        c = 0.5 * (cres[i] + np.conj(cres[j]))
        units.append(("pair", p, c))
    for j in lower:
        warnings.warn("unpaired complex pole; treating it as real", RuntimeWarning)
        units.append(("real", complex(cpoles[j].real), complex(cres[j].real)))
    return units


def _units_to_arrays(units):
    """Expand (kind, pole, residue) units into arrays sorted by |pole|."""
    units = sorted(units, key=lambda u: (abs(u[1]), u[1].real, abs(u[1].imag)))
    poles, residues = [], []
    for kind, p, c in units:
        if kind == "real":
            poles.append(p)
            residues.append(c)
        else:
            poles.append(p)
            residues.append(c)
            poles.append(np.conj(p))
            residues.append(np.conj(c))
    return np.asarray(poles, dtype=complex), np.asarray(residues, dtype=complex)


def _polish_poles(poles, zj, wj, max_steps=10):
    """Newton-refine roots of the barycentric denominator sum(w/(x-z)).

    The arrowhead eigensolve locates poles with absolute accuracy only, which
    is poor relative accuracy for poles much smaller than the support scale.
    A few Newton steps on the denominator restore componentwise accuracy; a
    step is kept only while it decreases |denominator|.
    """
    polished = np.array(poles, dtype=complex)
    for k, pole in enumerate(polished):
        current = pole
        with np.errstate(divide="ignore", invalid="ignore"):
            best_val = abs(np.sum(wj / (current - zj)))
        for _ in range(max_steps):
            diff = current - zj
            if np.any(diff == 0):
                break
            den = np.sum(wj / diff)
            dden = -np.sum(wj / diff**2)
            if dden == 0 or not np.isfinite(den) or not np.isfinite(dden):
                break
            step = den / dden
            candidate = current - step
            cdiff = candidate - zj
            if np.any(cdiff == 0):
                break
            cval = abs(np.sum(wj / cdiff))
            if not np.isfinite(cval) or cval >= best_val:
                break
            current, best_val = candidate, cval
            if abs(step) <= 4 * np.finfo(float).eps * (abs(current) + np.finfo(float).tiny):
                break
        polished[k] = current
    return polished


def _refit_residues(units, x, values, c0):
    """Re-solve the constant term and residues with the poles held fixed.

    The pole-limit formula loses a few digits for exponentially clustered pole
    sets, so the coefficients are recomputed as the least-squares projection
    of the interpolant values onto the Cauchy basis at the fixed poles.
    Conjugate pairs are folded to two real columns, keeping the pairing exact.
    Falls back to the incoming coefficients if the solve misbehaves.
    """
    columns = [np.ones_like(x)]
    for kind, p, _ in units:
        if kind == "real":
            columns.append(1.0 / (x - p.real))
        else:
            q = 1.0 / (x - p)
            columns.append(2.0 * q.real)
            columns.append(-2.0 * q.imag)
    basis = np.column_stack(columns)
    col_scale = np.linalg.norm(basis, axis=0)
    col_scale[col_scale == 0.0] = 1.0
    coef, *_ = np.linalg.lstsq(basis / col_scale, values, rcond=None)
    coef = coef / col_scale
    if not np.all(np.isfinite(coef)):
        return units, c0
    out = []
    k = 1
    for kind, p, _ in units:
        if kind == "real":
            out.append((kind, p, complex(coef[k])))
            k += 1
        else:
            out.append((kind, p, complex(coef[k], coef[k + 1])))
            k += 2
    return out, float(coef[0])


def to_partial_fraction(form, froissart_rtol=FROISSART_RTOL):
    """Convert a barycentric interpolant to pole/residue form.

    Poles are the finite generalized eigenvalues of the arrowhead pencil built
    from the weights and support points, polished by Newton steps on the
    barycentric denominator.  Residues start from the numerator over the
    denominator derivative at each pole; when the fit grid is attached they
    are then re-solved by least squares, which keeps the converted form
    consistent with the interpolant to machine level.  Spurious poles with
    negligible residues are dropped and the form is re-validated.

    Raises PoleExtractionError when the eigenvalue computation fails and warns
    about nearly coincident poles.
    """
    zj, fj, wj = form.support_points, form.support_values, form.weights
    m = zj.size

    if m == 1:
        poles = np.empty(0, dtype=complex)
        residues = np.empty(0, dtype=complex)
    else:
        arrow = np.zeros((m + 1, m + 1))
        arrow[0, 1:] = wj
        arrow[1:, 0] = 1.0
        arrow[1:, 1:] = np.diag(zj)
        mass = np.eye(m + 1)
        mass[0, 0] = 0.0
        try:
            eigvals = scipy.linalg.eigvals(arrow, mass)
        except Exception as exc:  # pragma: no cover - LAPACK failure path
            raise PoleExtractionError(f"generalized eigenvalue solve failed: {exc}") from exc
        if np.any(np.isnan(eigvals)):
            eigvals = eigvals[~np.isnan(eigvals)]
        poles = _polish_poles(eigvals[np.isfinite(eigvals)], zj, wj)
        # A pole sitting exactly on a support node is a spurious zero/pole
        # cancellation at that node (the interpolant is finite there).
        on_node = np.isin(poles, zj.astype(complex))
        if np.any(on_node):
            warnings.warn("dropping pole located exactly on a support node",
                          RuntimeWarning)
            poles = poles[~on_node]
        cauchy = 1.0 / (poles[:, None] - zj[None, :])
        numer = cauchy @ (wj * fj)
        dderiv = (-(cauchy**2)) @ wj
        with np.errstate(divide="ignore", invalid="ignore"):
            residues = numer / dderiv
        finite = np.isfinite(residues)
        if not np.all(finite):
            warnings.warn("dropping pole with non-finite residue", RuntimeWarning)
            poles, residues = poles[finite], residues[finite]
        if poles.size >= 2:
            sorted_p = np.sort_complex(poles)
            gaps = np.abs(np.diff(sorted_p))
            if np.any(gaps <= 1e-12 * max(1.0, float(np.max(np.abs(poles))))):
                warnings.warn("nearly coincident pole pair detected", RuntimeWarning)

    weight_sum = wj.sum()
    gain = (wj * fj).sum()
    if weight_sum == 0.0 or not np.isfinite(gain / weight_sum):
        raise PoleExtractionError("interpolant has no finite value at infinity")
    c0 = float(gain / weight_sum)

    units = _symmetrize_conjugates(poles, residues)

    # Spurious-pole cleanup, two tests per unit: a residue that vanishes
    # relative to the largest one marks a zero/pole cancellation pair, and a
    # largest-contribution-over-the-grid far below the deviation target marks
    # a pole the approximant does not actually use.  Either way pruning moves
    # the approximant by less than the deviation target.
    if units:
        res_scale = max(abs(c) for _, _, c in units)
        if res_scale > 0:
            units = [u for u in units if abs(u[2]) > froissart_rtol * res_scale]
    if units and form.grid is not None:
        kept = []
        for kind, p, c in units:
            dist = np.min(np.abs(form.grid - p))
            weight = abs(c) if kind == "real" else 2 * abs(c)
            if weight / max(dist, np.finfo(float).tiny) > 0.05 * form.tolerance:
                kept.append((kind, p, c))
        units, c0 = _refit_residues(kept, form.grid, bary_eval(form, form.grid), c0)
    poles, residues = _units_to_arrays(units)

    pf = PartialFraction(
        c0, residues, poles, form.tolerance,
        fit_error=form.achieved_error,
    )
    if form.grid is not None:
        deviation = np.max(np.abs(eval_pf(pf, form.grid) - form.grid_values))
        pf.validation_error = float(deviation)
    return pf


def eval_pf(pf, x):
    """Evaluate a partial fraction at scalar or array ``x``.

    Conjugate pairs are folded as 2*Re(c/(x-p)) so the result is real.
    Raises ValueError when an evaluation point hits a real pole exactly.
    """
    scalar = np.isscalar(x)
    xv = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    out = np.full(xv.shape, pf.c0)
    if pf._real_idx.size:
        rp = pf.poles[pf._real_idx].real
        rc = pf.residues[pf._real_idx].real
        diff = xv[:, None] - rp[None, :]
        if np.any(diff == 0.0):
            raise ValueError("evaluation at a real pole is undefined")
        out += (1.0 / diff) @ rc
    for k in pf._pair_idx:
        out += 2.0 * np.real(pf.residues[k] / (xv - pf.poles[k]))
    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def sup_error(pf, func, validation_grid):
    """Largest absolute deviation |func(x) - pf(x)| over the grid."""
    grid = np.asarray(validation_grid, dtype=float)
    return float(np.max(np.abs(evaluate(func, grid) - eval_pf(pf, grid))))


def scale_to_interval(pf, rho):
    """Push a fit on (0, 1] forward to (0, rho].

    Poles and residues are multiplied by rho and the constant term is kept, so
    the scaled form at x equals the original at x/rho identically.
    """
    if rho <= 0:
        raise ValueError("interval scaling factor must be positive")
    return PartialFraction(
        pf.c0,
        pf.residues * rho,
        pf.poles * rho,
        pf.tolerance,
        fit_error=pf.fit_error,
        validation_error=pf.validation_error,
    )


def denormalize(pf, leading_weight):
    """Undo the unit-leading-weight rescaling: divide c0 and residues."""
    if leading_weight <= 0:
        raise ValueError("leading_weight must be positive")
    return PartialFraction(
        pf.c0 / leading_weight,
        pf.residues / leading_weight,
        pf.poles.copy(),
        pf.tolerance,
        fit_error=pf.fit_error,
        validation_error=pf.validation_error,
    )


def fit_fractional_sum(func, tolerance, max_degree=30, n_samples=2000,
                       floor_ratio=DEFAULT_FLOOR_RATIO):
    """Fit the reciprocal fractional-sum ``func`` on its interval.

    The function is pulled back to (0, 1], its dominant weight divided out,
    fitted on a logarithmic grid, converted to pole/residue form, and the two
    rescalings undone.  The returned form approximates ``func`` on
    (0, interval_upper].
    """
    unit = to_unit_interval(func)
    norm = normalize(unit)
    xs, ys = sample_grid(norm.scaled, n_samples, floor_ratio)
    form = aaa_fit(xs, ys, tolerance, max_degree)
    pf = to_partial_fraction(form)
    pf = denormalize(pf, norm.leading_weight)
    return scale_to_interval(pf, func.interval_upper)


def fit_for_pencil(alpha, beta, s, t, pencil, tolerance, max_degree=30,
                   n_samples=1000, floor_ratio=None):
    """Fit 1/(alpha*x**s + beta*x**t) over the pencil's spectral interval.

    The fit interval is (0, rho] with rho the pencil's stored upper bound on
    the generalized spectrum.  By default the sample grid starts half a
    possible eigenvalue below the smallest one (the generalized spectrum of an
    assembled pencil lies in [lambda_min, rho] and the fit only has to be
    accurate there), which keeps the pole count low on fine meshes.
    """
    if floor_ratio is None:
        floor_ratio = min(DEFAULT_FLOOR_RATIO, 0.5 / pencil.rho_bound)
    func = FractionalSumFunction(alpha, beta, s, t, pencil.rho_bound)
    return fit_fractional_sum(func, tolerance, max_degree, n_samples, floor_ratio)


def partial_fraction_to_dict(pf):
    """JSON-ready dictionary with poles and residues as [re, im] pairs."""
    return {
        "schema": "fracra.partial_fraction/1",
        "c0": pf.c0,
        "poles": [[float(p.real), float(p.imag)] for p in pf.poles],
        "residues": [[float(c.real), float(c.imag)] for c in pf.residues],
        "tolerance": float(pf.tolerance),
        "audit": pf.pole_audit.as_dict(),
        "fit_error": None if pf.fit_error is None else float(pf.fit_error),
        "validation_error": (
            None if pf.validation_error is None else float(pf.validation_error)
        ),
    }


def partial_fraction_from_dict(data):
    poles = np.array([complex(re, im) for re, im in data["poles"]], dtype=complex)
    residues = np.array([complex(re, im) for re, im in data["residues"]], dtype=complex)
    return PartialFraction(
        data["c0"],
        residues,
        poles,
        data["tolerance"],
        fit_error=data.get("fit_error"),
        validation_error=data.get("validation_error"),
    )
