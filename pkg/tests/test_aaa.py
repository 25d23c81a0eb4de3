import json

import numpy as np
import pytest

from fracra.aaa import (
    DEFAULT_FLOOR_RATIO,
    PartialFraction,
    aaa_fit,
    bary_eval,
    denormalize,
    eval_pf,
    fit_fractional_sum,
    partial_fraction_from_dict,
    partial_fraction_to_dict,
    scale_to_interval,
    sup_error,
    to_partial_fraction,
)
from fracra.functions import FractionalSumFunction, normalize, sample_grid

EPS = np.finfo(float).eps


def grid_of(func, n=2000, floor=DEFAULT_FLOOR_RATIO):
    return sample_grid(func, n, floor)


def test_constant_single_step():
    x = np.geomspace(1e-3, 1, 100)
    form = aaa_fit(x, np.ones_like(x), 1e-12)
    assert form.converged
    assert form.support_points.size == 1
    assert form.achieved_error == 0.0
    pf = to_partial_fraction(form)
    assert pf.degree == 0
    assert pf.c0 == pytest.approx(1.0, abs=1e-15)


def test_one_over_two_x():
    x = np.geomspace(1e-3, 1, 500)
    form = aaa_fit(x, 0.5 / x, 1e-12)
    assert form.converged
    assert form.support_points.size <= 2
    assert form.achieved_error <= 1e-12
    pf = to_partial_fraction(form)
    assert pf.degree == 1
    assert abs(pf.poles[0]) <= 1e-10
    assert pf.residues[0].real == pytest.approx(0.5, abs=1e-10)
    assert abs(pf.c0) <= 1e-10


def test_sqrt_case_converges_with_few_poles():
    f = FractionalSumFunction(1, 1, -0.5, 0.5, 1.0)
    pf = fit_fractional_sum(f, 1e-12)
    assert pf.fit_error <= 1e-12
    assert pf.degree <= 22
    assert pf.pole_audit.all_real_nonpositive


def test_sqrt_case_pole_sign_scan_oracle():
    # Count sign changes of the barycentric denominator on the negative axis
    # and compare with the audit; for this function every pole is a simple
    # real negative root.
    f = FractionalSumFunction(1, 1, -0.5, 0.5, 1.0)
    x, y = grid_of(normalize(f).scaled)
    form = aaa_fit(x, y, 1e-12)
    pf = to_partial_fraction(form)
    audit = pf.pole_audit
    assert audit.complex_pair == 0 and audit.real_positive == 0

    lo = 10.0 * float(np.abs(pf.poles).max())
    hi = 0.1 * float(np.abs(pf.poles).min())
    scan = -np.geomspace(lo, hi, 400001)
    denom = (1.0 / (scan[:, None] - form.support_points[None, :])) @ form.weights
    signs = np.sign(denom)
    changes = int(np.count_nonzero(signs[1:] * signs[:-1] < 0))
    assert changes == audit.real_negative


def test_interpolation_exact_at_support():
    f = FractionalSumFunction(1, 1, -0.5, 0.5, 1.0)
    x, y = grid_of(f)
    form = aaa_fit(x, y, 1e-10)
    values = bary_eval(form, form.support_points)
    assert np.array_equal(values, form.support_values)


def test_error_history_non_increasing():
    f = FractionalSumFunction(1e-3, 1e2, 0.3, -0.7, 1.0)
    x, y = grid_of(normalize(f).scaled)
    form = aaa_fit(x, y, 1e-12)
    hist = np.array(form.error_history)
    assert np.all(np.diff(hist) <= 0)


def test_partial_fraction_consistency():
    for (s, t, a, b) in [(-0.5, 0.5, 1, 1), (0.2, 0.4, 1e-9, 1e2), (1.0, 0.8, 1, 1e-2)]:
        f = FractionalSumFunction(a, b, s, t, 1.0)
        x, y = grid_of(normalize(f).scaled)
        form = aaa_fit(x, y, 1e-12)
        pf = to_partial_fraction(form)
        deviation = np.max(np.abs(eval_pf(pf, x) - bary_eval(form, x)))
        assert deviation <= 10 * form.tolerance


def test_non_convergence_reported():
    f = FractionalSumFunction(1, 1, -0.5, 0.5, 1.0)
    x, y = grid_of(f, n=400)
    form = aaa_fit(x, y, 1e-12, max_degree=3)
    assert not form.converged
    assert form.achieved_error > 1e-12


def test_rank_deficient_warns():
    x = np.linspace(0.1, 1, 200)
    y = 1.0 / (x + 1.0)
    with pytest.warns(RuntimeWarning, match="rank-deficient"):
        form = aaa_fit(x, y, 1e-30, max_degree=6)
    assert form.achieved_error <= 1e-14


def test_invalid_inputs():
    x = np.array([0.1, 0.2, 0.2])
    with pytest.raises(ValueError):
        aaa_fit(x, np.ones(3), 1e-6)
    with pytest.raises(ValueError):
        aaa_fit(np.array([1.0]), np.array([1.0]), 1e-6)
    with pytest.raises(ValueError):
        aaa_fit(np.array([0.1, 0.2]), np.ones(2), -1.0)
    with pytest.raises(ValueError):
        aaa_fit(np.array([0.1, 0.2]), np.ones(2), 1e-6, max_degree=0)


def test_eval_pf_examples():
    pf = PartialFraction(1.0, [2.0], [-1.0], 1e-12)
    assert eval_pf(pf, 1.0) == pytest.approx(2.0, abs=1e-15)

    pf = PartialFraction(0.0, [0.5], [0.0], 1e-12)
    assert eval_pf(pf, 0.25) == pytest.approx(2.0, abs=1e-15)


def test_eval_pf_conjugate_pair_real():
    c, p = 1.0 + 2.0j, -1.0 + 3.0j
    pf = PartialFraction(0.5, [c, np.conj(c)], [p, np.conj(p)], 1e-12)
    x = np.linspace(0.1, 5.0, 50)
    values = eval_pf(pf, x)
    assert values.dtype == np.float64
    direct = 0.5 + c / (x - p) + np.conj(c) / (x - np.conj(p))
    assert np.max(np.abs(values - direct.real)) <= 1e-14 * np.max(np.abs(direct))
    assert np.max(np.abs(direct.imag)) <= 1e-12


def test_eval_pf_rejects_pole_hit():
    pf = PartialFraction(0.0, [1.0], [-1.0], 1e-12)
    with pytest.raises(ValueError):
        eval_pf(pf, -1.0)


def test_partial_fraction_validation():
    with pytest.raises(ValueError):
        PartialFraction(0.0, [1.0, 2.0], [-1.0], 1e-12)
    with pytest.raises(ValueError):
        # complex pole without its conjugate partner
        PartialFraction(0.0, [1.0 + 0j, 1.0 + 1j], [-1.0 + 0j, -1.0 + 1j], 1e-12)
    with pytest.raises(ValueError):
        # complex residue on a real pole
        PartialFraction(0.0, [1.0 + 1j], [-1.0 + 0j], 1e-12)


def test_sup_error_cases():
    f = FractionalSumFunction(1, 1, 1, 1, 1.0)
    pf = PartialFraction(0.0, [0.5], [0.0], 1e-12)
    grid = np.geomspace(1e-3, 1, 1000)
    assert sup_error(pf, f, grid) <= 1e-15 * np.max(1.0 / (2 * grid))

    const = FractionalSumFunction(1, 0, 0, 0, 1.0)
    pf0 = PartialFraction(1.0, [], [], 1e-12)
    assert sup_error(pf0, const, grid) == 0.0


def test_sup_error_on_denser_grid():
    f = FractionalSumFunction(1, 1, -0.5, 0.5, 1.0)
    pf = fit_fractional_sum(f, 1e-12)
    dense = np.geomspace(DEFAULT_FLOOR_RATIO, 1.0, 20000)
    assert sup_error(pf, f, dense) <= 1e-11


def test_scale_to_interval_example():
    pf = PartialFraction(1.0, [2.0], [-1.0], 1e-12)
    scaled = scale_to_interval(pf, 4.0)
    assert scaled.c0 == 1.0
    assert scaled.residues[0] == 8.0
    assert scaled.poles[0] == -4.0

    same = scale_to_interval(pf, 1.0)
    assert same.residues[0] == 2.0 and same.poles[0] == -1.0

    with pytest.raises(ValueError):
        scale_to_interval(pf, 0.0)


def test_scale_to_interval_identity_random():
    # Positive residues and nonpositive poles avoid cancellation, keeping the
    # two evaluation orders within a few ulps of each other.
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = rng.integers(1, 6)
        poles = -(10.0 ** rng.uniform(-3, 3, size=n))
        residues = 10.0 ** rng.uniform(-2, 2, size=n)
        pf = PartialFraction(rng.uniform(0, 2), residues, poles, 1e-12)
        for rho in (1e-3, 1.0, 1e6):
            scaled = scale_to_interval(pf, rho)
            x = rho * 10.0 ** rng.uniform(-6, 0, size=100)
            a = eval_pf(scaled, x)
            b = eval_pf(pf, x / rho)
            assert np.all(np.abs(a - b) <= 8 * EPS * np.abs(b))


def test_denormalize():
    pf = PartialFraction(1.0, [2.0], [-1.0], 1e-12)
    assert denormalize(pf, 1.0).residues[0] == 2.0
    scaled = denormalize(pf, 100.0)
    assert scaled.c0 == pytest.approx(0.01)
    assert scaled.residues[0] == pytest.approx(0.02)
    assert scaled.poles[0] == -1.0
    with pytest.raises(ValueError):
        denormalize(pf, 0.0)


def test_denormalized_fit_approximates_original():
    # Composite check: the full pipeline (normalize, fit, denormalize)
    # approximates the original function to the tolerance divided by the
    # dominant weight.
    f = FractionalSumFunction(100.0, 1.0, -0.5, 0.5, 1.0)
    tol = 1e-10
    pf = fit_fractional_sum(f, tol)
    dense = np.geomspace(DEFAULT_FLOOR_RATIO, 1.0, 5000)
    assert sup_error(pf, f, dense) <= 10 * tol / 100.0


def test_json_round_trip():
    c, p = 1.0 + 2.0j, -1.0 + 3.0j
    pf = PartialFraction(0.5, [c, np.conj(c), 2.0], [p, np.conj(p), -4.0], 1e-10)
    data = partial_fraction_to_dict(pf)
    assert data["schema"].startswith("fracra.partial_fraction/")
    text = json.dumps(data)
    back = partial_fraction_from_dict(json.loads(text))
    assert back.c0 == pf.c0
    assert np.array_equal(back.poles, pf.poles)
    assert np.array_equal(back.residues, pf.residues)
    assert back.pole_audit.as_dict() == pf.pole_audit.as_dict()


def test_conjugate_closure_on_fitted_pairs():
    # s = -1, t = 1 makes the target exactly rational with one conjugate pole
    # pair at +/- i*sqrt(gamma); the fit must reproduce it in closed form.
    gamma = 1e-2
    pf = fit_fractional_sum(FractionalSumFunction(gamma, 1.0, -1.0, 1.0, 1.0), 1e-12)
    assert pf.degree == 2
    assert pf.pole_audit.complex_pair == 2
    nonreal = pf.poles[pf.poles.imag != 0]
    assert np.array_equal(np.sort_complex(nonreal), np.sort_complex(np.conj(nonreal)))
    assert abs(pf.poles[0]) == pytest.approx(np.sqrt(gamma), rel=1e-8)
    x = np.geomspace(0.01, 1.0, 50)
    values = eval_pf(pf, x)
    assert values.dtype == np.float64
    target = x / (gamma + x * x)
    assert np.max(np.abs(values - target)) <= 1e-11


def test_audit_counts_sum_to_degree():
    for (s, t, a, b) in [(-0.5, 0.5, 1, 1), (-1.0, 1.0, 1, 1), (1, 1, 1, 1)]:
        pf = fit_fractional_sum(FractionalSumFunction(a, b, s, t, 1.0), 1e-12)
        assert pf.pole_audit.total == pf.degree


def test_degenerate_rational_cases():
    # (s,t)=(1,1) equal weights: a single pole at zero with residue 1/(2a).
    pf = fit_fractional_sum(FractionalSumFunction(2.0, 2.0, 1, 1, 1.0), 1e-12)
    assert pf.degree == 1
    assert abs(pf.poles[0]) <= 1e-10
    assert pf.residues[0].real == pytest.approx(0.25, abs=1e-8)
    # (s,t)=(0,0): a constant, no poles.
    pf = fit_fractional_sum(FractionalSumFunction(3.0, 1.0, 0, 0, 1.0), 1e-12)
    assert pf.degree == 0
    assert pf.c0 == pytest.approx(0.25, abs=1e-12)
