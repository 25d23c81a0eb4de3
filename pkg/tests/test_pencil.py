import numpy as np
import pytest
import scipy.linalg
import scipy.sparse as sp

from fracra.pencil import (
    DenseCapExceededError,
    OperatorPencil,
    assemble_interface,
    assemble_interval,
    assemble_unit_square,
    dense_eigendecomposition,
    dense_fractional_apply,
    dense_inverse_fractional_apply,
    load_pencil,
    read_matrix,
    rho_upper_bound,
    save_pencil,
    write_matrix,
)


def dense_max_eig(pencil):
    return float(scipy.linalg.eigvalsh(pencil.A.toarray(), pencil.M.toarray())[-1])


def test_interval_periodic_rows():
    n = 4
    h = 1.0 / n
    p = assemble_interval(n, periodic=True)
    assert p.n_c == n
    A = p.A.toarray()
    M = p.M.toarray()
    for i in range(n):
        assert A[i, i] == pytest.approx(2.0 / h)
        assert A[i, (i + 1) % n] == pytest.approx(-1.0 / h)
        assert A[i, (i - 1) % n] == pytest.approx(-1.0 / h)
        assert M[i, i] == pytest.approx(4.0 * h / 6.0)
        assert M[i, (i + 1) % n] == pytest.approx(h / 6.0)
    # constant nullspace, exactly
    assert np.array_equal(p.A @ np.ones(n), np.zeros(n))
    # mass row sums total the domain measure
    assert M.sum() == pytest.approx(1.0, abs=1e-14)


def test_interval_dirichlet_spd():
    p = assemble_interval(10, periodic=False)
    assert p.n_c == 9
    eigs = scipy.linalg.eigvalsh(p.A.toarray())
    assert eigs[0] > 0


def test_interval_rejects_small():
    with pytest.raises(ValueError):
        assemble_interval(2)


def test_unit_square_counts_and_spd():
    p = assemble_unit_square(2)
    assert p.n_c == 1
    p = assemble_unit_square(8)
    assert p.n_c == 49
    eigs = scipy.linalg.eigvalsh(p.A.toarray())
    assert eigs[0] > 0
    assert 0 < p.M.toarray().sum() <= 1.0


def test_unit_square_rejects_degenerate():
    with pytest.raises(ValueError):
        assemble_unit_square(1)


def test_rho_bound_closed_form_periodic():
    for n in (16, 64, 128):
        p = assemble_interval(n, periodic=True)
        assert p.rho_bound == pytest.approx(12.0 * n * n, rel=1e-12)
        # attained by the oscillating mode when the cell count is even
        assert p.rho_bound == pytest.approx(dense_max_eig(p), rel=1e-8)


def test_rho_bound_dominates_spectrum():
    pencils = [
        assemble_interval(50, periodic=True),
        assemble_interval(400, periodic=True),
        assemble_interval(50, periodic=False),
        assemble_interval(401, periodic=False),
        assemble_interface(100),
        assemble_unit_square(8),
        assemble_unit_square(20),
    ]
    for p in pencils:
        assert p.n_c <= 400
        assert p.rho_bound >= dense_max_eig(p) * (1 - 1e-12)


def test_rho_bound_mesh_scaling():
    b1 = assemble_interval(32, periodic=True).rho_bound
    b2 = assemble_interval(64, periodic=True).rho_bound
    assert b2 / b1 == pytest.approx(4.0, rel=1e-12)


def test_rho_bound_rejects_zero_diagonal():
    A = sp.identity(4, format="csr")
    M = sp.diags([1.0, 1.0, 0.0, 1.0]).tocsr()
    p = OperatorPencil(A, M, spatial_dimension=1)
    with pytest.raises(ValueError):
        rho_upper_bound(p)


def test_dense_apply_identity_and_one():
    p = assemble_interval(40, periodic=False)
    rng = np.random.default_rng(0)
    r = rng.standard_normal(p.n_c)
    out = dense_fractional_apply(p, lambda lam: lam, r)
    assert out == pytest.approx(p.A @ r, rel=1e-10, abs=1e-12)
    out = dense_fractional_apply(p, lambda lam: np.ones_like(lam), r)
    assert out == pytest.approx(p.M @ r, rel=1e-10, abs=1e-12)


def test_dense_apply_semigroup():
    p = assemble_interval(100, periodic=False)
    rng = np.random.default_rng(1)
    r = rng.standard_normal(p.n_c)
    half = lambda lam: np.sqrt(lam)
    once = dense_fractional_apply(p, half, r)
    minv = np.linalg.solve(p.M.toarray(), once)
    twice = dense_fractional_apply(p, half, minv)
    ref = p.A @ r
    assert np.linalg.norm(twice - ref) <= 1e-8 * np.linalg.norm(ref)


def test_dense_inverse_composition():
    p = assemble_interface(64)
    rng = np.random.default_rng(2)
    r = rng.standard_normal(p.n_c)
    fwd = lambda lam: lam**-0.5 + lam**0.5
    inv = lambda lam: 1.0 / (lam**-0.5 + lam**0.5)
    out = dense_inverse_fractional_apply(p, inv, dense_fractional_apply(p, fwd, r))
    assert np.linalg.norm(out - r) <= 1e-10 * np.linalg.norm(r)


def test_dense_inverse_special_cases():
    p = assemble_interval(30, periodic=False)
    rng = np.random.default_rng(3)
    b = rng.standard_normal(p.n_c)
    out = dense_inverse_fractional_apply(p, lambda lam: np.ones_like(lam), b)
    assert out == pytest.approx(np.linalg.solve(p.M.toarray(), b), rel=1e-9)

    sq = assemble_unit_square(6)
    b = rng.standard_normal(sq.n_c)
    out = dense_inverse_fractional_apply(sq, lambda lam: 1.0 / lam, b)
    assert out == pytest.approx(np.linalg.solve(sq.A.toarray(), b), rel=1e-8)


def test_eigendecomposition_residuals():
    for p in (assemble_interval(100, periodic=True), assemble_unit_square(12)):
        lam, u = dense_eigendecomposition(p)
        A, M = p.A.toarray(), p.M.toarray()
        assert np.linalg.norm(A @ u - M @ u * lam) <= 1e-8 * np.linalg.norm(A)
        assert np.linalg.norm(u.T @ M @ u - np.eye(p.n_c)) <= 1e-8


def test_shifted_interface_positive():
    # (A + M, M) has spectrum bounded below by one even though A is singular.
    p = assemble_interface(64)
    lam, _ = dense_eigendecomposition(p)
    assert lam[0] >= 1.0 - 1e-10


def test_dense_cap():
    p = assemble_interval(50, periodic=False)
    with pytest.raises(DenseCapExceededError):
        dense_eigendecomposition(p, dense_cap=10)


def test_matrix_market_round_trip(tmp_path):
    p = assemble_unit_square(5)
    path = tmp_path / "A.mtx"
    write_matrix(path, p.A)
    header = path.read_text().splitlines()[0]
    assert header.startswith("%%MatrixMarket matrix coordinate")
    back = read_matrix(path)
    assert np.allclose(back.toarray(), p.A.toarray(), rtol=1e-15, atol=0)


def test_pencil_save_load(tmp_path):
    p = assemble_interface(32)
    prefix = tmp_path / "iface"
    save_pencil(p, prefix)
    q = load_pencil(prefix)
    assert q.spatial_dimension == 1
    assert np.allclose(q.A.toarray(), p.A.toarray(), rtol=1e-15, atol=0)
    assert np.allclose(q.M.toarray(), p.M.toarray(), rtol=1e-15, atol=0)
    assert q.rho_bound == pytest.approx(p.rho_bound, rel=1e-15)


def test_pencil_rejects_asymmetric():
    A = sp.csr_matrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
    M = sp.identity(2, format="csr")
    with pytest.raises(ValueError):
        OperatorPencil(A, M, spatial_dimension=1)
