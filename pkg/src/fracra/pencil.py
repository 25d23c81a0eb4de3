"""Sparse symmetric pencils (A, M) from P1 elements and their dense spectral calculus.

Meshes are uniform: an interval with Dirichlet ends, a closed curve (the
periodic interval), or a structured right-triangle split of the unit square.
The dense eigendecomposition of the generalized problem A u = lambda M u
provides the ground-truth spectral calculus used to validate the shifted-solve
operators.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.io
import scipy.linalg
import scipy.sparse as sp

__all__ = [
    "DENSE_CAP_DEFAULT",
    "DenseCapExceededError",
    "OperatorPencil",
    "assemble_interval",
    "assemble_interface",
    "assemble_unit_square",
    "rho_upper_bound",
    "dense_eigendecomposition",
    "dense_fractional_apply",
    "dense_inverse_fractional_apply",
    "write_matrix",
    "read_matrix",
    "save_pencil",
    "load_pencil",
]

DENSE_CAP_DEFAULT = 2000


class DenseCapExceededError(RuntimeError):
    """The pencil is too large for the dense eigendecomposition oracle."""


@dataclass(eq=False)
class OperatorPencil:
    """Pair of sparse symmetric matrices A (stiffness-like) and M (mass).

    ``rho_bound`` is an upper bound on the largest generalized eigenvalue of
    (A, M); assemblers fill it via :func:`rho_upper_bound`.  The dense
    eigendecomposition is cached after first use; beyond that the pencil is
    immutable, so it may be shared across threads once the cache is primed.
    """

    A: sp.csr_matrix
    M: sp.csr_matrix
    spatial_dimension: int
    rho_bound: float = 0.0
    _eig: tuple = field(default=None, repr=False)

    def __post_init__(self):
        self.A = sp.csr_matrix(self.A)
        self.M = sp.csr_matrix(self.M)
        if self.A.shape[0] != self.A.shape[1] or self.A.shape != self.M.shape:
            raise ValueError("A and M must be square with equal shape")
        if self.spatial_dimension not in (1, 2):
            raise ValueError("spatial_dimension must be 1 or 2")
        for name, mat in (("A", self.A), ("M", self.M)):
            asym = abs(mat - mat.T)
            scale = max(abs(mat).max(), np.finfo(float).tiny)
            if asym.nnz and asym.max() > 1e-12 * scale:
                raise ValueError(f"{name} must be symmetric")

    @property
    def n_c(self):
        return self.A.shape[0]


def rho_upper_bound(pencil):
    """d(d+1) * max(1/diag(M)) * max row sum of |A|, stored on the pencil.

    This bounds the largest generalized eigenvalue of (A, M) for P1 mass
    matrices and sets the fit interval of the rational approximants.
    """
    diag = pencil.M.diagonal()
    if np.any(diag <= 0):
        raise ValueError("mass matrix has a nonpositive diagonal entry")
    a_inf = float(np.max(np.asarray(abs(pencil.A).sum(axis=1)).ravel()))
    d = pencil.spatial_dimension
    bound = d * (d + 1) * float(np.max(1.0 / diag)) * a_inf
    pencil.rho_bound = bound
    return bound


def assemble_interval(n_cells, periodic=False):
    """P1 stiffness and consistent mass on a uniform mesh of [0, 1].

    With ``periodic=True`` the endpoints are identified, giving the closed
    curve topology; the stiffness then annihilates the constant vector.
    Otherwise homogeneous Dirichlet values are eliminated and A is SPD.
    """
    if n_cells < 3:
        raise ValueError("n_cells must be at least 3")
    h = 1.0 / n_cells
    if periodic:
        n = n_cells
        i = np.arange(n)
        rows = np.concatenate([i, i, i])
        cols = np.concatenate([i, (i + 1) % n, (i - 1) % n])
        a_vals = np.concatenate([np.full(n, 2.0 / h), np.full(n, -1.0 / h), np.full(n, -1.0 / h)])
        m_vals = np.concatenate([np.full(n, 4.0 * h / 6.0), np.full(n, h / 6.0), np.full(n, h / 6.0)])
        A = sp.coo_matrix((a_vals, (rows, cols)), shape=(n, n)).tocsr()
        M = sp.coo_matrix((m_vals, (rows, cols)), shape=(n, n)).tocsr()
    else:
        n = n_cells - 1
        A = sp.diags(
            [np.full(n - 1, -1.0 / h), np.full(n, 2.0 / h), np.full(n - 1, -1.0 / h)],
            offsets=(-1, 0, 1), format="csr",
        )
        M = sp.diags(
            [np.full(n - 1, h / 6.0), np.full(n, 4.0 * h / 6.0), np.full(n - 1, h / 6.0)],
            offsets=(-1, 0, 1), format="csr",
        )
    pencil = OperatorPencil(A, M, spatial_dimension=1)
    rho_upper_bound(pencil)
    return pencil


def assemble_interface(n_cells):
    """Closed-curve pencil (A + M, M): the shifted operator on a closed mesh.

    Adding the mass to the singular periodic stiffness moves the generalized
    spectrum to [1, rho], so every fractional power in the interface symbol is
    well defined.
    """
    base = assemble_interval(n_cells, periodic=True)
    pencil = OperatorPencil((base.A + base.M).tocsr(), base.M, spatial_dimension=1)
    rho_upper_bound(pencil)
    return pencil


# Local P1 matrices on a right triangle with legs h, right angle at vertex 0.
_STIFF_LOCAL = 0.5 * np.array([[2.0, -1.0, -1.0], [-1.0, 1.0, 0.0], [-1.0, 0.0, 1.0]])
_MASS_LOCAL = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]]) / 12.0


def assemble_unit_square(n_cells_per_side):
    """P1 pencil on a structured triangulation of the unit square.

    Each grid square is split into two right triangles; homogeneous Dirichlet
    rows and columns are eliminated, so A is SPD.
    """
    n = n_cells_per_side
    if n < 2:
        raise ValueError("n_cells_per_side must be at least 2")
    h = 1.0 / n
    nv = n + 1

    def vid(i, j):
        return j * nv + i

    ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    v00 = vid(ii, jj)
    v10 = vid(ii + 1, jj)
    v01 = vid(ii, jj + 1)
    v11 = vid(ii + 1, jj + 1)
    # Right angles sit at v00 (lower triangle) and v11 (upper triangle).
    conn = np.vstack([
        np.column_stack([v00, v10, v01]),
        np.column_stack([v11, v01, v10]),
    ])

    area = 0.5 * h * h
    n_el = conn.shape[0]
    rows = np.repeat(conn, 3, axis=1).ravel()
    cols = np.tile(conn, (1, 3)).ravel()
    a_vals = np.tile(_STIFF_LOCAL.ravel(), n_el)
    m_vals = np.tile((_MASS_LOCAL * area).ravel(), n_el)
    shape = (nv * nv, nv * nv)
    A_full = sp.coo_matrix((a_vals, (rows, cols)), shape=shape).tocsr()
    M_full = sp.coo_matrix((m_vals, (rows, cols)), shape=shape).tocsr()

    gi, gj = np.meshgrid(np.arange(nv), np.arange(nv), indexing="ij")
    interior = ((gi > 0) & (gi < n) & (gj > 0) & (gj < n)).T.ravel()
    keep = np.flatnonzero(interior)
    A = A_full[keep][:, keep]
    M = M_full[keep][:, keep]
    pencil = OperatorPencil(A, M, spatial_dimension=2)
    rho_upper_bound(pencil)
    return pencil


def dense_eigendecomposition(pencil, dense_cap=DENSE_CAP_DEFAULT):
    """Full generalized eigendecomposition A U = M U diag(lam), U^T M U = I.

    Cached on the pencil.  Raises DenseCapExceededError beyond ``dense_cap``
    unknowns.
    """
    if pencil.n_c > dense_cap:
        raise DenseCapExceededError(
            f"pencil has {pencil.n_c} unknowns, dense cap is {dense_cap}"
        )
    if pencil._eig is None:
        lam, u = scipy.linalg.eigh(pencil.A.toarray(), pencil.M.toarray())
        pencil._eig = (lam, u)
    return pencil._eig


def _values_on_spectrum(g, lam):
    lam_max = max(float(lam.max()), 1.0)
    if float(lam.min()) < -1e-10 * lam_max:
        raise ValueError("pencil spectrum has a significantly negative eigenvalue")
    vals = np.asarray(g(np.maximum(lam, 0.0)), dtype=float)
    if vals.shape != lam.shape or not np.all(np.isfinite(vals)):
        raise ValueError("scalar function must be finite on the pencil spectrum")
    return vals


def dense_fractional_apply(pencil, g, r, dense_cap=DENSE_CAP_DEFAULT):
    """Forward spectral map M U g(lam) U^T M r.

    With g the identity this reproduces A r; with g = 1 it reproduces M r.
    This is the system side: it builds the action of the forward symbol.
    """
    lam, u = dense_eigendecomposition(pencil, dense_cap)
    vals = _values_on_spectrum(g, lam)
    mr = pencil.M @ np.asarray(r, dtype=float)
    return pencil.M @ (u @ (vals * (u.T @ mr)))


def dense_inverse_fractional_apply(pencil, f, b, dense_cap=DENSE_CAP_DEFAULT):
    """Inverse spectral map U f(lam) U^T b with f the reciprocal symbol.

    Exact inverse of :func:`dense_fractional_apply` when f = 1/g; this is the
    ground truth the shifted-solve operators are checked against.
    """
    lam, u = dense_eigendecomposition(pencil, dense_cap)
    vals = _values_on_spectrum(f, lam)
    return u @ (vals * (u.T @ np.asarray(b, dtype=float)))


def write_matrix(path, matrix):
    """Write a sparse symmetric matrix in 1-based coordinate text format."""
    scipy.io.mmwrite(str(path), sp.coo_matrix(matrix), symmetry="symmetric")


def read_matrix(path):
    """Read a coordinate text format matrix as CSR."""
    return sp.csr_matrix(scipy.io.mmread(str(path)))


def save_pencil(pencil, prefix):
    """Write A and M as ``<prefix>.A.mtx`` / ``<prefix>.M.mtx`` plus metadata."""
    prefix = str(prefix)
    write_matrix(prefix + ".A.mtx", pencil.A)
    write_matrix(prefix + ".M.mtx", pencil.M)
    meta = {
        "schema": "fracra.pencil/1",
        "spatial_dimension": pencil.spatial_dimension,
        "rho_bound": pencil.rho_bound,
    }
    Path(prefix + ".json").write_text(json.dumps(meta, indent=2))


def load_pencil(prefix):
    prefix = str(prefix)
    meta = json.loads(Path(prefix + ".json").read_text())
    pencil = OperatorPencil(
        read_matrix(prefix + ".A.mtx"),
        read_matrix(prefix + ".M.mtx"),
        spatial_dimension=int(meta["spatial_dimension"]),
    )
    rho_upper_bound(pencil)
    return pencil
