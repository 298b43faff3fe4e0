"""Dense real matrix primitives shared by the continued-fraction and oracle paths.

Matrices are plain ``float64`` :class:`numpy.ndarray` objects of shape (m, m).
:class:`SpdMatrix` is the validated wrapper every public entry point accepts.

Division convention
-------------------
Throughout the package the matrix quotient ``A / B`` means the *left* division
``B^{-1} A``; :func:`solve` realises it and every continued-fraction convergent
is formed as ``Q^{-1} P``, never ``P Q^{-1}``.
"""

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from . import _config, _kernels
from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    SingularMatrixError,
)

__all__ = [
    "SpdMatrix",
    "SpectralDecomposition",
    "as_matrix",
    "validate_spd",
    "jacobi_eigen",
    "spd_sqrt",
    "spd_inv_sqrt",
    "spectral_map",
    "solve",
    "inverse",
    "maxabs",
    "maxabs_diff",
    "symmetrize",
]


def as_matrix(a):
    """Coerce ``a`` to a finite, square ``float64`` array (copying SpdMatrix data)."""
    if isinstance(a, SpdMatrix):
        return a.data
    arr = np.array(a, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionMismatchError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def maxabs(a):
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def maxabs_diff(a, b):
    """Largest entrywise absolute difference ``max |a_ij - b_ij|``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes {a.shape} and {b.shape} differ")
    return maxabs(a - b)


def symmetrize(a):
    a = np.asarray(a, dtype=np.float64)
    return (a + a.T) / 2.0


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues and orthogonal eigenvectors (as columns)."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def reconstruct(self):
        v = self.vectors
        return (v * self.eigenvalues) @ v.T


@dataclass(frozen=True, eq=False)
class SpdMatrix:
    """A symmetric positive-definite matrix that passed :func:`validate_spd`.

    Construct through :func:`validate_spd`; the wrapped array is read-only.
    """

    data: np.ndarray

    @property
    def dim(self):
        return self.data.shape[0]

    @property
    def shape(self):
        return self.data.shape

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.data.copy() if copy else self.data
        return np.asarray(self.data, dtype=dtype)

    @cached_property
    def spectrum(self):
        return jacobi_eigen(self)

    def __repr__(self):
        return f"SpdMatrix(dim={self.dim})"


def validate_spd(a, sym_tol=_config.SYM_TOL, pd_tol=_config.PD_TOL):
    """Check symmetry and positive definiteness of ``a``.

    Returns an :class:`SpdMatrix` holding ``(a + a.T) / 2``.  Validating an
    already validated matrix returns entrywise identical data.

    Raises
    ------
    NotSymmetricError
        ``max |a_ij - a_ji| > sym_tol * max |a_ij|``.
    NotPositiveDefiniteError
        smallest eigenvalue ``<= pd_tol *`` largest eigenvalue.
    """
    arr = as_matrix(a)
    scale = maxabs(arr)
    asym = maxabs(arr - arr.T)
    if asym > sym_tol * scale:
        raise NotSymmetricError(
            f"asymmetry {asym:.3g} exceeds {sym_tol:g} * max|a_ij| = {sym_tol * scale:.3g}"
        )
    sym = symmetrize(arr)
    dec = jacobi_eigen(sym)
    lo, hi = dec.eigenvalues[0], dec.eigenvalues[-1]
    if hi <= 0.0 or lo <= pd_tol * hi:
        raise NotPositiveDefiniteError(
            f"eigenvalue range [{lo:.6g}, {hi:.6g}] is not positive definite"
        )
    sym.setflags(write=False)
    spd = SpdMatrix(sym)
    # the decomposition was computed on exactly these entries
    spd.__dict__["spectrum"] = dec
    return spd


def jacobi_eigen(a, tol=_config.JACOBI_TOL, max_sweeps=_config.JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius mass drops below
    ``tol * ||a||_F`` or ``max_sweeps`` is reached.

    Raises
    ------
    NoConvergenceError
        when the sweep cap is hit.
    """
    if isinstance(a, SpdMatrix) and "spectrum" in a.__dict__:
        return a.__dict__["spectrum"]
    arr = as_matrix(a)
    w, v, sweeps, ok = _kernels.jacobi_kernel(arr, tol, max_sweeps)
    if not ok:
        raise NoConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    order = np.argsort(w, kind="stable")
    return SpectralDecomposition(w[order].copy(), np.ascontiguousarray(v[:, order]), sweeps)


def spectral_map(dec, values):
    """``V diag(values) V^T``, symmetrized."""
    v = dec.vectors
    return symmetrize((v * np.asarray(values, dtype=np.float64)) @ v.T)


def spd_sqrt(a):
    """Principal square root ``V diag(sqrt(lambda)) V^T`` of an SPD matrix."""
    spd = a if isinstance(a, SpdMatrix) else validate_spd(a)
    dec = spd.spectrum
    root = spectral_map(dec, np.sqrt(dec.eigenvalues))
    root.setflags(write=False)
    out = SpdMatrix(root)
    out.__dict__["spectrum"] = SpectralDecomposition(np.sqrt(dec.eigenvalues), dec.vectors)
    return out


def spd_inv_sqrt(a):
    spd = a if isinstance(a, SpdMatrix) else validate_spd(a)
    dec = spd.spectrum
    vals = 1.0 / np.sqrt(dec.eigenvalues)
    inv_root = spectral_map(dec, vals)
    inv_root.setflags(write=False)
    out = SpdMatrix(inv_root)
    order = np.argsort(vals, kind="stable")
    out.__dict__["spectrum"] = SpectralDecomposition(vals[order], dec.vectors[:, order])
    return out


def solve(a, b, cond_tol=_config.COND_TOL):
    """Left division ``a^{-1} b`` by LU with partial pivoting.

    Raises
    ------
    SingularMatrixError
        if a pivot of the factorisation is below ``cond_tol * max |a_ij|``.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"divisor must be square, got shape {a.shape}")
    if b.shape[0] != a.shape[0]:
        raise DimensionMismatchError(f"shapes {a.shape} and {b.shape} are incompatible")
    scale = maxabs(a)
    if scale == 0.0 or not np.isfinite(scale):
        raise SingularMatrixError("divisor is zero or non-finite")
    diag = np.diag(a)
    if np.count_nonzero(a) == np.count_nonzero(diag):
        # diagonal divisor: plain division, the same operation as the scalar path
        if np.min(np.abs(diag)) <= cond_tol * scale:
            raise SingularMatrixError(
                f"pivot {np.min(np.abs(diag)):.3g} below threshold {cond_tol * scale:.3g}"
            )
        return b / (diag[:, None] if b.ndim == 2 else diag)
    with warnings.catch_warnings():
        # exact zero pivots are reported below as SingularMatrixError
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    pivots = np.abs(np.diag(lu))
    if np.min(pivots) <= cond_tol * scale:
        raise SingularMatrixError(
            f"pivot {np.min(pivots):.3g} below threshold {cond_tol * scale:.3g}"
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def inverse(a, cond_tol=_config.COND_TOL):
    a = np.asarray(a, dtype=np.float64)
    return solve(a, np.eye(a.shape[0]), cond_tol)
