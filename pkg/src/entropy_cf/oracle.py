"""Spectral reference values ``V diag(f(lambda_i)) V^T``.

Only :mod:`entropy_cf.linalg` primitives are used here, so these values are
independent of the continued-fraction machinery they are compared against.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .linalg import SpdMatrix, spd_inv_sqrt, spd_sqrt, spectral_map, symmetrize, validate_spd

__all__ = ["OracleReport", "oracle_fn", "oracle_entropy", "oracle_divergence"]

FUNCTIONS = ("pow", "ln", "powln")


@dataclass(frozen=True)
class OracleReport:
    value: np.ndarray
    method: str = "spectral"
    conditioning: float = 1.0


def _spd(a):
    return a if isinstance(a, SpdMatrix) else validate_spd(a)


def _conditioning(*eigs):
    lo = min(float(e[0]) for e in eigs)
    hi = max(float(e[-1]) for e in eigs)
    return hi / lo


def _scalar_fn(fn, q):
    if fn == "pow":
        return lambda x: x**q
    if fn == "ln":
        return math.log
    if fn == "powln":
        return lambda x: x**q * math.log(x)
    raise ValueError(f"unknown function {fn!r}; expected one of {FUNCTIONS}")


def oracle_fn(a, fn, q=None):
    """Apply ``pow`` (``x**q``), ``ln`` or ``powln`` (``x**q ln x``) spectrally."""
    if fn in ("pow", "powln") and q is None:
        raise ValueError(f"{fn} needs an exponent q")
    a = _spd(a)
    dec = a.spectrum
    f = _scalar_fn(fn, None if q is None else float(q))
    values = np.array([f(float(x)) for x in dec.eigenvalues])
    return OracleReport(spectral_map(dec, values), "spectral", _conditioning(dec.eigenvalues))


def _congruence(a, b):
    a, b = _spd(a), _spd(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"A is {a.shape} but B is {b.shape}")
    r = spd_inv_sqrt(a).data
    m = validate_spd(symmetrize(r @ b.data @ r))
    return a, m, spd_sqrt(a).data


def oracle_entropy(a, b, q):
    """``A^{1/2} M^q ln(M) A^{1/2}`` with ``M = A^{-1/2} B A^{-1/2}``.

    ``q = 0`` gives the relative operator entropy; a positive integer ``q``
    gives ``S_n(A|B)``.
    """
    q = float(q)
    if q < 0:
        raise ValueError(f"q must be non-negative, got {q}")
    a, m, root = _congruence(a, b)
    inner = oracle_fn(m, "ln") if q == 0 else oracle_fn(m, "powln", q)
    value = symmetrize(root @ inner.value @ root)
    return OracleReport(value, "spectral", _conditioning(a.spectrum.eigenvalues, m.spectrum.eigenvalues))


def oracle_divergence(a, b, q):
    """``A^{1/2} M^q (M - I - ln M) A^{1/2}`` evaluated eigenvalue by eigenvalue."""
    q = float(q)
    a, m, root = _congruence(a, b)
    dec = m.spectrum
    values = np.array([x**q * (x - 1.0 - math.log(x)) for x in map(float, dec.eigenvalues)])
    value = symmetrize(root @ spectral_map(dec, values) @ root)
    return OracleReport(value, "spectral", _conditioning(a.spectrum.eigenvalues, dec.eigenvalues))
