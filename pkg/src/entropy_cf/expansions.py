"""Matrix continued fractions for ``A^q``, ``ln A``, ``A^q ln A`` and the operator
entropies and divergence built from them.

Every coefficient is a rational function of the Cayley image
``phi(A) = (I + A)^{-1} (I - A)``, so all coefficients of one expansion commute.

Two coefficient forms are available for ``A^q`` and ``ln A``:

``"general"``
    partial numerators carry powers of ``phi(A)``; nothing is inverted, so it
    is valid for any SPD input and its denominators stay well conditioned.
``"simple"``
    all partial numerators are ``I`` and the denominators carry ``phi(A)^{-1}``.
    Its convergents are the same in exact arithmetic, but the denominators
    ``Q_n`` mix widely different scales when the spectrum is spread out, so
    it is best kept to spectra clustered on one side of 1.  When an
    eigenvalue lies within ``eig_gap`` of 1 the general form is used instead.

The normative value of composite quantities (``A^q ln A``, ``S_q``, ``D_q``) is
the product of the factor convergents taken at equal depth.  The explicit
product continued fractions are provided as diagnostics.
"""

import itertools
import math

import numpy as np

from . import _config
from .cf import MatrixCF, cf_convergent, cf_eval, iter_convergents, iter_states, scale_transform
from .errors import DegeneratePhiError, DimensionMismatchError, NoConvergenceError, SingularMatrixError
from .linalg import (
    SpdMatrix,
    inverse,
    maxabs,
    maxabs_diff,
    solve,
    spd_inv_sqrt,
    spd_sqrt,
    symmetrize,
    validate_spd,
)
from .oracle import oracle_divergence, oracle_entropy, oracle_fn
from .scalar import _check_q, log_simple_factors, power_simple_factors, product_pairs
from .tables import ConvergenceTable, TableRow

__all__ = [
    "matrix_phi",
    "entropy_phi",
    "congruence_quotient",
    "matrix_pow_cf",
    "matrix_ln_cf",
    "powln_matrix",
    "entropy_Sq",
    "relative_entropy_cf",
    "relative_entropy_S",
    "relative_entropy_convergence",
    "entropy_Sn",
    "entropy_Sn_convergence",
    "divergence_Dq",
    "powln_product_cf",
    "entropy_product_cf",
    "divergence_literal_cf",
    "ln_series",
    "pow_via_exp_ln",
]

FORMS = ("general", "simple")


def _spd(a):
    return a if isinstance(a, SpdMatrix) else validate_spd(a)


def _pair(a, b):
    a, b = _spd(a), _spd(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"A is {a.shape} but B is {b.shape}")
    return a, b


def matrix_phi(a):
    """``(I + A)^{-1} (I - A)``, symmetrized."""
    a = _spd(a)
    eye = np.eye(a.dim)
    return symmetrize(solve(eye + a.data, eye - a.data))


def congruence_quotient(a, b):
    """``M = A^{-1/2} B A^{-1/2}`` (symmetrized, validated) and ``A^{1/2}``."""
    a, b = _pair(a, b)
    r = spd_inv_sqrt(a).data
    m = validate_spd(symmetrize(r @ b.data @ r))
    return m, spd_sqrt(a)


def entropy_phi(a, b):
    return matrix_phi(congruence_quotient(a, b)[0])


def _near_one(a, eig_gap):
    return float(np.min(np.abs(a.spectrum.eigenvalues - 1.0))) < eig_gap


def _inverse_phi(a, eig_gap):
    if _near_one(a, eig_gap):
        raise DegeneratePhiError(f"an eigenvalue lies within {eig_gap:g} of 1")
    phi = matrix_phi(a)
    return phi, inverse(phi)


def _check_form(form):
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}, got {form!r}")


def _pow_general(a, q):
    phi = matrix_phi(a)
    phi2 = phi @ phi
    eye = np.eye(a.dim)

    def pairs():
        yield (2.0 * q) * phi, -eye - q * phi
        for k in itertools.count(2):
            yield (q * q - (k - 1) ** 2) * phi2, -(2.0 * k - 1.0) * eye

    return MatrixCF(eye.copy(), pairs)


def _pow_simple(a, q, eig_gap):
    phi, inv_phi = _inverse_phi(a, eig_gap)
    eye = np.eye(a.dim)
    first = ((-eye - q * phi) @ inv_phi) / (2.0 * q)

    def denominators():
        yield first
        for g in power_simple_factors(q):
            yield g * inv_phi

    return MatrixCF.simple(eye, denominators)


def _ln_general(a):
    phi = matrix_phi(a)
    phi2 = phi @ phi
    eye = np.eye(a.dim)

    def pairs():
        yield -2.0 * phi, eye
        for k in itertools.count(2):
            yield -float((k - 1) ** 2) * phi2, (2.0 * k - 1.0) * eye

    return MatrixCF(np.zeros((a.dim, a.dim)), pairs)


def _ln_simple(a, eig_gap):
    _, inv_phi = _inverse_phi(a, eig_gap)

    def denominators():
        yield -0.5 * inv_phi
        for h in log_simple_factors():
            yield h * inv_phi

    return MatrixCF.simple(np.zeros((a.dim, a.dim)), denominators)


def matrix_pow_cf(a, q, form="general", eig_gap=_config.EIG_GAP):
    """Continued fraction converging to ``A^q``, ``0 < q < 1``.

    Parameters
    ----------
    a : array_like or SpdMatrix
    q : float
    form : {"general", "simple"}
        ``"simple"`` silently falls back to ``"general"`` when an eigenvalue
        of ``a`` lies within ``eig_gap`` of 1.
    """
    _check_form(form)
    a = _spd(a)
    q = _check_q(q)
    if form == "simple" and not _near_one(a, eig_gap):
        return _pow_simple(a, q, eig_gap)
    return _pow_general(a, q)


def matrix_ln_cf(a, form="general", eig_gap=_config.EIG_GAP):
    """Continued fraction converging to ``ln A`` (head 0)."""
    _check_form(form)
    a = _spd(a)
    if form == "simple" and not _near_one(a, eig_gap):
        return _ln_simple(a, eig_gap)
    return _ln_general(a)


# ---------------------------------------------------------------------------
# lockstep evaluation
# ---------------------------------------------------------------------------


def _lockstep(cfs, combine, max_n, tol):
    """Yield ``(n, combine(F_n^(1), F_n^(2), ...))`` with the stopping rule applied.

    Depths at which any factor denominator is singular are skipped.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    prev = combine(*[np.asarray(cf.head, dtype=np.float64) for cf in cfs])
    found = False
    for states in zip(*(iter_states(cf, max_n) for cf in cfs)):
        try:
            factors = [cf_convergent(s) for s in states]
        except SingularMatrixError:
            prev = None
            continue
        cur = combine(*factors)
        found = True
        yield states[0].n, cur
        if prev is not None and maxabs_diff(cur, prev) < tol:
            return
        prev = cur
    if not found:
        raise NoConvergenceError(f"every denominator up to depth {max_n} was singular")


def _tabulate(command, params, convergents, reference, difference):
    """Collect convergents into a table; ``difference`` is ``"reference - F_n"`` or the reverse."""
    rows = []
    for n, fn in convergents:
        if difference == "reference - F_n":
            diff = reference - fn
        else:
            diff = fn - reference
        rows.append(TableRow(n, fn, diff))
    return rows[-1].convergent, ConvergenceTable(command, params, difference, tuple(rows))


def _zero_table(command, params, reference, difference, dim):
    zero = np.zeros((dim, dim))
    return _tabulate(command, params, [(1, zero)], reference, difference)


def powln_matrix(a, q, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL, form="general"):
    """``A^q ln A`` as the product of the ``A^q`` and ``ln A`` convergents at equal depth.

    Returns
    -------
    value : ndarray
        Last product convergent ``T_n``.
    table : ConvergenceTable
        Rows with ``A^q ln A - T_n`` against the spectral oracle.
    """
    a = _spd(a)
    q = _check_q(q)
    params = {"q": q, "max_n": int(max_n), "tol": float(tol), "dim": a.dim}
    ref = oracle_fn(a, "powln", q).value
    cfs = (matrix_pow_cf(a, q, form), matrix_ln_cf(a, form))
    conv = _lockstep(cfs, lambda c, d: symmetrize(c @ d), max_n, tol)
    return _tabulate("powln", params, conv, ref, "reference - F_n")


def entropy_Sq(a, b, q, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL, form="general"):
    """Generalized operator entropy ``A^{1/2} M^q ln(M) A^{1/2}``, ``M = A^{-1/2} B A^{-1/2}``.

    The table reports ``F_n - S_q(A|B)``.
    """
    a, b = _pair(a, b)
    q = _check_q(q)
    params = {"q": q, "max_n": int(max_n), "tol": float(tol), "dim": a.dim}
    ref = oracle_entropy(a, b, q).value
    m, root = congruence_quotient(a, b)
    if maxabs(m.data - np.eye(a.dim)) < _config.IDENTITY_TOL:
        return _zero_table("entropy", params, ref, "F_n - reference", a.dim)
    r = root.data
    cfs = (matrix_pow_cf(m, q, form), matrix_ln_cf(m, form))
    conv = _lockstep(cfs, lambda c, d: symmetrize(r @ (c @ d) @ r), max_n, tol)
    return _tabulate("entropy", params, conv, ref, "F_n - reference")


def divergence_Dq(a, b, q, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL, form="general"):
    """Operator divergence ``A^{1/2} M^q (M - I - ln M) A^{1/2}``.

    The table reports ``F_n - D_q(A|B)``.
    """
    a, b = _pair(a, b)
    q = _check_q(q)
    params = {"q": q, "max_n": int(max_n), "tol": float(tol), "dim": a.dim}
    ref = oracle_divergence(a, b, q).value
    m, root = congruence_quotient(a, b)
    eye = np.eye(a.dim)
    if maxabs(m.data - eye) < _config.IDENTITY_TOL:
        return _zero_table("divergence", params, ref, "F_n - reference", a.dim)
    r = root.data
    shifted = m.data - eye
    cfs = (matrix_pow_cf(m, q, form), matrix_ln_cf(m, form))
    conv = _lockstep(cfs, lambda c, d: symmetrize(r @ (c @ (shifted - d)) @ r), max_n, tol)
    return _tabulate("divergence", params, conv, ref, "F_n - reference")


# ---------------------------------------------------------------------------
# relative operator entropy and its integer-order relatives
# ---------------------------------------------------------------------------


def relative_entropy_cf(a, b):
    """Continued fraction of ``S(A|B) = A^{1/2} ln(A^{-1/2} B A^{-1/2}) A^{1/2}``.

    With ``W = (A + B)^{-1} (A - B)``::

        S(A|B) = [0; -2 A W / I,  -k^2 A W^2 A^{-1} / ((2k + 1) I)]   k >= 1
    """
    a, b = _pair(a, b)
    av, bv = a.data, b.data
    eye = np.eye(a.dim)
    w = solve(av + bv, av - bv)
    first = -2.0 * (av @ w)
    tail = av @ w @ w @ inverse(av)

    def pairs():
        yield first, eye
        for k in itertools.count(1):
            yield -float(k * k) * tail, (2.0 * k + 1.0) * eye

    return MatrixCF(np.zeros((a.dim, a.dim)), pairs)


def relative_entropy_S(a, b, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL):
    """Relative operator entropy ``S(A|B)`` from :func:`relative_entropy_cf`."""
    return symmetrize(cf_eval(relative_entropy_cf(a, b), max_n, tol).value)


def _relative_convergents(a, b, max_n, tol, left=None):
    cf = relative_entropy_cf(a, b)
    convs = iter_convergents(cf, max_n)
    prev = np.zeros((a.dim, a.dim))
    for n, fn in convs:
        cur = symmetrize(fn if left is None else left @ fn)
        yield n, cur
        if maxabs_diff(cur, prev) < tol:
            return
        prev = cur


def relative_entropy_convergence(a, b, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL):
    """``S(A|B)`` with a table of ``F_n - S(A|B)``."""
    a, b = _pair(a, b)
    params = {"q": 0, "max_n": int(max_n), "tol": float(tol), "dim": a.dim}
    ref = oracle_entropy(a, b, 0).value
    conv = _relative_convergents(a, b, max_n, tol)
    return _tabulate("relative-entropy", params, conv, ref, "F_n - reference")


def _ba_power(a, b, n):
    # B A^{-1} = (A^{-1} B)^T for symmetric A, B
    return np.linalg.matrix_power(solve(a.data, b.data).T, n)


def _check_order(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return int(n)


def entropy_Sn(a, b, n, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL):
    """``S_n(A|B) = (B A^{-1})^n S(A|B)`` for a positive integer ``n``."""
    a, b = _pair(a, b)
    n = _check_order(n)
    return symmetrize(_ba_power(a, b, n) @ relative_entropy_S(a, b, max_n, tol))


def entropy_Sn_convergence(a, b, n, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL):
    """``S_n(A|B)`` with a table of ``F_n - S_n(A|B)`` (oracle ``A^{1/2} M^n ln M A^{1/2}``)."""
    a, b = _pair(a, b)
    order = _check_order(n)
    params = {"n": order, "max_n": int(max_n), "tol": float(tol), "dim": a.dim}
    ref = oracle_entropy(a, b, order).value
    conv = _relative_convergents(a, b, max_n, tol, left=_ba_power(a, b, order))
    return _tabulate("entropy-n", params, conv, ref, "F_n - reference")


# ---------------------------------------------------------------------------
# explicit product continued fractions (diagnostics)
# ---------------------------------------------------------------------------


def _pq_stream(cf):
    """Unscaled ``(P_k, Q_k)`` for k = -1, 0, 1, ..."""
    m = cf.dim
    p_prev, p_cur = np.eye(m), np.asarray(cf.head, dtype=np.float64)
    q_prev, q_cur = np.zeros((m, m)), np.eye(m)
    yield p_prev, q_prev
    yield p_cur, q_cur
    for bk, ak in cf.pairs():
        p_prev, p_cur = p_cur, ak @ p_cur + bk @ p_prev
        q_prev, q_cur = q_cur, ak @ q_cur + bk @ q_prev
        yield p_cur, q_cur


def powln_product_cf(a, q, variant="mixed", eig_gap=_config.EIG_GAP):
    """One continued fraction whose n-th convergent is ``F_n(A^q) F_n(ln A)``.

    Assembled from the simple forms; raises :class:`DegeneratePhiError` when an
    eigenvalue is within ``eig_gap`` of 1.
    """
    a = _spd(a)
    q = _check_q(q)
    c = _pow_simple(a, q, eig_gap)
    d = _ln_simple(a, eig_gap)

    def pairs():
        return product_pairs(_pq_stream(c), _pq_stream(d), np.matmul, inverse, variant)

    return MatrixCF(np.zeros((a.dim, a.dim)), pairs)


def entropy_product_cf(a, b, q, variant="mixed", eig_gap=_config.EIG_GAP):
    """``A^{1/2} [product CF of M^q ln M] A^{1/2}`` via the scale transform."""
    m, root = congruence_quotient(a, b)
    return scale_transform(powln_product_cf(m, q, variant, eig_gap), root.data, root.data)


def divergence_literal_cf(a, b, q, head="congruence", eig_gap=_config.EIG_GAP):
    """The entropy product CF with its zero head replaced.

    ``head="congruence"`` uses ``M - I``; ``head="difference"`` uses ``B - A``.
    Its limit is ``head + S_q(A|B)``, which is not ``D_q(A|B)``; it exists to
    document that discrepancy.
    """
    a, b = _pair(a, b)
    m, _ = congruence_quotient(a, b)
    if head == "congruence":
        h = m.data - np.eye(a.dim)
    elif head == "difference":
        h = b.data - a.data
    else:
        raise ValueError(f"unknown head reading {head!r}")
    inner = entropy_product_cf(a, b, q, eig_gap=eig_gap)
    return MatrixCF(h, inner.pair_source)


# ---------------------------------------------------------------------------
# power-series references
# ---------------------------------------------------------------------------


def ln_series(a, tol=_config.DEFAULT_TOL, max_terms=10000):
    """``ln A = -2 sum_n phi(A)^{2n+1} / (2n + 1)``, stopped once a term is below ``tol``.

    Raises
    ------
    NoConvergenceError
        if ``max_terms`` terms are not enough.
    """
    a = _spd(a)
    phi = matrix_phi(a)
    phi2 = phi @ phi
    power = phi.copy()
    total = np.zeros_like(phi)
    for n in range(max_terms):
        term = power / (2 * n + 1)
        total += term
        if maxabs(term) < tol:
            return symmetrize(-2.0 * total)
        power = power @ phi2
    raise NoConvergenceError(f"logarithm series needs more than {max_terms} terms")


def pow_via_exp_ln(a, alpha, tol=_config.DEFAULT_TOL, max_terms=1000):
    """``exp(alpha ln A)`` with a Taylor exponential and scaling and squaring."""
    a = _spd(a)
    y = float(alpha) * ln_series(a, tol)
    size = maxabs(y)
    squarings = max(0, math.ceil(math.log2(size))) if size > 1.0 else 0
    z = y / 2.0**squarings
    total = np.eye(a.dim)
    term = np.eye(a.dim)
    for k in range(1, max_terms + 1):
        term = term @ z / k
        total = total + term
        if maxabs(term) < tol * 1e-3:
            break
    else:
        raise NoConvergenceError(f"exponential series needs more than {max_terms} terms")
    for _ in range(squarings):
        total = total @ total
    return symmetrize(total)
