"""Scalar continued-fraction expansions of ``x**q``, ``ln x`` and ``x**q ln x``.

These are the one-dimensional ground truth for the matrix expansions: a
matrix expansion evaluated on a diagonal matrix performs, entry by entry,
exactly the floating-point operations done here.

Every expansion is written in terms of the Cayley value
``phi = (1 - x) / (1 + x)``, which maps ``x > 0`` into ``(-1, 1)``.
"""

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import _config, _kernels
from .errors import DegenerateDepthError, DegeneratePhiError, ZeroNumeratorError
from .tables import ConvergenceTable, TableRow

__all__ = [
    "ScalarCF",
    "cayley",
    "pow_cf_general",
    "pow_cf_simple",
    "ln_cf_general",
    "ln_cf_simple",
    "power_simple_factors",
    "log_simple_factors",
    "to_simple",
    "product_pairs",
    "product_cf",
    "powln_scalar",
]


def cayley(lam):
    """``(1 - lam) / (1 + lam)`` for ``lam > 0``."""
    lam = float(lam)
    if not lam > 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return (1.0 - lam) / (1.0 + lam)


def _check_q(q):
    q = float(q)
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in the open interval (0, 1), got {q}")
    return q


@dataclass(frozen=True)
class ScalarCF:
    """``head + b_1/(a_1 + b_2/(a_2 + ...))`` with lazily generated ``(b_k, a_k)``."""

    head: float
    pair_source: Callable[[], Iterator[tuple[float, float]]]
    simple: bool = False

    def pairs(self):
        return iter(self.pair_source())

    def terms(self, n):
        """First ``n`` partial numerators and denominators as two arrays."""
        b = np.empty(n)
        a = np.empty(n)
        k = 0
        for k, (bk, ak) in enumerate(self.pairs()):
            if k >= n:
                break
            b[k], a[k] = bk, ak
        else:
            k += 1 if n else 0
            return b[:k], a[:k]
        return b, a

    def denominators(self, n):
        return self.terms(n)[1]

    def convergents(self, n):
        """``F_1 .. F_n`` (rescaled recurrence, NaN where ``Q_k == 0``)."""
        b, a = self.terms(n)
        return _kernels.batch_cf_convergents([self.head], b[None, :], a[None, :])[0]

    def value(self, n):
        return float(self.convergents(n)[-1])

    def pq_stream(self):
        """Unscaled ``(p_k, q_k)`` for k = -1, 0, 1, ... (no overflow control)."""
        p_prev, p_cur, q_prev, q_cur = 1.0, float(self.head), 0.0, 1.0
        yield p_prev, q_prev
        yield p_cur, q_cur
        for bk, ak in self.pairs():
            p_prev, p_cur = p_cur, ak * p_cur + bk * p_prev
            q_prev, q_cur = q_cur, ak * q_cur + bk * q_prev
            yield p_cur, q_cur


def _odd_even(first_even, even_ratio, first_odd, odd_ratio):
    """Interleave two ratio-recurrence streams as g_2, g_3, g_4, ..."""
    even, odd = first_even, first_odd
    yield even
    yield odd
    k = 2
    while True:
        even *= even_ratio(k)
        yield even
        odd *= odd_ratio(k)
        yield odd
        k += 1


def power_simple_factors(q):
    """Factors ``g_k`` (k >= 2) with simple-form coefficient ``c*_k = g_k / phi``.

    Built from ratio recurrences between coefficients of equal parity; no
    long products are ever formed.
    """
    q = _check_q(q)
    q2 = q * q
    return _odd_even(
        -6.0 * q / (q2 - 1.0),
        lambda k: (q2 - (2 * k - 2) ** 2) / (q2 - (2 * k - 1) ** 2) * (4 * k - 1) / (4 * k - 5),
        -5.0 * (q2 - 1.0) / (2.0 * q * (q2 - 4.0)),
        lambda k: (q2 - (2 * k - 1) ** 2) / (q2 - (2 * k) ** 2) * (4 * k + 1) / (4 * k - 3),
    )


def log_simple_factors():
    """Factors ``h_k`` (k >= 2) with simple-form coefficient ``d*_k = h_k / phi``."""
    return _odd_even(
        6.0,
        lambda k: (2 * k - 2) ** 2 / (2 * k - 1) ** 2 * (4 * k - 1) / (4 * k - 5),
        -5.0 / 8.0,
        lambda k: (2 * k - 1) ** 2 / (2 * k) ** 2 * (4 * k + 1) / (4 * k - 3),
    )


def pow_cf_general(lam, q):
    """``lam**q = [1; 2q phi/(-1 - q phi), (q^2 - (k-1)^2) phi^2 / (-(2k-1))]``.

    No division by ``phi`` occurs, so this form is valid at ``lam == 1``.
    """
    q = _check_q(q)
    phi = cayley(lam)
    phi2 = phi * phi

    def pairs():
        yield (2.0 * q) * phi, -1.0 - q * phi
        k = 2
        while True:
            yield (q * q - (k - 1) ** 2) * phi2, -(2.0 * k - 1.0)
            k += 1

    return ScalarCF(1.0, pairs)


def ln_cf_general(lam):
    """``ln lam = [0; -2 phi/1, -phi^2/3, -4 phi^2/5, ..., -(k-1)^2 phi^2/(2k-1)]``."""
    phi = cayley(lam)
    phi2 = phi * phi

    def pairs():
        yield -2.0 * phi, 1.0
        k = 2
        while True:
            yield -float((k - 1) ** 2) * phi2, 2.0 * k - 1.0
            k += 1

    return ScalarCF(0.0, pairs)


def _inv_phi(lam):
    phi = cayley(lam)
    if abs(phi) < _config.PHI_TOL:
        raise DegeneratePhiError(
            f"|phi({lam})| = {abs(phi):.3g} is below {_config.PHI_TOL:g}; use the general form"
        )
    return phi, 1.0 / phi


def pow_cf_simple(lam, q):
    """Simple continued fraction ``[1; 1/c*_1, 1/c*_2, ...]`` of ``lam**q``."""
    q = _check_q(q)
    phi, inv_phi = _inv_phi(lam)

    def denominators():
        yield ((-1.0 - q * phi) * inv_phi) / (2.0 * q)
        for g in power_simple_factors(q):
            yield g * inv_phi

    return ScalarCF(1.0, lambda: ((1.0, c) for c in denominators()), simple=True)


def ln_cf_simple(lam):
    """Simple continued fraction ``[0; 1/d*_1, 1/d*_2, ...]`` of ``ln lam``."""
    _, inv_phi = _inv_phi(lam)

    def denominators():
        yield -0.5 * inv_phi
        for h in log_simple_factors():
            yield h * inv_phi

    return ScalarCF(0.0, lambda: ((1.0, d) for d in denominators()), simple=True)


def to_simple(cf):
    """Equivalent simple continued fraction with identical convergents.

    ``a*_k = a_k r_k`` with ``r_1 = 1/b_1`` and ``r_k = 1/(b_k r_{k-1})``, i.e.
    the alternating products ``b_1 b_3 .../(b_2 b_4 ...)`` accumulated one
    factor at a time.
    """
    if cf.simple:
        return cf

    def pairs():
        r = None
        for k, (bk, ak) in enumerate(cf.pairs(), start=1):
            if bk == 0.0:
                raise ZeroNumeratorError(f"partial numerator b_{k} is zero")
            r = 1.0 / bk if r is None else 1.0 / (bk * r)
            yield 1.0, ak * r

    return ScalarCF(cf.head, pairs, simple=True)


def product_pairs(c_pq, d_pq, mul, inv, variant="mixed"):
    """Partial quotients of a continued fraction whose n-th convergent is C_n D_n.

    ``c_pq`` and ``d_pq`` iterate the unscaled numerator/denominator pairs
    ``(p_k, q_k)`` of two simple continued fractions from k = -1 on.  ``mul``
    and ``inv`` supply multiplication and inversion so the same assembly
    serves scalars and commuting matrices.

    ``variant="mixed"`` mixes numerators and denominators in the auxiliary
    sequences and requires that one of the two heads is zero.
    ``variant="denominators"`` uses denominators only; it is kept for
    diagnostics and does not reproduce C_n D_n beyond n = 1.

    Raises
    ------
    DegenerateDepthError
        when a partial denominator ``e_n - f_n`` vanishes.
    """
    if variant not in ("mixed", "denominators"):
        raise ValueError(f"unknown product variant {variant!r}")
    c_pq = iter(c_pq)
    d_pq = iter(d_pq)
    p, q, pt, qt = [], [], [], []

    def load():
        pc, qc = next(c_pq)
        pd, qd = next(d_pq)
        p.append(pc)
        q.append(qc)
        pt.append(pd)
        qt.append(qd)

    # list index j holds index j - 1
    load()
    load()

    def idx(k):
        return k + 1

    def e(n):
        i = idx
        if variant == "mixed":
            inner = mul(q[i(n - 2)], p[i(n - 1)]) + mul(qt[i(n - 1)], pt[i(n - 2)])
        else:
            inner = mul(q[i(n - 2)], q[i(n - 1)]) + mul(qt[i(n - 2)], qt[i(n - 1)])
        return mul(mul(q[i(n)], qt[i(n)]), inner)

    def f(n):
        i = idx
        if variant == "mixed":
            inner = mul(q[i(n)], p[i(n - 1)]) + mul(qt[i(n - 1)], pt[i(n)])
        else:
            inner = mul(q[i(n - 1)], q[i(n)]) + mul(qt[i(n - 1)], qt[i(n)])
        return mul(mul(q[i(n - 2)], qt[i(n - 2)]), inner)

    c0, d0 = p[idx(0)], pt[idx(0)]
    if variant == "mixed" and np.any(mul(c0, d0) != 0):
        raise ValueError("the mixed product form needs one of the two heads to be zero")

    n = 0
    e_prev = None
    while True:
        try:
            load()
        except StopIteration:
            return
        n += 1
        i = idx
        if n == 1:
            qq1 = mul(q[i(1)], qt[i(1)])
            yield mul(p[i(1)], pt[i(1)]) - mul(mul(c0, d0), qq1), qq1
            continue
        if variant == "mixed" and n == 2:
            b = mul(q[i(2)], p[i(1)]) + mul(qt[i(1)], pt[i(2)])
            a = mul(p[i(2)], pt[i(2)])
            e_prev = e(2)
            yield b, a
            continue
        en, fn = e(n), f(n)
        a = en - fn
        if np.all(a == 0):
            raise DegenerateDepthError(f"zero partial denominator at depth {n}")
        qq1 = mul(q[i(1)], qt[i(1)])
        if variant == "denominators" and n == 2:
            b = mul(qq1, fn)
        elif variant == "mixed" and n == 3:
            b = mul(mul(inv(qq1), e_prev), fn)
        else:
            b = mul(e_prev, fn)
        e_prev = en
        yield b, a


def product_cf(c, d, variant="mixed"):
    """Continued fraction whose n-th convergent equals ``C_n * D_n``.

    Parameters
    ----------
    c, d : ScalarCF
        Simple continued fractions (all partial numerators 1).  For the
        default variant one of the two heads must be zero.
    variant : {"mixed", "denominators"}
        See :func:`product_pairs`.
    """
    if not (c.simple and d.simple):
        raise ValueError("product_cf expects two simple continued fractions")
    head = c.head * d.head

    def pairs():
        return product_pairs(c.pq_stream(), d.pq_stream(), lambda x, y: x * y, lambda x: 1.0 / x, variant)

    return ScalarCF(head, pairs)


def powln_scalar(lam, q, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL):
    """``lam**q * ln(lam)`` from the product continued fraction.

    Returns
    -------
    value : float
        Last convergent computed.
    table : ConvergenceTable
        Rows ``n = 1 ..`` with the signed error ``lam**q ln lam - F_n``;
        stops at the first n with ``|F_n - F_{n-1}| < tol`` or at ``max_n``.
    """
    q = _check_q(q)
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    exact = lam**q * math.log(lam)
    params = {"lambda": float(lam), "q": q, "max_n": int(max_n), "tol": float(tol)}
    if abs(cayley(lam)) < _config.PHI_TOL:
        rows = (TableRow(1, np.zeros((1, 1)), np.array([[exact]])),)
        return 0.0, ConvergenceTable("powln-scalar", params, "reference - F_n", rows)
    cf = product_cf(pow_cf_simple(lam, q), ln_cf_simple(lam))
    conv = cf.convergents(max_n)
    rows = []
    prev = cf.head
    for n, fn in enumerate(conv, start=1):
        fn = float(fn)
        rows.append(TableRow(n, np.array([[fn]]), np.array([[exact - fn]])))
        done = abs(fn - prev) < tol
        prev = fn
        if done:
            break
    return prev, ConvergenceTable("powln-scalar", params, "reference - F_n", tuple(rows))
