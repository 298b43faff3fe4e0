"""Random SPD generators and independent reference computations for the tests."""

from fractions import Fraction

import numpy as np


def random_orthogonal(rng, m):
    q, r = np.linalg.qr(rng.normal(size=(m, m)))
    return q * np.sign(np.diag(r))


def random_spd(rng, m, lo=0.2, hi=5.0, eigenvalues=None):
    """Dense SPD matrix with a random eigenbasis and spectrum in [lo, hi]."""
    if eigenvalues is None:
        eigenvalues = rng.uniform(lo, hi, size=m)
    v = random_orthogonal(rng, m)
    a = (v * np.asarray(eigenvalues, dtype=float)) @ v.T
    return (a + a.T) / 2


def random_spd_pair(rng, m, lo=0.2, hi=5.0, max_tries=10_000):
    """SPD pair whose A, B and A^{-1/2} B A^{-1/2} all have spectra in [lo, hi]."""
    for _ in range(max_tries):
        a = random_spd(rng, m, lo, hi)
        w, v = np.linalg.eigh(a)
        root = (v * np.sqrt(w)) @ v.T
        b = root @ random_spd(rng, m, lo, hi) @ root
        b = (b + b.T) / 2
        wb = np.linalg.eigvalsh(b)
        if wb[0] >= lo and wb[-1] <= hi:
            return a, b
    raise RuntimeError("rejection sampling failed")


def nested_value(head, pairs):
    """Bottom-up evaluation ``A_0 + (A_1 + (A_2 + ...)^{-1} B_2)^{-1} B_1``."""
    pairs = list(pairs)
    head = np.atleast_2d(np.asarray(head, dtype=float))
    if not pairs:
        return head
    b_last, a_last = (np.atleast_2d(np.asarray(x, dtype=float)) for x in pairs[-1])
    tail = a_last
    for k in range(len(pairs) - 2, -1, -1):
        bk1 = np.atleast_2d(np.asarray(pairs[k + 1][0], dtype=float))
        ak = np.atleast_2d(np.asarray(pairs[k][1], dtype=float))
        tail = ak + np.linalg.solve(tail, bk1)
    b1 = np.atleast_2d(np.asarray(pairs[0][0], dtype=float))
    return head + np.linalg.solve(tail, b1)


def exact_convergents(head, pairs):
    """Convergents of a scalar continued fraction in rational arithmetic."""
    p_prev, p_cur = Fraction(1), Fraction(head)
    q_prev, q_cur = Fraction(0), Fraction(1)
    out = []
    for b, a in pairs:
        b, a = Fraction(b), Fraction(a)
        p_prev, p_cur = p_cur, a * p_cur + b * p_prev
        q_prev, q_cur = q_cur, a * q_cur + b * q_prev
        out.append(p_cur / q_cur)
    return out


def exact_to_simple(pairs):
    """Simple-form denominators ``a*_k = a_k (b_{k-1} b_{k-3} ...)/(b_k b_{k-2} ...)`` in rationals."""
    pairs = [(Fraction(b), Fraction(a)) for b, a in pairs]
    out = []
    for k in range(1, len(pairs) + 1):
        num, den = Fraction(1), Fraction(1)
        for j in range(k, 0, -2):
            den *= pairs[j - 1][0]
        for j in range(k - 1, 0, -2):
            num *= pairs[j - 1][0]
        out.append(pairs[k - 1][1] * num / den)
    return out


def general_pow_pairs(phi, q, n):
    """Partial quotients of the general ``lambda**q`` expansion in rationals."""
    phi, q = Fraction(phi), Fraction(q)
    out = [(2 * q * phi, -1 - q * phi)]
    out += [((q * q - (k - 1) ** 2) * phi * phi, -(2 * k - 1)) for k in range(2, n + 1)]
    return out


def general_ln_pairs(phi, n):
    phi = Fraction(phi)
    return [(-2 * phi, 1)] + [(-((k - 1) ** 2) * phi * phi, 2 * k - 1) for k in range(2, n + 1)]
