"""Matrix continued fractions ``A_0 + K(B_n / A_n)`` and their convergents.

Partial quotients ``B_n / A_n`` follow the left-division convention of
:mod:`entropy_cf.linalg`, so the n-th convergent is ``F_n = Q_n^{-1} P_n`` with

    P_n = A_n P_{n-1} + B_n P_{n-2},   P_{-1} = I,  P_0 = A_0,
    Q_n = A_n Q_{n-1} + B_n Q_{n-2},   Q_{-1} = 0,  Q_0 = I.
"""

import collections.abc
import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

import numpy as np

from . import _config
from .errors import DimensionMismatchError, NoConvergenceError, SingularMatrixError
from .linalg import inverse, maxabs, maxabs_diff, solve

__all__ = [
    "MatrixCF",
    "ConvergentState",
    "CFResult",
    "initial_state",
    "cf_step",
    "cf_convergent",
    "iter_states",
    "iter_convergents",
    "cf_eval",
    "equivalence_transform",
    "scale_transform",
]

Pair = tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class MatrixCF:
    """A continued fraction with a matrix head and lazily generated quotients.

    ``pair_source`` is called afresh each time the quotients are needed and
    must return an iterator over ``(B_n, A_n)`` for n = 1, 2, ...; it may be
    finite or unbounded.
    """

    head: np.ndarray
    pair_source: Callable[[], Iterator[Pair]]

    @property
    def dim(self):
        return self.head.shape[0]

    def pairs(self):
        return iter(self.pair_source())

    @classmethod
    def finite(cls, head, pairs):
        head = np.asarray(head, dtype=np.float64)
        frozen = [(np.asarray(b, dtype=np.float64), np.asarray(a, dtype=np.float64)) for b, a in pairs]
        return cls(head, lambda: iter(frozen))

    @classmethod
    def simple(cls, head, denominators):
        """``[head; I/A_1, I/A_2, ...]`` from a re-iterable source of ``A_k``."""
        head = np.asarray(head, dtype=np.float64)
        eye = np.eye(head.shape[0])
        if callable(denominators):
            return cls(head, lambda: ((eye, a) for a in denominators()))
        frozen = list(denominators)
        return cls(head, lambda: ((eye, a) for a in frozen))


@dataclass(frozen=True)
class ConvergentState:
    p_prev: np.ndarray
    p_cur: np.ndarray
    q_prev: np.ndarray
    q_cur: np.ndarray
    n: int = 0


class CFResult(NamedTuple):
    value: np.ndarray
    steps: int
    residual: float


def initial_state(head):
    head = np.asarray(head, dtype=np.float64)
    m = head.shape[0]
    eye = np.eye(m)
    return ConvergentState(eye, head.copy(), np.zeros((m, m)), eye, 0)


def cf_step(state, bn, an, limit=_config.RESCALE_LIMIT):
    """Advance the three-term recurrence by one partial quotient ``(bn, an)``.

    If either new numerator or denominator exceeds ``limit`` in max-abs norm
    the whole window is multiplied by a common power of two, which leaves
    every convergent ``Q^{-1} P`` unchanged.
    """
    bn = np.asarray(bn, dtype=np.float64)
    an = np.asarray(an, dtype=np.float64)
    shape = state.p_cur.shape
    if bn.shape != shape or an.shape != shape:
        raise DimensionMismatchError(
            f"partial quotient shapes {bn.shape}, {an.shape} do not match {shape}"
        )
    p_new = an @ state.p_cur + bn @ state.p_prev
    q_new = an @ state.q_cur + bn @ state.q_prev
    p_prev, q_prev = state.p_cur, state.q_cur
    big = max(maxabs(p_new), maxabs(q_new))
    if big > limit and np.isfinite(big):
        _, e = np.frexp(big)
        p_new, q_new = np.ldexp(p_new, -e), np.ldexp(q_new, -e)
        p_prev, q_prev = np.ldexp(p_prev, -e), np.ldexp(q_prev, -e)
    return ConvergentState(p_prev, p_new, q_prev, q_new, state.n + 1)


def cf_convergent(state, cond_tol=_config.COND_TOL):
    """``F_n = Q_n^{-1} P_n``; raises :class:`SingularMatrixError` if Q_n is singular."""
    if state.n == 0:
        return state.p_cur.copy()
    return solve(state.q_cur, state.p_cur, cond_tol)


def iter_states(cf, max_n=None):
    """Yield the recurrence states after 1, 2, ... steps (at most ``max_n``)."""
    state = initial_state(cf.head)
    pairs = cf.pairs()
    if max_n is not None:
        pairs = itertools.islice(pairs, max_n)
    for bn, an in pairs:
        state = cf_step(state, bn, an)
        yield state


def iter_convergents(cf, max_n=None):
    """Yield ``(n, F_n)`` for n = 1, 2, ...; singular denominators raise."""
    for state in iter_states(cf, max_n):
        yield state.n, cf_convergent(state)


def cf_eval(cf, max_n=_config.DEFAULT_MAX_N, tol=_config.DEFAULT_TOL):
    """Evaluate ``cf`` with the successive-convergent stopping rule.

    Stops at the first n with ``maxabs(F_n - F_{n-1}) < tol`` or at ``max_n``.
    Convergents with a singular denominator are skipped; if every one of them
    is singular :class:`NoConvergenceError` is raised.

    Returns
    -------
    CFResult
        ``(value, steps, residual)`` where ``residual`` is the last successive
        difference (``inf`` if no two consecutive convergents existed).
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    prev = np.asarray(cf.head, dtype=np.float64)
    best = None
    steps = 0
    residual = float("inf")
    for state in iter_states(cf, max_n):
        steps = state.n
        try:
            cur = cf_convergent(state)
        except SingularMatrixError:
            prev = None
            continue
        if prev is not None:
            residual = maxabs_diff(cur, prev)
        best = cur
        prev = cur
        if residual < tol:
            break
    if best is None:
        raise NoConvergenceError(f"every denominator Q_1..Q_{steps} was singular")
    return CFResult(best, steps, residual)


def _as_source(xs):
    if callable(xs):
        return xs
    if isinstance(xs, collections.abc.Iterator):
        raise TypeError("pass a sequence or a zero-argument callable, not a one-shot iterator")
    frozen = list(xs)
    return lambda: iter(frozen)


def equivalence_transform(cf, xs):
    """Rescale the quotients by invertible ``X_1, X_2, ...``.

    The result has quotients ``(X_k B_k X_{k-2}^{-1}, X_k A_k X_{k-1}^{-1})``
    with ``X_{-1} = X_0 = I`` and the same convergent as ``cf`` at every depth.
    ``xs`` is a sequence or a zero-argument callable returning an iterator;
    a finite ``xs`` truncates the result.
    """
    source = _as_source(xs)
    eye = np.eye(cf.dim)

    def pairs():
        inv_prev2, inv_prev1 = eye, eye
        for (bk, ak), xk in zip(cf.pairs(), source()):
            xk = np.asarray(xk, dtype=np.float64)
            yield xk @ bk @ inv_prev2, xk @ ak @ inv_prev1
            inv_prev2, inv_prev1 = inv_prev1, inverse(xk)

    return MatrixCF(np.asarray(cf.head, dtype=np.float64), pairs)


def scale_transform(cf, c, d):
    """A continued fraction converging to ``C F D`` where F is the limit of ``cf``.

    Head ``C A_0 D``; first quotients ``(B_1 D, A_1 C^{-1})`` and
    ``(B_2 C^{-1}, A_2)``; later quotients unchanged.
    """
    c = np.asarray(c, dtype=np.float64)
    d = np.asarray(d, dtype=np.float64)
    c_inv = inverse(c)

    def pairs():
        for k, (bk, ak) in enumerate(cf.pairs(), start=1):
            if k == 1:
                yield bk @ d, ak @ c_inv
            elif k == 2:
                yield bk @ c_inv, ak
            else:
                yield bk, ak

    return MatrixCF(c @ np.asarray(cf.head, dtype=np.float64) @ d, pairs)

