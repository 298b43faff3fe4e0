"""Hot inner loops, in a numba and a pure-numpy flavour.

Both flavours implement exactly the same arithmetic; which one is used by the
rest of the package is decided once at import time from ``ENTROPY_CF_NUMBA``
(see :mod:`entropy_cf._config`).  The benchmark in ``benchmarks/`` calls both
explicitly through :func:`get_kernels`.
"""

import math

import numpy as np

from . import _config

_TINY = 1e-300


# ---------------------------------------------------------------------------
# cyclic Jacobi
# ---------------------------------------------------------------------------


def _jacobi_numpy(a, tol, max_sweeps):
    """Cyclic Jacobi on a copy of the symmetric matrix ``a``.

    Returns ``(eigenvalues, vectors, sweeps, converged)`` with eigenvalues in
    the diagonal order left by the rotations (unsorted).
    """
    a = np.array(a, dtype=np.float64, copy=True)
    m = a.shape[0]
    v = np.eye(m)
    target = tol * math.sqrt(float(np.sum(a * a)))
    for sweep in range(max_sweeps + 1):
        offdiag = a.copy()
        np.fill_diagonal(offdiag, 0.0)
        off = math.sqrt(float(np.sum(offdiag * offdiag)))
        if off <= target:
            return np.diag(a).copy(), v, sweep, True
        if sweep == max_sweeps:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if abs(apq) < _TINY:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v, max_sweeps, False


def _batch_cf_numpy(head, b, a, limit):
    """Convergents F_1..F_n of many scalar continued fractions at once.

    ``head`` has shape (m,), ``b`` and ``a`` shape (m, n).  A convergent whose
    denominator is exactly zero is reported as NaN.
    """
    head = np.asarray(head, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    m, n = b.shape
    p_prev = np.ones(m)
    p_cur = head.copy()
    q_prev = np.zeros(m)
    q_cur = np.ones(m)
    out = np.empty((m, n))
    for k in range(n):
        p_new = a[:, k] * p_cur + b[:, k] * p_prev
        q_new = a[:, k] * q_cur + b[:, k] * q_prev
        p_prev, p_cur, q_prev, q_cur = p_cur, p_new, q_cur, q_new
        big = np.maximum(np.abs(p_cur), np.abs(q_cur))
        over = big > limit
        if np.any(over):
            _, e = np.frexp(big[over])
            p_prev[over] = np.ldexp(p_prev[over], -e)
            p_cur[over] = np.ldexp(p_cur[over], -e)
            q_prev[over] = np.ldexp(q_prev[over], -e)
            q_cur[over] = np.ldexp(q_cur[over], -e)
        with np.errstate(divide="ignore", invalid="ignore"):
            out[:, k] = np.where(q_cur != 0.0, p_cur / q_cur, np.nan)
    return out


_NUMBA_KERNELS = None


def _build_numba():
    import numba as nb

    jit = nb.njit(cache=True, nogil=True)

    @jit
    def jacobi(a_in, tol, max_sweeps):
        a = a_in.copy()
        m = a.shape[0]
        v = np.eye(m)
        fro = 0.0
        for i in range(m):
            for j in range(m):
                fro += a[i, j] * a[i, j]
        target = tol * math.sqrt(fro)
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for i in range(m):
                for j in range(m):
                    if i != j:
                        off += a[i, j] * a[i, j]
            if math.sqrt(off) <= target:
                return np.diag(a).copy(), v, sweep, True
            if sweep == max_sweeps:
                break
            for p in range(m - 1):
                for q in range(p + 1, m):
                    apq = a[p, q]
                    if abs(apq) < _TINY:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(m):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[k, q] = s * akp + c * akq
                    for k in range(m):
                        apk = a[p, k]
                        aqk = a[q, k]
                        a[p, k] = c * apk - s * aqk
                        a[q, k] = s * apk + c * aqk
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    for k in range(m):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq
        return np.diag(a).copy(), v, max_sweeps, False

    @jit
    def batch_cf(head, b, a, limit):
        m, n = b.shape
        out = np.empty((m, n))
        for i in range(m):
            p_prev = 1.0
            p_cur = head[i]
            q_prev = 0.0
            q_cur = 1.0
            for k in range(n):
                p_new = a[i, k] * p_cur + b[i, k] * p_prev
                q_new = a[i, k] * q_cur + b[i, k] * q_prev
                p_prev = p_cur
                p_cur = p_new
                q_prev = q_cur
                q_cur = q_new
                big = max(abs(p_cur), abs(q_cur))
                if big > limit:
                    _, e = math.frexp(big)
                    p_prev = math.ldexp(p_prev, -e)
                    p_cur = math.ldexp(p_cur, -e)
                    q_prev = math.ldexp(q_prev, -e)
                    q_cur = math.ldexp(q_cur, -e)
                if q_cur != 0.0:
                    out[i, k] = p_cur / q_cur
                else:
                    out[i, k] = np.nan
        return out

    def jacobi_wrapper(a, tol, max_sweeps):
        w, v, sweeps, ok = jacobi(np.ascontiguousarray(a, dtype=np.float64), tol, max_sweeps)
        return w, v, int(sweeps), bool(ok)

    def batch_wrapper(head, b, a, limit):
        return batch_cf(
            np.ascontiguousarray(head, dtype=np.float64),
            np.ascontiguousarray(b, dtype=np.float64),
            np.ascontiguousarray(a, dtype=np.float64),
            limit,
        )

    return {"jacobi": jacobi_wrapper, "batch_cf": batch_wrapper}


_NUMPY_KERNELS = {"jacobi": _jacobi_numpy, "batch_cf": _batch_cf_numpy}


def get_kernels(backend=None):
    """Return the kernel table for ``"numba"`` or ``"numpy"``.

    ``None`` selects whatever the environment flag picked at import time.
    """
    global _NUMBA_KERNELS
    if backend is None:
        backend = BACKEND
    if backend == "numpy":
        return _NUMPY_KERNELS
    if backend == "numba":
        if _NUMBA_KERNELS is None:
            _NUMBA_KERNELS = _build_numba()
        return _NUMBA_KERNELS
    raise ValueError(f"unknown kernel backend {backend!r}")


BACKEND = "numba" if _config.USE_NUMBA else "numpy"


def jacobi_kernel(a, tol=_config.JACOBI_TOL, max_sweeps=_config.JACOBI_MAX_SWEEPS):
    return get_kernels()["jacobi"](a, tol, max_sweeps)


def batch_cf_convergents(head, b, a, limit=_config.RESCALE_LIMIT):
    b = np.atleast_2d(np.asarray(b, dtype=np.float64))
    a = np.atleast_2d(np.asarray(a, dtype=np.float64))
    head = np.atleast_1d(np.asarray(head, dtype=np.float64))
    if b.shape != a.shape or head.shape[0] != b.shape[0]:
        raise ValueError("head, b and a shapes disagree")
    if b.shape[1] == 0:
        return np.empty(b.shape)
    return get_kernels()["batch_cf"](head, b, a, limit)
