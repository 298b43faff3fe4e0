import importlib.util
import os


def _flag(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() not in {"0", "false", "no", "off", ""}


def _numba_available():
    return importlib.util.find_spec("numba") is not None


# ENTROPY_CF_NUMBA=0 forces the pure-numpy kernels.
USE_NUMBA = _flag("ENTROPY_CF_NUMBA", True) and _numba_available()

SYM_TOL = 1e-10
PD_TOL = 1e-12
COND_TOL = 1e-14
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 64
RESCALE_LIMIT = 1e100
EIG_GAP = 1e-8
PHI_TOL = 1e-13
IDENTITY_TOL = 1e-12

DEFAULT_MAX_N = 12
DEFAULT_TOL = 1e-12


def default_tol():
    """Default stopping tolerance, overridable with ``ENTROPY_CF_TOL``."""
    value = os.environ.get("ENTROPY_CF_TOL")
    if value is None:
        return DEFAULT_TOL
    return float(value)
