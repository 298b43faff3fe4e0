"""Matrix continued-fraction expansions of ``A^q``, ``ln A``, ``A^q ln A`` and of
the generalized operator entropy and divergence of SPD matrices, together with
an independent spectral reference implementation."""

from .cf import (
    CFResult,
    ConvergentState,
    MatrixCF,
    cf_convergent,
    cf_eval,
    cf_step,
    equivalence_transform,
    initial_state,
    iter_convergents,
    scale_transform,
)
from .errors import (
    DegenerateDepthError,
    DegeneratePhiError,
    DimensionMismatchError,
    EntropyCFError,
    MatrixParseError,
    NoConvergenceError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    SingularMatrixError,
    ZeroNumeratorError,
)
from .expansions import (
    divergence_Dq,
    entropy_Sn,
    entropy_Sq,
    ln_series,
    matrix_ln_cf,
    matrix_phi,
    matrix_pow_cf,
    pow_via_exp_ln,
    powln_matrix,
    relative_entropy_cf,
    relative_entropy_S,
)
from .io import format_matrix, parse_matrix_file, parse_matrix_text
from .linalg import (
    SpdMatrix,
    SpectralDecomposition,
    inverse,
    jacobi_eigen,
    maxabs_diff,
    solve,
    spd_inv_sqrt,
    spd_sqrt,
    validate_spd,
)
from .oracle import OracleReport, oracle_divergence, oracle_entropy, oracle_fn
from .scalar import (
    ScalarCF,
    cayley,
    ln_cf_general,
    ln_cf_simple,
    pow_cf_general,
    pow_cf_simple,
    powln_scalar,
    product_cf,
    to_simple,
)
from .tables import ConvergenceTable, TableRow

__version__ = "0.1.0"

__all__ = [
    "CFResult",
    "ConvergentState",
    "MatrixCF",
    "cf_convergent",
    "cf_eval",
    "cf_step",
    "equivalence_transform",
    "initial_state",
    "iter_convergents",
    "scale_transform",
    "DegenerateDepthError",
    "DegeneratePhiError",
    "DimensionMismatchError",
    "EntropyCFError",
    "MatrixParseError",
    "NoConvergenceError",
    "NotPositiveDefiniteError",
    "NotSymmetricError",
    "SingularMatrixError",
    "ZeroNumeratorError",
    "divergence_Dq",
    "entropy_Sn",
    "entropy_Sq",
    "ln_series",
    "matrix_ln_cf",
    "matrix_phi",
    "matrix_pow_cf",
    "pow_via_exp_ln",
    "powln_matrix",
    "relative_entropy_cf",
    "relative_entropy_S",
    "format_matrix",
    "parse_matrix_file",
    "parse_matrix_text",
    "SpdMatrix",
    "SpectralDecomposition",
    "inverse",
    "jacobi_eigen",
    "maxabs_diff",
    "solve",
    "spd_inv_sqrt",
    "spd_sqrt",
    "validate_spd",
    "OracleReport",
    "oracle_divergence",
    "oracle_entropy",
    "oracle_fn",
    "ScalarCF",
    "cayley",
    "ln_cf_general",
    "ln_cf_simple",
    "pow_cf_general",
    "pow_cf_simple",
    "powln_scalar",
    "product_cf",
    "to_simple",
    "ConvergenceTable",
    "TableRow",
    "__version__",
]
