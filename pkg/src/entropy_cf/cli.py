"""``entropy-cf`` command-line front end.

Exit codes: 0 success, 2 unreadable input or bad arguments, 3 matrix not
symmetric positive definite, 4 numerical failure.
"""

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import _config, golden
from .errors import (
    DegenerateDepthError,
    DegeneratePhiError,
    DimensionMismatchError,
    MatrixParseError,
    NoConvergenceError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    SingularMatrixError,
)
from .expansions import divergence_Dq, entropy_Sn_convergence, entropy_Sq, powln_matrix
from .io import parse_matrix_file
from .linalg import validate_spd
from .oracle import oracle_fn
from .scalar import powln_scalar
from .tables import ConvergenceTable, TableRow

EXIT_PARSE = 2
EXIT_NOT_SPD = 3
EXIT_NUMERICAL = 4


class UsageError(Exception):
    pass


def _number(text):
    """Decimal or fraction literal such as ``0.5`` or ``1/3``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or fraction: {text!r}") from None


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _check_q(q):
    if not 0.0 < q < 1.0:
        raise UsageError(f"--q must lie in (0, 1), got {q}")
    return q


def _load_spd(path):
    return validate_spd(parse_matrix_file(path))


def _cmd_powln_scalar(args):
    if not args.lam > 0:
        raise UsageError(f"--lambda must be positive, got {args.lam}")
    _, table = powln_scalar(args.lam, _check_q(args.q), args.max_n, args.tol)
    return [table]


def _cmd_powln(args):
    _, table = powln_matrix(_load_spd(args.a), _check_q(args.q), args.max_n, args.tol)
    return [table]


def _cmd_entropy(args):
    _, table = entropy_Sq(_load_spd(args.a), _load_spd(args.b), _check_q(args.q), args.max_n, args.tol)
    return [table]


def _cmd_entropy_n(args):
    _, table = entropy_Sn_convergence(_load_spd(args.a), _load_spd(args.b), args.n, args.max_n, args.tol)
    return [table]


def _cmd_divergence(args):
    _, table = divergence_Dq(_load_spd(args.a), _load_spd(args.b), _check_q(args.q), args.max_n, args.tol)
    return [table]


def _cmd_eval_oracle(args):
    if args.fn in ("pow", "powln"):
        if args.q is None:
            raise UsageError(f"--fn {args.fn} needs --q")
        _check_q(args.q)
    a = _load_spd(args.a)
    report = oracle_fn(a, args.fn, args.q)
    params = {"fn": args.fn, "q": args.q, "dim": a.dim, "conditioning": report.conditioning}
    row = TableRow(0, report.value, report.value)
    return [ConvergenceTable("eval-oracle", params, "value", (row,))]


def _cmd_make_tables(args):
    third = 1.0 / 3.0
    a2 = validate_spd(golden.load_fixture("example2_A.mat"))
    a3 = validate_spd(golden.load_fixture("example3_A.mat"))
    b3 = validate_spd(golden.load_fixture("example3_B.mat"))
    tables = [powln_scalar(lam, q, args.max_n, args.tol)[1] for lam, q, _, _ in golden.EXAMPLE1_CASES]
    tables.append(powln_matrix(a2, third, args.max_n, args.tol)[1])
    tables.append(entropy_Sq(a3, b3, third, args.max_n, args.tol)[1])
    tables.append(divergence_Dq(a3, b3, third, args.max_n, args.tol)[1])
    return tables


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=_positive_int, default=_config.DEFAULT_MAX_N,
                        help="largest convergent index (default %(default)s)")
    common.add_argument("--tol", type=float, default=None,
                        help="stop once successive convergents differ by less (default "
                             "ENTROPY_CF_TOL or 1e-12)")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")

    parser = argparse.ArgumentParser(
        prog="entropy-cf",
        description="Matrix continued-fraction evaluation of A^q ln A, S_q(A|B) and D_q(A|B).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("powln-scalar", parents=[common], help="lambda^q ln(lambda) for a real lambda")
    p.add_argument("--lambda", dest="lam", type=_number, required=True)
    p.add_argument("--q", type=_number, required=True)
    p.set_defaults(run=_cmd_powln_scalar)

    p = sub.add_parser("powln", parents=[common], help="A^q ln A")
    p.add_argument("a", metavar="A")
    p.add_argument("--q", type=_number, required=True)
    p.set_defaults(run=_cmd_powln)

    for name, run, text in (
        ("entropy", _cmd_entropy, "generalized operator entropy S_q(A|B)"),
        ("divergence", _cmd_divergence, "operator divergence D_q(A|B)"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("a", metavar="A")
        p.add_argument("b", metavar="B")
        p.add_argument("--q", type=_number, required=True)
        p.set_defaults(run=run)

    p = sub.add_parser("entropy-n", parents=[common], help="S_n(A|B) for a positive integer n")
    p.add_argument("a", metavar="A")
    p.add_argument("b", metavar="B")
    p.add_argument("--n", type=_positive_int, required=True)
    p.set_defaults(run=_cmd_entropy_n)

    p = sub.add_parser("eval-oracle", parents=[common], help="spectral reference value of f(A)")
    p.add_argument("a", metavar="A")
    p.add_argument("--fn", choices=("pow", "ln", "powln"), required=True)
    p.add_argument("--q", type=_number, default=None)
    p.set_defaults(run=_cmd_eval_oracle)

    p = sub.add_parser("make-tables", parents=[common], help="regenerate the shipped example tables")
    p.set_defaults(run=_cmd_make_tables)
    return parser


def _render(tables, fmt):
    if fmt == "json" and len(tables) > 1:
        return json.dumps([t.to_dict() for t in tables], indent=2) + "\n"
    return "\n".join(t.render(fmt) for t in tables)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is None:
            args.tol = _config.default_tol()
        if not args.tol > 0:
            raise UsageError(f"tolerance must be positive, got {args.tol}")
        with np.errstate(all="ignore"):
            tables = args.run(args)
    except (NotSymmetricError, NotPositiveDefiniteError) as exc:
        print(f"entropy-cf: not symmetric positive definite: {exc}", file=sys.stderr)
        return EXIT_NOT_SPD
    except (SingularMatrixError, NoConvergenceError, DegenerateDepthError, DegeneratePhiError) as exc:
        print(f"entropy-cf: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, MatrixParseError, DimensionMismatchError, ValueError) as exc:
        print(f"entropy-cf: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(_render(tables, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
