"""Matrix file formats.

Text::

    2
    2 1
    1 3

The first line holds the dimension ``m``; it is followed by ``m`` lines of
``m`` whitespace-separated decimal literals.  Blank lines and ``#`` comments
are ignored.  JSON alternative: ``{"dim": m, "rows": [[...], ...]}``.
"""

import json
import math
from pathlib import Path

import numpy as np

from .errors import MatrixParseError

__all__ = ["parse_matrix_text", "parse_matrix_file", "format_matrix", "matrix_to_json"]


def _number(token, line, column):
    try:
        value = float(token)
    except ValueError:
        raise MatrixParseError(f"not a number: {token!r}", line, column) from None
    if not math.isfinite(value):
        raise MatrixParseError(f"non-finite entry {token!r}", line, column)
    return value


def _tokens(line):
    """``(column, token)`` pairs, columns 1-based."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((i + 1, line[i:j]))
        i = j
    return out


def _parse_text(text):
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            lines.append((number, body))
    if not lines:
        raise MatrixParseError("empty input", 1, 1)
    number, body = lines[0]
    head = _tokens(body)
    if len(head) != 1:
        raise MatrixParseError("first line must hold only the dimension", number, 1)
    col, token = head[0]
    try:
        m = int(token)
    except ValueError:
        raise MatrixParseError(f"dimension {token!r} is not an integer", number, col) from None
    if m < 1:
        raise MatrixParseError(f"dimension must be positive, got {m}", number, col)
    rows = lines[1:]
    if len(rows) != m:
        where = rows[-1][0] if rows else number
        raise MatrixParseError(f"expected {m} rows, found {len(rows)}", where, 1)
    out = np.empty((m, m))
    for i, (number, body) in enumerate(rows):
        toks = _tokens(body)
        if len(toks) != m:
            col = toks[m][0] if len(toks) > m else len(body.rstrip()) + 1
            raise MatrixParseError(f"row {i + 1} has {len(toks)} entries, expected {m}", number, col)
        for j, (col, token) in enumerate(toks):
            out[i, j] = _number(token, number, col)
    return out


def _parse_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "dim" not in doc or "rows" not in doc:
        raise MatrixParseError('JSON matrix must be an object with "dim" and "rows"')
    m, rows = doc["dim"], doc["rows"]
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise MatrixParseError(f'"dim" must be a positive integer, got {m!r}')
    if not isinstance(rows, list) or len(rows) != m:
        raise MatrixParseError(f'"rows" must be a list of {m} rows')
    out = np.empty((m, m))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise MatrixParseError(f"row {i + 1} must be a list of {m} numbers")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise MatrixParseError(f"row {i + 1}, entry {j + 1} is not a finite number: {x!r}")
            out[i, j] = float(x)
    return out


def parse_matrix_text(text):
    """Parse either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def parse_matrix_file(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_matrix_text(text)
    except MatrixParseError as exc:
        raise MatrixParseError(f"{path}: {exc.reason}", exc.line, exc.column) from None


def format_matrix(a):
    """Text-format rendering that round-trips through :func:`parse_matrix_text`."""
    a = np.asarray(a, dtype=np.float64)
    lines = [str(a.shape[0])]
    lines += [" ".join(repr(float(x)) for x in row) for row in a]
    return "\n".join(lines) + "\n"


def matrix_to_json(a):
    a = np.asarray(a, dtype=np.float64)
    return json.dumps({"dim": a.shape[0], "rows": a.tolist()})
