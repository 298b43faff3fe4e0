"""Convergence tables and their table/json/csv renderings.

Renderings depend only on the stored floats, so equal inputs give
byte-identical output.
"""

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = ["TableRow", "ConvergenceTable"]


@dataclass(frozen=True)
class TableRow:
    """Convergent ``F_n`` and its signed difference from the reference."""

    n: int
    convergent: np.ndarray
    difference: np.ndarray

    @property
    def maxabs(self):
        return float(np.max(np.abs(self.difference)))


@dataclass(frozen=True)
class ConvergenceTable:
    command: str
    params: dict
    difference: str
    rows: tuple = field(default_factory=tuple)

    @property
    def is_scalar(self):
        return bool(self.rows) and self.rows[0].difference.shape == (1, 1)

    @property
    def final(self):
        return self.rows[-1].convergent

    def errors(self):
        """Stacked difference matrices, shape (rows, m, m)."""
        return np.stack([r.difference for r in self.rows])

    def maxabs_errors(self):
        """``max |difference_ij|`` per row."""
        return [r.maxabs for r in self.rows]

    def signed_errors(self):
        """Signed scalar differences (1x1 tables only)."""
        if not self.is_scalar:
            raise ValueError("signed_errors is defined for scalar tables only")
        return [float(r.difference[0, 0]) for r in self.rows]

    def to_dict(self):
        return {
            "command": self.command,
            "params": dict(self.params),
            "rows": [
                {"n": r.n, "matrix": r.difference.tolist(), "maxabs": r.maxabs}
                for r in self.rows
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "row", "col", "difference", "convergent", "maxabs"])
        for r in self.rows:
            m = r.difference.shape[0]
            for i in range(m):
                for j in range(m):
                    w.writerow([r.n, i + 1, j + 1, repr(float(r.difference[i, j])),
                                repr(float(r.convergent[i, j])), repr(r.maxabs)])
        return buf.getvalue()

    def to_text(self):
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"# {self.command} ({params})", f"# difference: {self.difference}"]
        if self.is_scalar:
            lines.append(f"{'n':>3}  {'F_n':>22}  {'difference':>22}")
            for r in self.rows:
                lines.append(f"{r.n:>3}  {r.convergent[0, 0]:>22.15e}  {r.difference[0, 0]:>22.15e}")
        else:
            for r in self.rows:
                lines.append(f"n = {r.n}  maxabs = {r.maxabs:.10e}")
                for row in r.difference:
                    lines.append("  " + "  ".join(f"{x:>18.10e}" for x in row))
        return "\n".join(lines) + "\n"

    def render(self, fmt="table"):
        if fmt == "table":
            return self.to_text()
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")
