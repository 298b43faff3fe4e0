"""Shipped example inputs and the published convergence tables they reproduce.

Published values are kept as the printed strings so that the resolution of
each entry (one unit in its last printed digit) can be recovered exactly.
"""

import json
from decimal import Decimal
from fractions import Fraction
from importlib import resources

import numpy as np

from .io import parse_matrix_text

__all__ = [
    "printed_tables",
    "printed_value",
    "printed_matrix",
    "load_fixture",
    "EXAMPLE1_CASES",
]


def _data(name):
    return resources.files("entropy_cf").joinpath("data", name).read_text(encoding="utf-8")


def printed_tables():
    return json.loads(_data("printed_tables.json"))


def printed_value(text):
    """``(value, unit)`` where ``unit`` is one unit in the last printed digit."""
    d = Decimal(text)
    return float(d), float(Decimal(1).scaleb(d.as_tuple().exponent))


def printed_matrix(rows):
    """Values and units of a printed matrix as two arrays."""
    pairs = [[printed_value(x) for x in row] for row in rows]
    return np.array([[v for v, _ in r] for r in pairs]), np.array([[u for _, u in r] for r in pairs])


def load_fixture(name):
    """A shipped matrix file (``example2_A.mat``, ``example3_A.mat``, ...)."""
    return parse_matrix_text(_data(name))


def fraction(text):
    return float(Fraction(text))


EXAMPLE1_CASES = tuple(
    (fraction(r["lambda"]), fraction(r["q"]), r["lambda"], r["q"])
    for r in printed_tables()["example1"]["rows"]
)
