"""Numeric comparison helpers.

Coordinates are either exact (int / Fraction, used for polygon instances)
or float (used for disk instances).  Float comparisons use the absolute
tolerance EPS.  Generated disk instances keep distinct critical values at
least GAP apart, so the tolerant comparisons decide exactly like exact
arithmetic would.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

Number = Union[int, float, Fraction]

EPS = 1e-9
GAP = 1e-6


class Point(NamedTuple):
    x: Number
    y: Number


def is_float(value: Number) -> bool:
    return isinstance(value, float)


def num_eq(a: Number, b: Number, tol: float = EPS) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= tol
    return a == b


def num_cmp(a: Number, b: Number, tol: float = EPS) -> int:
    """-1, 0, +1 comparison; floats compare equal within tol."""
    if isinstance(a, float) or isinstance(b, float):
        d = a - b
        if d > tol:
            return 1
        if d < -tol:
            return -1
        return 0
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def point_eq(p: Point, q: Point, tol: float = EPS) -> bool:
    return num_eq(p[0], q[0], tol) and num_eq(p[1], q[1], tol)


def point_cmp(p: Point, q: Point, tol: float = EPS) -> int:
    c = num_cmp(p[0], q[0], tol)
    if c:
        return c
    return num_cmp(p[1], q[1], tol)


def as_fraction(value: Number) -> Fraction:
    """Exact Fraction for a coordinate (floats convert bit-exactly)."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


def rational_to_json(value: Number):
    """Serialize a coordinate as int or exact "p/q" string."""
    f = as_fraction(value)
    if f.denominator == 1:
        return int(f)
    return f"{f.numerator}/{f.denominator}"


def rational_from_json(value) -> Fraction:
    if isinstance(value, str):
        num, den = value.split("/")
        return Fraction(int(num), int(den))
    if isinstance(value, (int, float)):
        return Fraction(value)
    raise ValueError(f"not a rational literal: {value!r}")
