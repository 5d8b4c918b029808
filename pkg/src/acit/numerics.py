"""Scalar tower shared by all geometric routines.

Two numeric modes coexist in this package:

* **exact mode** -- coordinates are :class:`fractions.Fraction` (or ``int``,
  which is coerced to ``Fraction`` on construction).  Arithmetic is closed
  and every comparison is decided exactly, with no tolerance.
* **float mode** -- coordinates are ``float``.  Two values within the global
  tolerance ``TOLERANCE`` of each other compare equal; float mode is a
  best-effort fast path and exact mode is the ground truth.

The mode of a value is carried by its *type*, so most algorithms are written
once and dispatch through the comparison helpers below.  Vectors are plain
tuples of scalars; mixing Fractions and floats inside one vector is a bug
(Python would silently demote to float), so construction goes through
:func:`exact_vector` / :func:`float_vector`.
"""

from __future__ import annotations

import math
from fractions import Fraction

Scalar = Fraction | int | float
Vector = tuple

TOLERANCE: float = 1e-9


def set_tolerance(tau: float) -> None:
    """Set the global float-mode comparison tolerance."""
    global TOLERANCE
    if tau <= 0:
        raise ValueError("tolerance must be positive")
    TOLERANCE = float(tau)


def get_tolerance() -> float:
    return TOLERANCE


def is_exact(x: Scalar) -> bool:
    """True if ``x`` lives in the exact (rational) mode."""
    return isinstance(x, (Fraction, int))


def sign(x: Scalar) -> int:
    """Sign of ``x``: -1, 0 or +1.  Tolerance-aware in float mode."""
    if isinstance(x, float):
        if abs(x) <= TOLERANCE:
            return 0
        return 1 if x > 0 else -1
    if x == 0:
        return 0
    return 1 if x > 0 else -1


def eq(a: Scalar, b: Scalar) -> bool:
    return sign(a - b) == 0


def lt(a: Scalar, b: Scalar) -> bool:
    return sign(a - b) < 0


def le(a: Scalar, b: Scalar) -> bool:
    return sign(a - b) <= 0


def is_zero(x: Scalar) -> bool:
    return sign(x) == 0


def as_exact(x) -> Fraction:
    """Coerce to Fraction.  Accepts int, Fraction and numeric strings.

    Floats are rejected: converting a rounded float back to a rational would
    silently launder float error into "exact" data.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot losslessly convert {type(x).__name__} to Fraction")


def as_float(x: Scalar) -> float:
    return float(x)


def exact_vector(values) -> Vector:
    return tuple(as_exact(v) for v in values)


def float_vector(values) -> Vector:
    return tuple(float(v) for v in values)


def vector_is_exact(v: Vector) -> bool:
    return all(is_exact(x) for x in v)


def zero_vector(d: int, exact: bool) -> Vector:
    z = Fraction(0) if exact else 0.0
    return tuple(z for _ in range(d))


# -- elementwise vector algebra (tuples in, tuples out) ---------------------

def vdot(u: Vector, v: Vector) -> Scalar:
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(u: Vector, s: Scalar) -> Vector:
    return tuple(a * s for a in u)


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vnorm2(u: Vector) -> Scalar:
    """Squared Euclidean norm (exact in rational mode; no square roots)."""
    return sum(a * a for a in u)


def vnorm1(u: Vector) -> Scalar:
    return sum(abs(a) for a in u)


def vnorm(u: Vector) -> float:
    """Euclidean norm as a float.  Reporting only; algorithms use vnorm2."""
    return math.sqrt(float(vnorm2(u)))


def parse_scalar(text: str, exact: bool) -> Scalar:
    """Parse ``"3/4"`` or ``"0.75"`` losslessly, then pick the mode."""
    f = Fraction(text)
    return f if exact else float(f)


def format_scalar(x: Scalar) -> str:
    """Serialize a scalar so that parse(format(x)) round-trips exactly."""
    if isinstance(x, float):
        return repr(x)
    f = as_exact(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
