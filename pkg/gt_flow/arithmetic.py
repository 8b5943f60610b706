"""Scalar arithmetic shared by the exact-rational and float code paths.

Every numeric routine in gt_flow takes an ``exact`` switch. In exact mode
values are ``fractions.Fraction`` and nothing is ever rounded; in float mode
values are Python floats backed by numpy / scipy.
"""

from fractions import Fraction
import math
from typing import Sequence

import numpy as np
from scipy import special
import sympy

from gt_flow.errors import DomainError
from gt_flow.types import Scalar


def to_fraction(value) -> Fraction:
    """Converts ints, floats and Fractions to a Fraction without rounding."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    return Fraction(float(value))


def convert(value, exact: bool) -> Scalar:
    return to_fraction(value) if exact else float(value)


def is_integer(value) -> bool:
    return to_fraction(value).denominator == 1


def _as_int(value) -> int:
    fraction = to_fraction(value)
    if fraction.denominator != 1:
        raise DomainError(f"Exact Gamma needs an integer argument, got {value}")
    return int(fraction)


def gamma(x, exact: bool) -> Scalar:
    if exact:
        n = _as_int(x)
        if n <= 0:
            raise DomainError(f"Gamma has a pole at {n}")
        return Fraction(math.factorial(n - 1))
    return float(special.gamma(float(x)))


def rgamma(x, exact: bool) -> Scalar:
    """Reciprocal Gamma function, zero at the poles."""
    if exact:
        n = _as_int(x)
        if n <= 0:
            return Fraction(0)
        return Fraction(1, math.factorial(n - 1))
    return float(special.rgamma(float(x)))


def log_gamma(x) -> float:
    return float(special.gammaln(float(x)))


def exact_sqrt(value: Fraction) -> Fraction:
    """Square root of a rational that is the square of a rational.

    Raises:
        DomainError: If value is negative.
        ArithmeticError: If value is not a perfect square in the rationals.
    """
    value = to_fraction(value)
    if value < 0:
        raise DomainError(f"Square root of negative value {value}")
    num, den = value.numerator, value.denominator
    root_num, root_den = math.isqrt(num), math.isqrt(den)
    if root_num * root_num != num or root_den * root_den != den:
        raise ArithmeticError(f"{value} is not the square of a rational")
    return Fraction(root_num, root_den)


def sign(value) -> int:
    return (value > 0) - (value < 0)


def det(rows: Sequence[Sequence[Scalar]], exact: bool) -> Scalar:
    """Determinant of a square matrix given as nested sequences."""
    if len(rows) == 0:
        return Fraction(1) if exact else 1.0
    if not exact:
        return float(np.linalg.det(np.asarray(rows, dtype=float)))

    matrix = sympy.Matrix([[to_rational(v) for v in row] for row in rows])
    value = sympy.Rational(matrix.det(method="bareiss"))
    return Fraction(int(value.p), int(value.q))


def to_rational(value) -> sympy.Rational:
    value = to_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def product(values, exact: bool) -> Scalar:
    result = Fraction(1) if exact else 1.0
    for value in values:
        result *= value
    return result
