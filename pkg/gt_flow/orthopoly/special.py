from fractions import Fraction
from typing import Sequence

from gt_flow import arithmetic
from gt_flow.errors import DomainError
from gt_flow.types import Scalar


def pochhammer(a: Scalar, k: int) -> Scalar:
    """Rising factorial (a)_k = a(a+1)...(a+k-1), with (a)_0 = 1."""
    if k < 0:
        raise DomainError(f"Pochhammer index must be non-negative, got {k}")
    result = Fraction(1) if isinstance(a, Fraction) else (1 if isinstance(a, int) else 1.0)
    for j in range(k):
        result *= a + j
    return result


def terminating_hypergeometric(
    upper: Sequence[Scalar], lower: Sequence[Scalar], z: Scalar
) -> Fraction:
    """Sums pFq(upper; lower; z) when some upper parameter is -n, n >= 0.

    The sum is carried out in exact rational arithmetic; float arguments are
    converted exactly, so the only rounding happens when the caller converts
    the result back to float.

    Raises:
        DomainError: If no upper parameter is a non-positive integer, or a
            lower parameter vanishes before the series terminates.
    """
    upper = [arithmetic.to_fraction(a) for a in upper]
    lower = [arithmetic.to_fraction(b) for b in lower]
    z = arithmetic.to_fraction(z)

    stops = [-int(a) for a in upper if a.denominator == 1 and a <= 0]
    if not stops:
        raise DomainError(f"Series with upper parameters {upper} does not terminate")
    n_terms = min(stops)

    total = Fraction(1)
    term = Fraction(1)
    for j in range(n_terms):
        numerator = Fraction(1)
        for a in upper:
            numerator *= a + j
        if numerator == 0:
            break
        denominator = Fraction(j + 1)
        for b in lower:
            denominator *= b + j
        if denominator == 0:
            raise DomainError(f"Lower parameters {lower} hit zero at term {j + 1}")
        term = term * numerator * z / denominator
        total += term
    return total
