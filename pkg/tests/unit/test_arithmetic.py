from fractions import Fraction

import pytest

from gt_flow import arithmetic


def test_det():
    third = [[Fraction(1, 2), 1, 0], [Fraction(1, 3), 0, 2], [1, Fraction(1, 4), 1]]
    value = arithmetic.det(third, exact=True)
    assert isinstance(value, Fraction)
    assert value == Fraction(17, 12)
    assert arithmetic.det(third, exact=False) == pytest.approx(17 / 12, rel=1e-14)

    assert arithmetic.det([[1, 2], [3, 4]], exact=True) == -2
    assert arithmetic.det([[0, 1], [1, 0]], exact=True) == -1
    assert arithmetic.det([[1, 2], [2, 4]], exact=True) == 0
    assert arithmetic.det([], exact=True) == 1
    assert arithmetic.det([[0.5]], exact=True) == Fraction(1, 2)
