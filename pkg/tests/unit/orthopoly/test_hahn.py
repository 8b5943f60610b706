from fractions import Fraction
import math

import numpy as np
import pytest

from gt_flow.config import ModelParams
from gt_flow.errors import DomainError, ParameterError
from gt_flow.orthopoly.hahn import HahnBasis, f_eval, f_matrix
from gt_flow.orthopoly.hahn import hahn_eval, hahn_eval_recurrence, hahn_eval_series
from gt_flow.orthopoly.hahn import hahn_inner_product, hahn_norm, hahn_reduced_norm
from gt_flow.orthopoly.hahn import hahn_dual_orthogonality_check, hahn_dual_orthogonality_rhs
from gt_flow.orthopoly.hahn import hahn_M_recurrence_check, hahn_weight
from gt_flow.orthopoly.special import pochhammer


def test_hahn_values():
    basis = HahnBasis(0, 0, 2, exact=True)
    assert [hahn_eval(basis, 1, x) for x in range(3)] == [1, 0, -1]
    assert [hahn_eval(basis, 2, x) for x in range(3)] == [1, -2, 1]
    assert all(hahn_eval(basis, k, 0) == 1 for k in range(3))

    float_basis = HahnBasis(1.5, 0.5, 6)
    assert all(hahn_eval(float_basis, k, 0) == pytest.approx(1.0) for k in range(7))


def test_hahn_norms():
    basis = HahnBasis(0, 0, 2, exact=True)
    assert [hahn_reduced_norm(basis, k) for k in range(3)] == [3, 2, 6]
    assert hahn_norm(basis, 2) == hahn_inner_product(basis, 2, 2)

    basis = HahnBasis(1, 2, 4, exact=True)
    for k in range(5):
        for l in range(5):
            expected = hahn_norm(basis, k) if k == l else Fraction(0)
            assert hahn_inner_product(basis, k, l) == expected


def test_hahn_norm_closed_form():
    basis = HahnBasis(2, 1, 8, exact=True)
    for k in range(9):
        direct = sum(
            (hahn_weight(basis, x) * hahn_eval(basis, k, x) ** 2 for x in range(9)),
            Fraction(0),
        )
        assert isinstance(direct, Fraction)
        assert direct == hahn_norm(basis, k)
    # Gamma(3) Gamma(2) (alpha + beta + 2)_M / M! = 2 * (5)_8 / 8!
    assert hahn_norm(basis, 0) == Fraction(2 * math.prod(range(5, 13)), math.factorial(8))


def test_hahn_dual_orthogonality():
    basis = HahnBasis(1, 1, 3, exact=True)
    for x in range(4):
        for y in range(4):
            left = hahn_dual_orthogonality_check(basis, x, y)
            assert left == hahn_dual_orthogonality_rhs(basis, x, y)


def test_hahn_M_recurrence():
    basis = HahnBasis(1, 1, 3, exact=True)
    for k in range(4):
        for x in range(5):
            left, right = hahn_M_recurrence_check(basis, k, x)
            assert left == right


def test_hahn_recurrence_matches_series():
    basis = HahnBasis(1.5, 0.5, 10)
    for k in range(11):
        for x in range(11):
            series = hahn_eval_series(basis, k, x)
            assert hahn_eval_recurrence(basis, k, x) == pytest.approx(series, rel=1e-8, abs=1e-10)


def test_hahn_errors():
    with pytest.raises(ParameterError):
        HahnBasis(-1, 0, 2)
    with pytest.raises(ParameterError):
        HahnBasis(0, 0, -1)

    basis = HahnBasis(0, 0, 2)
    with pytest.raises(DomainError):
        hahn_eval(basis, 3, 0)
    with pytest.raises(DomainError):
        hahn_eval(basis, 0, 3)


def test_f_matrix():
    params = ModelParams(p=2, z_prime=3, w_prime=1)
    F = f_matrix(params, 3)
    assert F.shape == (5, 5)
    assert np.allclose(F @ F.T, np.eye(5), atol=1e-12)
    assert np.allclose(F.T @ F, np.eye(5), atol=1e-12)

    for k in range(5):
        for x in range(5):
            assert F[k, x] == pytest.approx(f_eval(params, 3, k, x), abs=1e-12)

    exact = params.with_mode("exact")
    assert f_eval(exact, 3, 2, 1) == pytest.approx(F[2, 1], abs=1e-12)


def test_pochhammer():
    assert pochhammer(3, 0) == 1
    assert pochhammer(1, 4) == 24
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
    assert pochhammer(0.5, 2) == pytest.approx(0.75)

    with pytest.raises(DomainError):
        pochhammer(1, -1)
