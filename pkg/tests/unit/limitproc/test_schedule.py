from fractions import Fraction
import math

import pytest

from gt_flow.config import ModelParams
from gt_flow.errors import DomainError
from gt_flow.limitproc.schedule import EigenSchedule, Partition, c_factor, c_tilde, eigen_K
from gt_flow.limitproc.schedule import partitions_up_to, total_K, total_K_closed_form


def test_eigen_K():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    assert EigenSchedule(params).values(4) == [0, 4, 10, 18]
    assert EigenSchedule(params).total == 4
    assert total_K(params) == 4
    assert total_K_closed_form(params) == 4

    params = ModelParams(p=3, z_prime=4, w_prime=0, mode="exact")
    assert total_K(params) == 11
    assert total_K_closed_form(params) == 11

    params = ModelParams(p=3, z_prime=2.5, w_prime=-0.5)
    assert total_K(params) == pytest.approx(total_K_closed_form(params))

    with pytest.raises(DomainError):
        eigen_K(params, -1)


def test_partitions():
    assert partitions_up_to(2, 2) == [
        Partition((0, 0)),
        Partition((1, 0)),
        Partition((2, 0)),
        Partition((1, 1)),
    ]
    assert len(partitions_up_to(3, 1)) == 4
    assert Partition.of((2,), 3) == Partition((2, 0, 0))
    assert Partition((2, 1)).size == 3

    with pytest.raises(DomainError):
        Partition((0, 1))
    with pytest.raises(DomainError):
        Partition.of((1, 1, 1), 2)


def test_c_tilde():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    assert c_tilde(params, Partition((0, 0))) == 0
    assert c_tilde(params, Partition((1, 0))) == -6
    assert c_tilde(params, Partition((1, 1))) == -10
    assert all(c_tilde(params, partition) < 0 for partition in partitions_up_to(4, 2)[1:])
    assert c_factor(params, Partition((1, 0)), 0.5) == pytest.approx(math.exp(-3))
    assert isinstance(c_tilde(params, Partition((1, 0))), Fraction)

    with pytest.raises(DomainError):
        c_tilde(params, Partition((1,)))
