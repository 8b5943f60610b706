import pytest

from gt_flow.config import ModelParams
from gt_flow.ensembles import LimitEnsemble
from gt_flow.errors import DomainError
from gt_flow.limitproc.integrals import heat_semigroup_check, integrate_transition
from gt_flow.limitproc.integrals import normalization_value, one_point_mass
from gt_flow.limitproc.integrals import semigroup_apply_check, stationarity_value
from gt_flow.limitproc.schedule import Partition

PARAMS = ModelParams(p=2, z_prime=3, w_prime=1)


def test_integrate_transition():
    assert integrate_transition(PARAMS, 0.5, [0.3, 0.6]) == pytest.approx(1.0, abs=1e-8)
    one = ModelParams(p=1, z_prime=2, w_prime=0.5)
    assert integrate_transition(one, 0.2, [0.4]) == pytest.approx(1.0, abs=1e-8)

    with pytest.raises(DomainError):
        integrate_transition(PARAMS, 0.5, [0.6, 0.3])
    with pytest.raises(DomainError):
        integrate_transition(PARAMS, 0.5, [0.0, 0.3])


def test_stationarity():
    value, rho = stationarity_value(PARAMS, 0.5, [0.25, 0.7])
    assert value == pytest.approx(rho, rel=1e-8)


def test_normalization():
    assert normalization_value(LimitEnsemble(PARAMS)) == pytest.approx(1.0, abs=1e-12)
    assert one_point_mass(PARAMS) == pytest.approx(2.0, abs=1e-12)
    assert one_point_mass(ModelParams(p=3, z_prime=4, w_prime=0.5)) == pytest.approx(3.0)


def test_heat_semigroup():
    composed, direct = heat_semigroup_check(PARAMS, 0.3, 0.2, 0.4, 0.7)
    assert composed == pytest.approx(direct, rel=1e-8)


def test_semigroup_apply():
    for parts in [(0, 0), (1, 0), (2, 1)]:
        quadrature, closed = semigroup_apply_check(PARAMS, Partition(parts), 0.5, [0.3, 0.6])
        assert quadrature == pytest.approx(closed, rel=1e-8, abs=1e-10)

    with pytest.raises(DomainError):
        semigroup_apply_check(PARAMS, Partition((1,)), 0.5, [0.3, 0.6])
