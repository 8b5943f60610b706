import pytest

from fractions import Fraction

from gt_flow.errors import DomainError
from gt_flow.gt_core import Signature, ParticleConfig
from gt_flow.gt_core import configs_in_box, signatures_in_box, predecessors
from gt_flow.gt_core import count_paths_bruteforce, dim, dim_via_particles
from gt_flow.gt_core import interlaces, particles_interlace
from gt_flow.gt_core import from_particles, to_particles, to_particles_by_columns
from gt_flow.gt_core import up_neighbours, down_neighbours
from gt_flow.gt_core import vandermonde, vandermonde_complement_identity


def test_signature_validation():
    assert Signature((2, 1, 1)).level == 3
    assert Signature().level == 0
    assert Signature((1, 0)).shifted(2) == Signature((3, 2))

    with pytest.raises(DomainError):
        Signature((0, 1))


def test_particle_config_validation():
    config = ParticleConfig((0, 2), 1, 2)
    assert config.box_size == 3

    with pytest.raises(DomainError):
        ParticleConfig((1, 1), 1, 2)
    with pytest.raises(DomainError):
        ParticleConfig((0, 3), 1, 2)
    with pytest.raises(DomainError):
        ParticleConfig((0,), 1, 2)


def test_interlaces():
    assert interlaces(Signature((1,)), Signature((2, 0)))
    assert interlaces(Signature((2,)), Signature((2, 0)))
    assert not interlaces(Signature((3,)), Signature((2, 0)))

    with pytest.raises(DomainError):
        interlaces(Signature((1,)), Signature((1,)))


def test_dim():
    assert dim(Signature()) == 1
    assert dim(Signature((1, 0))) == 2
    assert dim(Signature((2, 0))) == 3
    assert dim(Signature((2, 1, 0))) == 8
    assert dim(Signature((3, 3))) == 1


def test_count_paths_matches_dim():
    for lam in signatures_in_box(3, 2):
        assert count_paths_bruteforce(lam) == dim(lam)
    assert count_paths_bruteforce(Signature((2, 1, 0))) == 8

    with pytest.raises(DomainError):
        count_paths_bruteforce(Signature((30, 0, 0, 0, 0)), guard=10)


def test_predecessors():
    assert predecessors(Signature((2, 0))) == [Signature((0,)), Signature((1,)), Signature((2,))]
    assert predecessors(Signature((1,))) == [Signature()]
    assert predecessors(Signature()) == []


def test_boxes():
    assert len(signatures_in_box(2, 2)) == 6
    assert len(signatures_in_box(2, 1, -1)) == 6
    assert signatures_in_box(1, -1) == []
    assert len(configs_in_box(2, 2)) == 6
    assert configs_in_box(0, 2) == [ParticleConfig((0, 1), 0, 2)]


def test_particles():
    assert to_particles(Signature((1, 0)), 1) == ParticleConfig((1,), 2, 1)
    assert to_particles(Signature(), 2) == ParticleConfig((0, 1), 0, 2)
    assert to_particles(Signature((2, 2)), 2) == ParticleConfig((0, 1), 2, 2)
    assert to_particles(Signature((0, 0)), 2) == ParticleConfig((2, 3), 2, 2)

    for lam in signatures_in_box(3, 2):
        config = to_particles(lam, 2)
        assert from_particles(config) == lam
        assert to_particles_by_columns(lam, 2) == config
        assert dim_via_particles(config) == dim(lam)

    with pytest.raises(DomainError):
        to_particles(Signature((3, 0)), 2)


def test_vandermonde():
    assert vandermonde([0, 1, 3]) == 6
    assert vandermonde([3, 1]) == -2
    assert vandermonde([5]) == 1
    assert vandermonde([Fraction(1, 2), Fraction(3, 2)]) == 1


def test_vandermonde_complement_identity():
    left, right = vandermonde_complement_identity((0, 2), 3)
    assert left == 2
    assert right == 2

    for k in range(5):
        for x in range(k + 1):
            left, right = vandermonde_complement_identity((x,), k)
            assert left == right

    with pytest.raises(DomainError):
        vandermonde_complement_identity((4,), 3)


def test_neighbours():
    X = ParticleConfig((0, 2), 1, 2)
    ups = up_neighbours(X)
    assert ParticleConfig((0, 2), 2, 2) in ups
    assert ParticleConfig((1, 3), 2, 2) in ups
    assert len(ups) == 4
    assert all(particles_interlace(X, Y) for Y in ups)

    downs = down_neighbours(X)
    assert downs == [ParticleConfig((0, 1), 0, 2)]
    assert down_neighbours(ParticleConfig((0, 1), 0, 2)) == []

    with pytest.raises(DomainError):
        particles_interlace(X, X)
