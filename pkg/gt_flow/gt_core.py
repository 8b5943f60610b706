"""Combinatorics of the Gelfand-Tsetlin graph.

Signatures of length N are the vertices of level N; two signatures are joined
by an edge when they interlace. Signatures bounded by p are encoded as p
particles in {0, ..., N+p-1}.
"""

from dataclasses import dataclass
from fractions import Fraction
import functools
import itertools
import math
from typing import Iterator, Sequence

from gt_flow.errors import DomainError


@dataclass(frozen=True, order=True)
class Signature:
    """Non-increasing integer tuple; a vertex of level ``len(parts)``."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(v) for v in self.parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"Signature parts must be non-increasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def level(self) -> int:
        return len(self.parts)

    def shifted(self, n: int) -> "Signature":
        return Signature(tuple(v + n for v in self.parts))


@dataclass(frozen=True, order=True)
class ParticleConfig:
    """Strictly increasing p points of {0, ..., level+p-1}."""

    points: tuple[int, ...]
    level: int
    p: int

    def __post_init__(self):
        points = tuple(int(v) for v in self.points)
        object.__setattr__(self, "points", points)
        if self.level < 0 or self.p < 1:
            raise DomainError(f"Invalid box ({self.level}, {self.p})")
        if len(points) != self.p:
            raise DomainError(f"Expected {self.p} points, got {points}")
        if any(a >= b for a, b in zip(points, points[1:])):
            raise DomainError(f"Points must be strictly increasing, got {points}")
        if points[0] < 0 or points[-1] > self.level + self.p - 1:
            raise DomainError(
                f"Points {points} outside {{0, ..., {self.level + self.p - 1}}}"
            )

    @property
    def box_size(self) -> int:
        return self.level + self.p


def interlaces(lower: Signature, upper: Signature) -> bool:
    """Returns True iff lower ≺ upper, i.e. upper_i >= lower_i >= upper_{i+1}.

    Raises:
        DomainError: If upper is not one level above lower.
    """
    if upper.level != lower.level + 1:
        raise DomainError(
            f"Levels {lower.level} and {upper.level} are not consecutive"
        )
    mu, lam = upper.parts, lower.parts
    return all(mu[i] >= lam[i] >= mu[i + 1] for i in range(lower.level))


def dim(lam: Signature) -> int:
    """Weyl dimension, the number of paths from the empty signature to lam."""
    parts = lam.parts
    n = len(parts)
    result = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            result *= Fraction(parts[i] - parts[j] + j - i, j - i)
    return int(result)


def predecessors(mu: Signature) -> list[Signature]:
    """All signatures lam ≺ mu, sorted."""
    if mu.level == 0:
        return []
    ranges = [range(mu.parts[i + 1], mu.parts[i] + 1) for i in range(mu.level - 1)]
    return sorted(Signature(parts) for parts in itertools.product(*ranges))


@functools.lru_cache(maxsize=None)
def _count_paths(parts: tuple[int, ...]) -> int:
    if not parts:
        return 1
    return sum(_count_paths(lam.parts) for lam in predecessors(Signature(parts)))


def count_paths_bruteforce(lam: Signature, guard: int = 10**7) -> int:
    """Counts paths from the empty signature to lam by recursion.

    Raises:
        DomainError: If the Weyl dimension exceeds the guard.
    """
    if dim(lam) > guard:
        raise DomainError(f"Path count of {lam.parts} exceeds the guard {guard}")
    return _count_paths(lam.parts)


def signatures_in_box(level: int, upper: int, lower: int = 0) -> list[Signature]:
    """All signatures of the level with upper >= lam_1 and lam_N >= lower."""
    if upper < lower:
        return []
    values = range(lower, upper + 1)
    return sorted(
        Signature(tuple(reversed(combo)))
        for combo in itertools.combinations_with_replacement(values, level)
    )


def configs_in_box(level: int, p: int) -> list[ParticleConfig]:
    return [
        ParticleConfig(points, level, p)
        for points in itertools.combinations(range(level + p), p)
    ]


def to_particles(lam: Signature, p: int) -> ParticleConfig:
    """X(lam): the complement of {lam_i - i + N} in {0, ..., N+p-1}.

    Raises:
        DomainError: If lam_1 > p or lam_N < 0.
    """
    n = lam.level
    if n and (lam.parts[0] > p or lam.parts[-1] < 0):
        raise DomainError(f"Signature {lam.parts} is not bounded by [0, {p}]")
    occupied = {lam.parts[i - 1] - i + n for i in range(1, n + 1)}
    points = tuple(x for x in range(n + p) if x not in occupied)
    return ParticleConfig(points, n, p)


def to_particles_by_columns(lam: Signature, p: int) -> ParticleConfig:
    """Same map through column heights: x_i = (N - h_i) + i - 1."""
    n = lam.level
    if n and (lam.parts[0] > p or lam.parts[-1] < 0):
        raise DomainError(f"Signature {lam.parts} is not bounded by [0, {p}]")
    heights = [sum(1 for part in lam.parts if part >= column) for column in range(1, p + 1)]
    return ParticleConfig(tuple(n - h + i for i, h in enumerate(heights)), n, p)


def from_particles(config: ParticleConfig) -> Signature:
    n = config.level
    taken = set(config.points)
    occupied = sorted((x for x in range(n + config.p) if x not in taken), reverse=True)
    return Signature(tuple(occupied[i - 1] + i - n for i in range(1, n + 1)))


def vandermonde(points: Sequence) -> int | Fraction | float:
    """prod_{i<j} (x_j - x_i); positive for increasing points, 1 for <= 1 point."""
    result = 1
    for i, j in itertools.combinations(range(len(points)), 2):
        result *= points[j] - points[i]
    return result


def vandermonde_complement_identity(points: Sequence[int], k: int) -> tuple[int, Fraction]:
    """Both sides of V(X) = V(X̄)·prod_{x in X̄} 1/(x!(k-x)!)·prod_{i<=k} i!.

    X̄ is the complement of X in {0, ..., k}.
    """
    if any(x < 0 or x > k for x in points):
        raise DomainError(f"Points {tuple(points)} not inside {{0, ..., {k}}}")
    chosen = set(points)
    complement = [x for x in range(k + 1) if x not in chosen]
    right = Fraction(vandermonde(complement))
    for x in complement:
        right /= math.factorial(x) * math.factorial(k - x)
    for i in range(1, k + 1):
        right *= math.factorial(i)
    return vandermonde(sorted(points)), right


def dim_via_particles(config: ParticleConfig) -> int:
    n, p = config.level, config.p
    result = Fraction(vandermonde(config.points))
    for x in config.points:
        result /= math.factorial(x) * math.factorial(n + p - 1 - x)
    for i in range(1, p + 1):
        result *= math.factorial(n + i - 1)
    if result.denominator != 1:
        raise ArithmeticError(f"Dimension of {config.points} is not an integer")
    return int(result)


def particles_interlace(lower: ParticleConfig, upper: ParticleConfig) -> bool:
    """Returns True iff upper_i is lower_i or lower_i + 1 for every i.

    Raises:
        DomainError: If the boxes are not (N, p) and (N+1, p).
    """
    if upper.level != lower.level + 1 or upper.p != lower.p:
        raise DomainError(
            f"Boxes ({lower.level}, {lower.p}) and ({upper.level}, {upper.p}) "
            "are not consecutive"
        )
    return all(y - x in (0, 1) for x, y in zip(lower.points, upper.points))


def _shifted_configs(config: ParticleConfig, level: int, step: int) -> Iterator[ParticleConfig]:
    for moves in itertools.product((0, 1), repeat=config.p):
        points = tuple(x + step * m for x, m in zip(config.points, moves))
        if all(a < b for a, b in zip(points, points[1:])) and (
            points[0] >= 0 and points[-1] <= level + config.p - 1
        ):
            yield ParticleConfig(points, level, config.p)


def up_neighbours(config: ParticleConfig) -> list[ParticleConfig]:
    """All X' at level N+1 with X ≺ X'."""
    return sorted(_shifted_configs(config, config.level + 1, 1))


def down_neighbours(config: ParticleConfig) -> list[ParticleConfig]:
    """All X' at level N-1 with X' ≺ X."""
    if config.level == 0:
        return []
    return sorted(_shifted_configs(config, config.level - 1, -1))
