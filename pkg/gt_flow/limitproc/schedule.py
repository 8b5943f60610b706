from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Iterator, Sequence

from gt_flow.config import ModelParams
from gt_flow.errors import DomainError
from gt_flow.types import Scalar


def eigen_K(params: ModelParams, i: int) -> Scalar:
    """K(i) = i (i + w' + z' + 1 - p)."""
    if i < 0:
        raise DomainError(f"Eigen index must be non-negative, got {i}")
    return i * (i + params.w_prime + params.z_prime + 1 - params.p)


def total_K(params: ModelParams) -> Scalar:
    return sum((eigen_K(params, i) for i in range(params.p)), params.scalar(0))


def total_K_closed_form(params: ModelParams) -> Scalar:
    """p(p-1)/2 (w' + z' - (p-2)/3)."""
    p = params.p
    third = Fraction(p - 2, 3) if params.exact else (p - 2) / 3
    return params.scalar(p * (p - 1)) / 2 * (params.w_prime + params.z_prime - third)


@dataclass(frozen=True)
class EigenSchedule:
    """Eigenvalues K(i) of the one-particle Jacobi diffusion."""

    params: ModelParams

    def K(self, i: int) -> Scalar:
        return eigen_K(self.params, i)

    @property
    def total(self) -> Scalar:
        return total_K(self.params)

    def values(self, n: int) -> list[Scalar]:
        return [eigen_K(self.params, i) for i in range(n)]

    def float_values(self, n: int) -> list[float]:
        return [float(v) for v in self.values(n)]


@dataclass(frozen=True, order=True)
class Partition:
    """lambda_1 >= ... >= lambda_p >= 0, padded with zeros to length p."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(v) for v in self.parts)
        if any(a < b for a, b in zip(parts, parts[1:])) or (parts and parts[-1] < 0):
            raise DomainError(f"{parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Sequence[int], p: int) -> "Partition":
        parts = tuple(parts)
        if len(parts) > p:
            raise DomainError(f"Partition {parts} has more than {p} parts")
        return cls(parts + (0,) * (p - len(parts)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def p(self) -> int:
        return len(self.parts)


def _partitions(size: int, length: int, largest: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        if size == 0:
            yield ()
        return
    for first in range(min(size, largest), -1, -1):
        for rest in _partitions(size - first, length - 1, first):
            yield (first,) + rest


def partitions_up_to(size: int, p: int) -> list[Partition]:
    """All partitions with at most p parts and |lambda| <= size, by size."""
    return [
        Partition(parts)
        for n in range(size + 1)
        for parts in _partitions(n, p, n)
    ]


def c_tilde(params: ModelParams, partition: Partition) -> Scalar:
    """sum_i K(p-i) - K(lambda_i + p - i), the generator eigenvalue of Jac^lambda."""
    p = params.p
    if partition.p != p:
        raise DomainError(f"Partition {partition.parts} does not have length {p}")
    return sum(
        (
            eigen_K(params, p - i) - eigen_K(params, part + p - i)
            for i, part in enumerate(partition.parts, start=1)
        ),
        params.scalar(0),
    )


def c_factor(params: ModelParams, partition: Partition, t: float) -> float:
    """c(lambda, t) = exp(t * c_tilde(lambda))."""
    return math.exp(float(t) * float(c_tilde(params, partition)))
