from abc import ABC, abstractmethod
from enum import Enum

from gt_flow.types import Scalar


class ArithmeticMode(Enum):
    EXACT = "exact"
    FLOAT = "float"


class ExperimentKind(Enum):
    VERIFY = "verify"
    CONVERGE_KERNEL = "converge-kernel"
    CONVERGE_DENSITY = "converge-density"
    MC_CORRELATIONS = "mc-correlations"
    SPECTRUM = "spectrum"
    EXPORT_PATHS = "export-paths"

    @property
    def needs_seed(self) -> bool:
        return self in (ExperimentKind.MC_CORRELATIONS, ExperimentKind.EXPORT_PATHS)


class IOrthogonalBasis(ABC):
    """Interface for families of orthogonal polynomials."""

    @abstractmethod
    def eval(self, k: int, x: Scalar) -> Scalar:
        """Evaluates the polynomial of degree k.

        Args:
            k: The degree of the polynomial.
            x: The evaluation point.

        Returns:
            The value of the degree-k polynomial at x.
        """
        ...

    @abstractmethod
    def norm(self, k: int) -> Scalar:
        """Returns the squared norm of the degree-k polynomial.

        Args:
            k: The degree of the polynomial.

        Returns:
            The squared norm against the orthogonality weight.
        """
        ...

    @abstractmethod
    def weight(self, x: Scalar) -> Scalar:
        """Returns the orthogonality weight at x."""
        ...


class IExperiment(ABC):
    """Interface for experiment instances."""

    @abstractmethod
    def check_preconditions(self) -> None:
        """Validates the kind-specific parts of the configuration.

        Raises:
            ConfigError: If the configuration cannot be run by this kind.
        """
        ...

    @abstractmethod
    def run(self) -> None:
        """Runs every check of the experiment and fills its record."""
        ...
