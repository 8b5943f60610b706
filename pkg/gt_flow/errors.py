"""Exceptions raised by gt_flow."""


class GtFlowError(Exception):
    """Base class for all gt_flow errors."""


class ParameterError(GtFlowError, ValueError):
    """Model parameters violate their constraints."""


class DomainError(GtFlowError, ValueError):
    """An input lies outside the domain of an operation."""


class TruncationError(GtFlowError, RuntimeError):
    """A series could not reach its tolerance within the term cap."""


class ConvergenceError(GtFlowError, RuntimeError):
    """An iterative linear-algebra routine did not converge."""


class ConfigError(GtFlowError, ValueError):
    """The experiment configuration is invalid."""
