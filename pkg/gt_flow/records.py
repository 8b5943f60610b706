"""Check results and the per-experiment result record."""

from dataclasses import dataclass, field
from fractions import Fraction
import hashlib
from typing import Any, Sequence

from ml_collections import ConfigDict
import numpy as np
import yaml

from gt_flow.version import __version__


def plain(value: Any) -> Any:
    """Converts Fractions and numpy scalars into JSON-friendly values."""
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    return value


@dataclass
class Check:
    name: str
    anchor: str
    value: Any
    reference: Any
    tolerance: float
    passed: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "value": plain(self.value),
            "reference": plain(self.reference),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def exact_check(name: str, anchor: str, value, reference) -> Check:
    """Passes iff value == reference."""
    return Check(name, anchor, value, reference, 0.0, bool(value == reference))


def tolerance_check(
    name: str, anchor: str, value, reference, tolerance: float, relative: bool = False
) -> Check:
    """Passes iff |value - reference| <= tolerance (times max(1, |reference|) if relative)."""
    error = abs(float(value) - float(reference))
    scale = max(1.0, abs(float(reference))) if relative else 1.0
    passed = bool(np.isfinite(error) and error <= tolerance * scale)
    return Check(name, anchor, float(value), float(reference), float(tolerance), passed)


def is_decreasing_ladder(errors: Sequence[float], inversion: float) -> bool:
    """Strictly decreasing until it reaches zero, except for at most one
    increase of at most ``inversion`` relative.
    """
    inversions = 0
    for previous, current in zip(errors, errors[1:]):
        if current < previous or current == 0:
            continue
        if current > previous * (1 + inversion):
            return False
        inversions += 1
    return inversions <= 1


def ladder_check(name: str, anchor: str, errors: Sequence[float], inversion: float) -> Check:
    errors = [float(e) for e in errors]
    return Check(name, anchor, errors, None, inversion, is_decreasing_ladder(errors, inversion))


def threshold_check(name: str, anchor: str, value: float, minimum: float) -> Check:
    """Passes iff value >= minimum."""
    return Check(name, anchor, float(value), float(minimum), 0.0, bool(value >= minimum))


def experiment_id(kind: str, config: ConfigDict | dict) -> str:
    """<kind>-<first 12 hex digits of sha1 of the yaml config>."""
    config = config.to_dict() if isinstance(config, ConfigDict) else config
    text = yaml.dump(config, sort_keys=True)
    return f"{kind}-{hashlib.sha1(text.encode()).hexdigest()[:12]}"


@dataclass
class ResultRecord:
    experiment_id: str
    kind: str
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, list[dict[str, Any]]] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)
    wall_clock: float = 0.0
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failing(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "experiment_id": self.experiment_id,
            "kind": self.kind,
            "version": self.version,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "summary": plain(self.summary),
            "wall_clock": self.wall_clock,
        }
