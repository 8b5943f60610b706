from typing import Any

from ml_collections import ConfigDict

from gt_flow.config import ExperimentConfig
from gt_flow.errors import ConfigError
from gt_flow.harness.base import Experiment
from gt_flow.interface import ExperimentKind

EXPERIMENTS: dict[ExperimentKind, type[Experiment]] = {}


def register(cls: type[Experiment]) -> type[Experiment]:
    EXPERIMENTS[cls.kind] = cls
    return cls


def experiment_factory(kind: ExperimentKind | str) -> type[Experiment]:
    try:
        return EXPERIMENTS[ExperimentKind(kind)]
    except (KeyError, ValueError) as e:
        raise ConfigError(f"Unknown experiment kind {kind!r}") from e


def create_config(
    kind: ExperimentKind | str,
    config_path: str | None = None,
    overrides: dict[str, Any] | None = None,
) -> ConfigDict:
    """Kind defaults, overwritten by the file, overwritten by the overrides."""
    cls = experiment_factory(kind)
    return ExperimentConfig.create_config_from_file(
        config_path, cls.kind, cls.default_model, cls.params_class(), overrides
    )
