"""Contains the base class for experiments."""

from absl import logging
from ml_collections import ConfigDict

from gt_flow.callbacks import callback
from gt_flow.callbacks.callback import Callback, CallbackData
from gt_flow.config import ExperimentParams, ModelParams, ToleranceConfig, model_params
from gt_flow.errors import ConfigError
from gt_flow.harness.save import ResultSaver
from gt_flow.interface import ExperimentKind, IExperiment
from gt_flow.records import (
    Check,
    ResultRecord,
    exact_check,
    experiment_id,
    ladder_check,
    threshold_check,
    tolerance_check,
)


class Experiment(IExperiment):
    kind: ExperimentKind = None
    params_class: type[ExperimentParams] = ExperimentParams
    default_model: ModelParams = None

    def __init__(
        self,
        config: ConfigDict,
        *,
        callbacks: list[Callback] | None = None,
        saver: ResultSaver | None = None,
    ) -> None:
        """Builds an experiment from a validated configuration.

        Args:
            config: An ExperimentConfig-like ConfigDict of this kind.
            callbacks: Observers notified of checks and ladder steps.
            saver: Writes kind-specific artifacts, if given.

        Raises:
            ConfigError: If the kind does not match or a precondition fails.
        """
        if ExperimentKind(config.kind) is not self.kind:
            raise ConfigError(f"Config of kind {config.kind!r} given to {self.kind.value!r}")
        self.config = config
        self.params = model_params(config)
        try:
            self.experiment = self.params_class(**config.experiment.to_dict())
        except TypeError as e:
            raise ConfigError(f"Invalid experiment block: {e}") from e
        self.tolerances = ToleranceConfig(**config.tolerances.to_dict())
        self.callbacks = callbacks if callbacks else []
        self.saver = saver
        self.record = ResultRecord(experiment_id(self.kind.value, config), self.kind.value)
        self.check_preconditions()

    @property
    def seed(self) -> int | None:
        return self.config.seed

    @property
    def jobs(self) -> int:
        return int(self.config.run.jobs)

    def check_preconditions(self) -> None:
        pass

    def add_check(self, check: Check) -> Check:
        self.record.checks.append(check)
        status = "PASS" if check.passed else "FAIL"
        logging.info(
            f"[{status}] {check.name} ({check.anchor}): "
            f"value={check.value} reference={check.reference}"
        )
        callback.on_check(self.callbacks, CallbackData.on_check(self.kind.value, check))
        return check

    def exact(self, name: str, anchor: str, value, reference) -> Check:
        return self.add_check(exact_check(name, anchor, value, reference))

    def within(
        self, name: str, anchor: str, value, reference, tolerance: float, relative: bool = False
    ) -> Check:
        return self.add_check(tolerance_check(name, anchor, value, reference, tolerance, relative))

    def decreasing(self, name: str, anchor: str, errors) -> Check:
        return self.add_check(
            ladder_check(name, anchor, errors, self.tolerances.ladder_inversion)
        )

    def at_least(self, name: str, anchor: str, value: float, minimum: float) -> Check:
        return self.add_check(threshold_check(name, anchor, value, minimum))

    def ladder_step(self, name: str, level: int, error: float) -> None:
        logging.info(f"{name}: N = {level} | error = {error:.3e}")
        callback.on_ladder_step(
            self.callbacks, CallbackData.on_ladder_step(self.kind.value, name, level, error)
        )

    def add_row(self, table: str, row: dict) -> None:
        self.record.tables.setdefault(table, []).append(row)
