"""Contains the base classes for callbacks."""

from dataclasses import dataclass, field

from gt_flow.records import Check, ResultRecord


@dataclass
class OnLadderStepData:
    name: str = ""
    level: int = 0
    error: float = 0.0


@dataclass
class CallbackData:
    kind: str = ""
    logs: dict = field(default_factory=lambda: {})
    ladder_step_data: OnLadderStepData = field(default_factory=lambda: OnLadderStepData())
    check: Check | None = None
    record: ResultRecord | None = None

    @classmethod
    def on_ladder_step(cls, kind: str, name: str, level: int, error: float):
        return cls(kind=kind, ladder_step_data=OnLadderStepData(name, level, error))

    @classmethod
    def on_check(cls, kind: str, check: Check):
        return cls(kind=kind, check=check)


class Callback:
    """Base class for callbacks."""

    def on_experiment_start(self, callback_data: CallbackData):
        """Called when the experiment starts."""
        pass

    def on_experiment_end(self, callback_data: CallbackData):
        """Called when the experiment ends, with the final record."""
        pass

    def on_ladder_step(self, callback_data: CallbackData):
        """Called after each level of a convergence ladder."""
        pass

    def on_check(self, callback_data: CallbackData):
        """Called when a check is recorded."""
        pass

    def get_logs(self) -> dict:
        """Returns information to log."""
        return {}


def on_experiment_start(callbacks: list[Callback], callback_data: CallbackData):
    for c in callbacks:
        c.on_experiment_start(callback_data)


def on_experiment_end(callbacks: list[Callback], callback_data: CallbackData):
    for c in callbacks:
        c.on_experiment_end(callback_data)


def on_ladder_step(callbacks: list[Callback], callback_data: CallbackData):
    for c in callbacks:
        c.on_ladder_step(callback_data)


def on_check(callbacks: list[Callback], callback_data: CallbackData):
    for c in callbacks:
        c.on_check(callback_data)
