"""Contains the check summary callback."""

from absl import logging

from gt_flow.callbacks.callback import Callback, CallbackData


class CheckSummaryCallback(Callback):
    """CheckSummaryCallback class

    This callback counts passed and failed checks during an experiment
    and logs the names of the failing ones at the end.
    """

    def __init__(self) -> None:
        super().__init__()

        self.n_passed = 0
        self.failed: list[str] = []

    def on_check(self, callback_data: CallbackData) -> None:
        check = callback_data.check
        if check.passed:
            self.n_passed += 1
        else:
            self.failed.append(check.name)

    def on_experiment_end(self, callback_data: CallbackData) -> None:
        logging.info(
            f"{callback_data.kind}: {self.n_passed} passed, {len(self.failed)} failed"
        )
        for name in self.failed:
            logging.error(f"Failed check: {name}")

    def get_logs(self) -> dict:
        return {"checks": {"passed": self.n_passed, "failed": len(self.failed)}}
