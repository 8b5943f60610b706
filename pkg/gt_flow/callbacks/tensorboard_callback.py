"""Contains the tensorboard callback."""

import numbers

import flatdict
from tensorboardX import SummaryWriter

from gt_flow.callbacks.callback import Callback, CallbackData


class TensorboardCallback(Callback):
    """TensorboardCallback class

    This callback writes ladder errors against the level N, and the
    flattened numeric summary of the record at the end of the experiment.
    """

    def __init__(self, logdir: str) -> None:
        super().__init__()
        self.writer = SummaryWriter(logdir)

    def on_ladder_step(self, callback_data: CallbackData) -> None:
        data = callback_data.ladder_step_data
        self.writer.add_scalar(f"ladder/{data.name}", data.error, data.level)

    def on_experiment_end(self, callback_data: CallbackData) -> None:
        logs = dict(callback_data.logs)
        if callback_data.record is not None:
            logs["summary"] = callback_data.record.summary
        for key, value in flatdict.FlatDict(logs, delimiter="/").items():
            if isinstance(value, numbers.Real) and not isinstance(value, bool):
                self.writer.add_scalar(key, float(value), 0)
        self.writer.close()
