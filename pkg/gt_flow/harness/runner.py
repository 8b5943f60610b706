import time

from absl import logging
from ml_collections import ConfigDict

from gt_flow.callbacks import callback
from gt_flow.callbacks.callback import Callback, CallbackData
from gt_flow.harness.factory import experiment_factory
from gt_flow.harness.save import ResultSaver
from gt_flow.records import ResultRecord


def run_experiment(
    config: ConfigDict,
    callbacks: list[Callback] | None = None,
    saver: ResultSaver | None = None,
    *,
    save: bool = False,
) -> ResultRecord:
    """Runs the experiment named by config.kind and returns its record.

    With save=True and no saver, a ResultSaver under config.run.output_dir is
    created once the preconditions hold.

    Raises:
        ConfigError: If the configuration does not satisfy the preconditions
            of its kind.
    """
    callbacks = callbacks if callbacks else []
    experiment = experiment_factory(config.kind)(config, callbacks=callbacks, saver=saver)
    kind = experiment.kind.value
    if saver is None and save:
        saver = ResultSaver(config.run.output_dir, kind)
        experiment.saver = saver

    logging.info(f"Starting {experiment.record.experiment_id}")
    callback.on_experiment_start(callbacks, CallbackData(kind=kind))
    start_time = time.time()
    experiment.run()
    experiment.record.wall_clock = time.time() - start_time

    if saver:
        saver.save_config(config)
        saver.save_record(experiment.record)

    logs = {}
    for c in callbacks:
        logs.update(c.get_logs())
    callback.on_experiment_end(
        callbacks, CallbackData(kind=kind, logs=logs, record=experiment.record)
    )
    logging.info(
        f"{experiment.record.experiment_id} finished in "
        f"{experiment.record.wall_clock:.1f}s: {'pass' if experiment.record.passed else 'fail'}"
    )
    return experiment.record
