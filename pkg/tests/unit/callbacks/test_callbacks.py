from gt_flow.callbacks.callback import Callback, CallbackData
from gt_flow.callbacks.callback import on_check, on_experiment_end, on_ladder_step
from gt_flow.callbacks.check_summary_callback import CheckSummaryCallback
from gt_flow.callbacks.tensorboard_callback import TensorboardCallback
from gt_flow.records import ResultRecord, exact_check, tolerance_check


def test_check_summary_callback():
    summary = CheckSummaryCallback()
    callbacks: list[Callback] = [Callback(), summary]

    on_check(callbacks, CallbackData.on_check("verify", exact_check("a", "anchor", 1, 1)))
    on_check(callbacks, CallbackData.on_check("verify", exact_check("b", "anchor", 1, 2)))
    on_check(
        callbacks,
        CallbackData.on_check("verify", tolerance_check("c", "anchor", 1.0, 1.05, 0.1)),
    )

    assert summary.n_passed == 2
    assert summary.failed == ["b"]
    assert summary.get_logs() == {"checks": {"passed": 2, "failed": 1}}
    assert Callback().get_logs() == {}

    on_experiment_end(callbacks, CallbackData(kind="verify", logs=summary.get_logs()))


def test_tensorboard_callback(tmp_path):
    logdir = tmp_path / "tensorboard"
    tensorboard = TensorboardCallback(str(logdir))

    for level, error in [(10, 0.4), (20, 0.2), (40, 0.1)]:
        on_ladder_step(
            [tensorboard], CallbackData.on_ladder_step("converge-kernel", "sup", level, error)
        )
    record = ResultRecord("converge-kernel-0", "converge-kernel")
    record.summary["kernel_sup_error"] = {"t=0.5": {"40": 0.1}}
    record.summary["passed_label"] = "yes"
    on_experiment_end(
        [tensorboard],
        CallbackData(kind="converge-kernel", logs={"checks": {"passed": 3}}, record=record),
    )

    assert any(path.name.startswith("events") for path in logdir.iterdir())
