"""Command line entry point.

    gt-flow <kind> [--config PATH] [--seed N] [--out DIR] [--mode exact|float] [--jobs N]

Exit codes: 0 if every check passes, 1 if a check fails, 2 on a
configuration error.
"""

from pathlib import Path
from typing import Any

from absl import app
from absl import logging
from absl.flags import argparse_flags

from gt_flow.callbacks.callback import Callback
from gt_flow.callbacks.check_summary_callback import CheckSummaryCallback
from gt_flow.callbacks.tensorboard_callback import TensorboardCallback
from gt_flow.errors import ConfigError
from gt_flow.harness.factory import create_config
from gt_flow.harness.runner import run_experiment
from gt_flow.interface import ArithmeticMode, ExperimentKind

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2

HELP = {
    ExperimentKind.VERIFY: "Exact identity suite at small N.",
    ExperimentKind.CONVERGE_KERNEL: "Scaled up-down kernel against the limit kernel.",
    ExperimentKind.CONVERGE_DENSITY: "Rescaled P_N against the limit density.",
    ExperimentKind.MC_CORRELATIONS: "Monte Carlo correlation functions.",
    ExperimentKind.SPECTRUM: "Semigroup, generator and Doob identities.",
    ExperimentKind.EXPORT_PATHS: "Sample paths as CSV files.",
}


def parse_flags(argv: list[str]):
    parser = argparse_flags.ArgumentParser(
        prog="gt-flow", description="Gelfand-Tsetlin chains and their diffusion limit."
    )
    subparsers = parser.add_subparsers(dest="kind", required=True)
    for kind in ExperimentKind:
        subparser = subparsers.add_parser(kind.value, help=HELP[kind])
        subparser.add_argument("--config", default=None, help="JSON or yaml config file.")
        subparser.add_argument("--seed", type=int, default=None)
        subparser.add_argument("--out", default=None, help="Results root directory.")
        subparser.add_argument(
            "--mode", choices=[mode.value for mode in ArithmeticMode], default=None
        )
        subparser.add_argument("--jobs", type=int, default=None)
    return parser.parse_args(argv[1:])


def overrides_from_args(args) -> dict[str, Any]:
    """Nested config overrides of the flags that were given."""
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.mode is not None:
        overrides["params"] = {"mode": args.mode}
    run = {}
    if args.out is not None:
        run["output_dir"] = args.out
    if args.jobs is not None:
        run["jobs"] = args.jobs
    if run:
        overrides["run"] = run
    return overrides


def main(args) -> int:
    try:
        config = create_config(args.kind, args.config, overrides_from_args(args))
        callbacks: list[Callback] = [CheckSummaryCallback()]
        if config.run.tensorboard:
            logdir = Path(config.run.output_dir).joinpath("tensorboard", config.kind)
            callbacks.append(TensorboardCallback(str(logdir)))
        record = run_experiment(config, callbacks, save=True)
    except ConfigError as e:
        logging.error(f"Configuration error: {e}")
        return EXIT_CONFIG

    if not record.passed:
        logging.error(f"Failing checks: {', '.join(record.failing)}")
        return EXIT_FAIL
    return EXIT_PASS


def run() -> None:
    app.run(main, flags_parser=parse_flags)


if __name__ == "__main__":
    run()
