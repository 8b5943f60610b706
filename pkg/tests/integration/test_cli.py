import json

from gt_flow.cli import EXIT_CONFIG, EXIT_PASS
from gt_flow.cli import main, overrides_from_args, parse_flags

SMALL_VERIFY = {
    "kind": "verify",
    "params": {"p": 2, "zPrime": 3, "wPrime": 1, "mode": "exact"},
    "experiment": {"n_max": 2, "k_max": 1, "paths_n_max": 2, "complement_k_max": 3},
}


def write_config(tmp_path, config: dict) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    return str(path)


def test_parse_flags():
    args = parse_flags(["gt-flow", "spectrum", "--seed", "4", "--mode", "float", "--jobs", "2"])
    assert args.kind == "spectrum"
    assert args.config is None
    assert overrides_from_args(args) == {
        "seed": 4,
        "params": {"mode": "float"},
        "run": {"jobs": 2},
    }

    args = parse_flags(["gt-flow", "verify"])
    assert overrides_from_args(args) == {}


def test_verify_passes(tmp_path):
    config_path = write_config(tmp_path, SMALL_VERIFY)
    out = tmp_path / "results"
    args = parse_flags(["gt-flow", "verify", "--config", config_path, "--out", str(out)])

    assert main(args) == EXIT_PASS
    (run_dir,) = out.iterdir()
    assert run_dir.name.startswith("verify_")
    assert (run_dir / "result.json").exists()
    assert (run_dir / "config.yaml").exists()
    assert json.loads((run_dir / "result.json").read_text())["passed"]


def test_configuration_errors(tmp_path):
    out = str(tmp_path / "results")

    args = parse_flags(["gt-flow", "verify", "--mode", "float", "--out", out])
    assert main(args) == EXIT_CONFIG

    bad_params = dict(SMALL_VERIFY, params={"p": 0, "zPrime": 3, "wPrime": 1, "mode": "exact"})
    args = parse_flags(["gt-flow", "verify", "--config", write_config(tmp_path, bad_params)])
    assert main(args) == EXIT_CONFIG

    unknown = dict(SMALL_VERIFY, colour="blue")
    args = parse_flags(["gt-flow", "verify", "--config", write_config(tmp_path, unknown)])
    assert main(args) == EXIT_CONFIG

    args = parse_flags(["gt-flow", "export-paths", "--out", out])
    assert main(args) == EXIT_CONFIG

    args = parse_flags(["gt-flow", "verify", "--config", str(tmp_path / "missing.json")])
    assert main(args) == EXIT_CONFIG
