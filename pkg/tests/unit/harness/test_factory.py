import pytest

from gt_flow.errors import ConfigError
from gt_flow.harness.factory import create_config, experiment_factory
from gt_flow.harness.named.export_paths import ExportPaths
from gt_flow.harness.named.verify import Verify
from gt_flow.interface import ExperimentKind


def test_experiment_factory():
    assert experiment_factory("verify") is Verify
    assert experiment_factory(ExperimentKind.EXPORT_PATHS) is ExportPaths
    for kind in ExperimentKind:
        assert experiment_factory(kind).kind is kind

    with pytest.raises(ConfigError):
        experiment_factory("unknown")


def test_create_config():
    config = create_config("verify")
    assert config.params.mode == "exact"
    assert config.experiment.n_max == 5

    config = create_config("spectrum", overrides={"params": {"p": 1, "zPrime": 2}})
    assert config.params.p == 1
    assert config.params.wPrime == 1

    with pytest.raises(ConfigError):
        create_config("verify", overrides={"experiment": {"unknown": 1}})
    with pytest.raises(ConfigError):
        create_config("export-paths")
