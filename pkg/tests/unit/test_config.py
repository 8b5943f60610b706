import json

import pytest

from gt_flow.config import ExperimentConfig, ModelParams, RunConfig, ToleranceConfig
from gt_flow.config import merge_config_dict, model_params
from gt_flow.errors import ConfigError, ParameterError
from gt_flow.harness.named.verify import VerifyParams
from gt_flow.interface import ArithmeticMode


def test_model_params():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    assert params.exact
    assert params.to_dict() == {"p": 2, "zPrime": 3, "wPrime": 1, "mode": "exact"}
    assert ModelParams.from_dict(params.to_dict()) == params
    assert params.as_float().mode is ArithmeticMode.FLOAT
    assert params.as_float().z_prime == 3.0

    with pytest.raises(ParameterError):
        ModelParams(p=0, z_prime=3, w_prime=1)
    with pytest.raises(ParameterError):
        ModelParams(p=2, z_prime=1, w_prime=1)
    with pytest.raises(ParameterError):
        ModelParams(p=2, z_prime=3, w_prime=-1)
    with pytest.raises(ParameterError):
        ModelParams(p=2, z_prime=2.5, w_prime=1, mode="exact")
    with pytest.raises(ParameterError):
        ModelParams(p=2, z_prime=3, w_prime=1, mode="symbolic")
    with pytest.raises(ParameterError):
        ModelParams.from_dict({"p": 2, "zPrime": 3})


def test_experiment_config():
    params = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")
    config = ExperimentConfig("verify", params, VerifyParams(), seed=3)
    assert config.kind == "verify"
    assert config.seed == 3
    assert config.experiment.n_max == 5
    assert config.tolerances.coverage == ToleranceConfig().coverage
    assert model_params(config) == params

    with pytest.raises(ConfigError):
        ExperimentConfig("verify", params, VerifyParams(), seed=-1)
    with pytest.raises(ConfigError):
        ExperimentConfig("verify", params, VerifyParams(), run=RunConfig(jobs=0))
    with pytest.raises(ConfigError):
        ExperimentConfig("verify", params, VerifyParams(), tolerances=ToleranceConfig(doob=0.0))
    with pytest.raises(ConfigError):
        ExperimentConfig("mc-correlations", params, VerifyParams())


def test_merge_config_dict():
    defaults = {"a": 1, "b": {"c": 2, "d": 3}}
    assert merge_config_dict(defaults, {"b": {"c": 5}}) == {"a": 1, "b": {"c": 5, "d": 3}}
    assert defaults["b"]["c"] == 2

    with pytest.raises(ConfigError):
        merge_config_dict(defaults, {"e": 1})
    with pytest.raises(ConfigError):
        merge_config_dict(defaults, {"b": {"e": 1}})
    with pytest.raises(ConfigError):
        merge_config_dict(defaults, {"b": 1})


def test_create_config_from_file(tmp_path):
    path = tmp_path.joinpath("config.json")
    path.write_text(json.dumps({"kind": "verify", "experiment": {"n_max": 3}, "seed": 1}))
    default_model = ModelParams(p=2, z_prime=3, w_prime=1, mode="exact")

    config = ExperimentConfig.create_config_from_file(
        str(path), "verify", default_model, VerifyParams(), {"seed": 7}
    )
    assert config.experiment.n_max == 3
    assert config.experiment.k_max == 2
    assert config.seed == 7

    config = ExperimentConfig.create_config_from_file(None, "verify", default_model, VerifyParams())
    assert config.experiment.n_max == 5

    with pytest.raises(ConfigError):
        ExperimentConfig.create_config_from_file(
            str(path), "spectrum", default_model, VerifyParams()
        )
    with pytest.raises(ConfigError):
        ExperimentConfig.create_config_from_file(
            str(tmp_path.joinpath("missing.json")), "verify", default_model, VerifyParams()
        )

    path.write_text(json.dumps({"params": {"p": 2, "zPrime": 0.5, "wPrime": 1}}))
    with pytest.raises(ConfigError):
        ExperimentConfig.create_config_from_file(str(path), "verify", default_model, VerifyParams())
