from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Any

from ml_collections import ConfigDict
import yaml

from gt_flow import arithmetic
from gt_flow.errors import ConfigError, ParameterError
from gt_flow.interface import ArithmeticMode, ExperimentKind
from gt_flow.types import Scalar


@dataclass(frozen=True)
class ModelParams:
    """Global parameters (p, z', w') of the chains and of their limit.

    In exact mode z' and w' are stored as Fractions and must be integers, in
    float mode they are stored as floats.
    """

    p: int
    z_prime: Scalar
    w_prime: Scalar
    mode: ArithmeticMode = ArithmeticMode.FLOAT

    def __post_init__(self):
        try:
            mode = ArithmeticMode(self.mode)
        except ValueError as e:
            raise ParameterError(f"Unknown arithmetic mode {self.mode!r}") from e
        object.__setattr__(self, "mode", mode)

        if isinstance(self.p, bool) or not arithmetic.is_integer(self.p) or self.p < 1:
            raise ParameterError(f"p must be a positive integer, got {self.p}")
        p = int(self.p)
        object.__setattr__(self, "p", p)

        z_prime = arithmetic.convert(self.z_prime, self.exact)
        w_prime = arithmetic.convert(self.w_prime, self.exact)
        if self.exact and not (
            arithmetic.is_integer(z_prime) and arithmetic.is_integer(w_prime)
        ):
            raise ParameterError(
                f"Exact mode requires integer zPrime and wPrime, got {z_prime}, {w_prime}"
            )
        if not z_prime > p - 1:
            raise ParameterError(f"zPrime must exceed p - 1 = {p - 1}, got {z_prime}")
        if not w_prime > -1:
            raise ParameterError(f"wPrime must exceed -1, got {w_prime}")
        object.__setattr__(self, "z_prime", z_prime)
        object.__setattr__(self, "w_prime", w_prime)

    @property
    def exact(self) -> bool:
        return self.mode is ArithmeticMode.EXACT

    def scalar(self, value) -> Scalar:
        return arithmetic.convert(value, self.exact)

    def with_mode(self, mode: ArithmeticMode | str) -> "ModelParams":
        return replace(self, mode=ArithmeticMode(mode))

    def as_float(self) -> "ModelParams":
        return self.with_mode(ArithmeticMode.FLOAT)

    def to_dict(self) -> dict[str, Any]:
        def plain(value: Scalar) -> int | float:
            if isinstance(value, Fraction) and value.denominator == 1:
                return int(value)
            return float(value)

        return {
            "p": self.p,
            "zPrime": plain(self.z_prime),
            "wPrime": plain(self.w_prime),
            "mode": self.mode.value,
        }

    @classmethod
    def from_dict(cls, block: dict[str, Any]) -> "ModelParams":
        """Builds ModelParams from a {p, zPrime, wPrime, mode} block.

        Raises:
            ParameterError: If a key is missing or a constraint fails.
        """
        for key in ["p", "zPrime", "wPrime"]:
            if key not in block:
                raise ParameterError(f"Missing key {key!r} in params block")
        return cls(
            p=block["p"],
            z_prime=block["zPrime"],
            w_prime=block["wPrime"],
            mode=block.get("mode", ArithmeticMode.FLOAT.value),
        )


@dataclass
class ExperimentParams:
    ...


@dataclass
class ToleranceConfig:
    quadrature: float = 1e-6
    spectral: float = 1e-12
    orthonormality: float = 1e-12
    truncation: float = 1e-12
    doob: float = 1e-10
    ladder_inversion: float = 0.1
    coverage: float = 0.95
    sigma: float = 3.0


@dataclass
class RunConfig:
    jobs: int = 1
    output_dir: str = "./results"
    tensorboard: bool = False


class ExperimentConfig(ConfigDict):
    """Configuration of a single experiment run.

    Contains the experiment kind, the model parameters, the kind-specific
    experiment parameters, the tolerances and the run options.
    """

    def __init__(
        self,
        kind: ExperimentKind | str,
        model_params: ModelParams,
        experiment_params: ExperimentParams,
        *,
        seed: int | None = None,
        tolerances: ToleranceConfig | None = None,
        run: RunConfig | None = None,
    ):
        """Creates an instance of ExperimentConfig.

        Args:
            kind: The experiment kind.
            model_params: An instance of ModelParams.
            experiment_params: A kind-specific instance of ExperimentParams.
            seed: An int seeding every random stream of the experiment.
            tolerances: An instance of ToleranceConfig.
            run: An instance of RunConfig.

        Raises:
            ConfigError: If the assembled configuration is invalid.
        """
        config = config_dict(kind, model_params, experiment_params, seed, tolerances, run)
        validate_config(config)
        ConfigDict.__init__(self, config)

    @classmethod
    def create_config_from_file(
        cls,
        config_path: str | None,
        kind: ExperimentKind | str,
        default_model: ModelParams,
        default_experiment: ExperimentParams,
        overrides: dict[str, Any] | None = None,
    ) -> ConfigDict:
        """Creates an ExperimentConfig from a JSON or yaml file.

        Kind defaults are overwritten by the file, which is overwritten by
        the command line overrides. The created instance is a plain
        ConfigDict that behaves exactly like an ExperimentConfig.

        Args:
            config_path: A string path to the configuration file, or None
                to use the defaults only.
            kind: The experiment kind selected on the command line.
            default_model: The default ModelParams for this kind.
            default_experiment: The default ExperimentParams for this kind.
            overrides: Nested dict of values given on the command line.

        Returns:
            An instance of ConfigDict that behaves similarly to ExperimentConfig.

        Raises:
            ConfigError: If the file cannot be read, contains unknown keys,
                disagrees on the kind, or fails validation.
        """
        kind = ExperimentKind(kind)
        defaults = config_dict(kind, default_model, default_experiment)

        file_dict = {}
        if config_path is not None:
            try:
                with open(config_path, "r") as file:
                    file_dict = yaml.load(file, yaml.SafeLoader) or {}
            except (OSError, yaml.YAMLError) as e:
                raise ConfigError(f"Cannot read config file {config_path}: {e}") from e
            if not isinstance(file_dict, dict):
                raise ConfigError(f"Config file {config_path} is not a mapping")
            if file_dict.get("kind", kind.value) != kind.value:
                raise ConfigError(
                    f"Config file is for {file_dict['kind']!r}, not {kind.value!r}"
                )

        merged = merge_config_dict(defaults, file_dict)
        merged = merge_config_dict(merged, overrides or {})
        validate_config(merged)
        return ConfigDict(merged)


def config_dict(
    kind: ExperimentKind | str,
    model_params: ModelParams,
    experiment_params: ExperimentParams,
    seed: int | None = None,
    tolerances: ToleranceConfig | None = None,
    run: RunConfig | None = None,
) -> dict[str, Any]:
    """Plain nested dict of an experiment configuration, not validated."""
    return {
        "kind": ExperimentKind(kind).value,
        "seed": seed,
        "params": model_params.to_dict(),
        "experiment": asdict(experiment_params),
        "tolerances": asdict(tolerances or ToleranceConfig()),
        "run": asdict(run or RunConfig()),
    }


def merge_config_dict(
    defaults: dict[str, Any], updates: dict[str, Any], prefix: str = ""
) -> dict[str, Any]:
    """Recursively overwrites defaults with updates.

    Raises:
        ConfigError: If updates contains a key absent from defaults.
    """
    merged = dict(defaults)
    for key, value in updates.items():
        if key not in defaults:
            raise ConfigError(f"Unknown config key {prefix}{key!r}")
        if isinstance(defaults[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"Config key {prefix}{key!r} must be a mapping")
            merged[key] = merge_config_dict(defaults[key], value, f"{prefix}{key}.")
        else:
            merged[key] = value
    return merged


def validate_config(config: dict[str, Any] | ConfigDict) -> None:
    """Checks the cross-field constraints of an experiment configuration.

    Raises:
        ConfigError: If any constraint fails.
    """
    try:
        kind = ExperimentKind(config["kind"])
    except ValueError as e:
        raise ConfigError(f"Unknown experiment kind {config['kind']!r}") from e

    try:
        ModelParams.from_dict(config["params"])
    except ParameterError as e:
        raise ConfigError(str(e)) from e

    for name, value in config["tolerances"].items():
        if not isinstance(value, (int, float)) or not value > 0:
            raise ConfigError(f"Tolerance {name!r} must be positive, got {value!r}")

    seed = config["seed"]
    if kind.needs_seed and seed is None:
        raise ConfigError(f"Experiment {kind.value!r} needs a seed")
    if seed is not None and (not isinstance(seed, int) or seed < 0):
        raise ConfigError(f"Seed must be a non-negative integer, got {seed!r}")

    if int(config["run"]["jobs"]) < 1:
        raise ConfigError("run.jobs must be at least 1")


def model_params(config: ConfigDict) -> ModelParams:
    return ModelParams.from_dict(config.params.to_dict())
