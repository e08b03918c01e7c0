"""Experiment configuration: flat TOML sections parsed into validated objects."""

import json
import logging
import math

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from channel.presets import BIAS_POINTS, reference_stages, preset_for
from config.settings import seed_override
from errors import ConfigError, ValidationError
from models.link import LinkPreset, VcselModel
from models.loading import B_MAX_DEFAULT
from models.ofdm import OfdmConfig

logger = logging.getLogger(__name__)

DEFAULT_TARGETS = (3.8e-3, 1e-2, 3.1e-2, 3.3e-2, 5.6e-2)
TARGET_PROFILES = ("auto", "config-i", "config-ii", "none")
STAGE_SETS = ("reference", "flat")


@dataclass(frozen=True)
class PresetSettings:
    """The [preset] section as written; build() turns it into a LinkPreset."""

    name: str = "Config-I"
    v_dc: Optional[float] = None
    i_dc: Optional[float] = None
    p_t: Optional[float] = None
    p_r: Optional[float] = None
    drive_scale: float = 1.1
    noise_std: float = 0.0
    responsivity: float = 0.6
    stages: str = "reference"
    vcsel_resonance_hz: float = 18e9
    vcsel_damping: float = 0.7071
    bias_tee_cutoff_hz: float = 12e9
    brickwall_cutoff_hz: float = 11e9
    ripple_depth: float = 0.0
    ripple_period_hz: float = 2e9
    delay_samples: int = 0
    target_profile: str = "auto"

    def build(self) -> LinkPreset:
        if self.stages == "reference":
            stages = reference_stages(
                self.vcsel_resonance_hz,
                self.vcsel_damping,
                self.bias_tee_cutoff_hz,
                self.brickwall_cutoff_hz,
                self.ripple_depth,
                self.ripple_period_hz,
            )
        else:
            stages = []
        overrides = {
            "drive_scale": self.drive_scale,
            "noise_std": self.noise_std,
            "responsivity": self.responsivity,
            "response_stages": stages,
            "delay_samples": self.delay_samples,
        }
        for key in ("v_dc", "i_dc", "p_t", "p_r"):
            if getattr(self, key) is not None:
                overrides[key] = getattr(self, key)
        if self.name in BIAS_POINTS:
            return preset_for(self.name, **overrides)
        if self.i_dc is None:
            raise ValidationError("i_dc is required for a custom preset")
        return LinkPreset(name=self.name, **overrides)

    @property
    def reference_name(self) -> Optional[str]:
        """Bias point whose reference SNR profile calibrates the noise, if any."""
        if self.target_profile == "auto":
            return self.name if self.name in BIAS_POINTS else None
        return {"config-i": "Config-I", "config-ii": "Config-II"}.get(self.target_profile)


@dataclass(frozen=True)
class LoadingSettings:
    target_ber: Tuple[float, ...] = DEFAULT_TARGETS
    power_budget: Optional[float] = None
    b_max: int = B_MAX_DEFAULT
    plan_target_ber: float = 3.3e-2


@dataclass(frozen=True)
class AnalysisSettings:
    window: int = 10
    f_cutoff: float = 11e9


@dataclass(frozen=True)
class RunSettings:
    seeds: Tuple[int, ...] = (1,)
    output_dir: str = "results"


@dataclass
class ExperimentConfig:
    ofdm: OfdmConfig = field(default_factory=OfdmConfig)
    preset_settings: PresetSettings = field(default_factory=PresetSettings)
    vcsel: VcselModel = field(default_factory=VcselModel)
    loading: LoadingSettings = field(default_factory=LoadingSettings)
    analysis: AnalysisSettings = field(default_factory=AnalysisSettings)
    run: RunSettings = field(default_factory=RunSettings)

    def __post_init__(self):
        self.preset = self.preset_settings.build()

    @property
    def seeds(self) -> Tuple[int, ...]:
        return self.run.seeds

    @property
    def output_dir(self) -> str:
        return self.run.output_dir


# section -> dataclass holding its keys
_SECTIONS = {
    "ofdm": OfdmConfig,
    "preset": PresetSettings,
    "vcsel": VcselModel,
    "loading": LoadingSettings,
    "analysis": AnalysisSettings,
    "run": RunSettings,
}

_FLOAT_SEQ = {"loading.target_ber", "vcsel.linear_range"}
_INT_SEQ = {"run.seeds"}
_OPTIONAL_FLOAT = {"preset.v_dc", "preset.i_dc", "preset.p_t", "preset.p_r", "loading.power_budget"}


def _coerce(path: str, value: Any, default: Any) -> Any:
    """Checks one scalar or sequence against the type of its default."""
    if path in _FLOAT_SEQ or path in _INT_SEQ:
        if not isinstance(value, list):
            raise ConfigError("expected a sequence", path)
        kind = int if path in _INT_SEQ else float
        out = []
        for item in value:
            if isinstance(item, bool) or not isinstance(item, (int, float)):
                raise ConfigError(f"sequence items must be numbers, got {item!r}", path)
            if kind is int and not isinstance(item, int):
                raise ConfigError(f"sequence items must be integers, got {item!r}", path)
            out.append(kind(item))
        return tuple(out)
    if path in _OPTIONAL_FLOAT or isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"expected a number, got {value!r}", path)
        return float(value)
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"expected true or false, got {value!r}", path)
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"expected an integer, got {value!r}", path)
        return value
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"expected a string, got {value!r}", path)
        return value
    raise ConfigError(f"unsupported value {value!r}", path)


def _build_section(name: str, raw: Dict[str, Any]):
    cls = _SECTIONS[name]
    template = cls()
    defaults = {f.name: getattr(template, f.name) for f in fields(cls)}
    values = {}
    for key, value in raw.items():
        path = f"{name}.{key}"
        if key not in defaults:
            raise ConfigError("unknown key", path)
        values[key] = _coerce(path, value, defaults[key])
    _check_choices(name, values)
    try:
        return cls(**values)
    except (ValidationError, TypeError, ValueError) as e:
        raise ConfigError(str(e), _guess_path(name, str(e), values)) from None


def _check_choices(section: str, values: Dict[str, Any]) -> None:
    choices = {
        ("preset", "name"): ("Config-I", "Config-II", "custom"),
        ("preset", "stages"): STAGE_SETS,
        ("preset", "target_profile"): TARGET_PROFILES,
    }
    for (sec, key), allowed in choices.items():
        if sec == section and key in values and values[key] not in allowed:
            raise ConfigError(f"must be one of {', '.join(allowed)}", f"{sec}.{key}")


def _guess_path(section: str, message: str, values: Dict[str, Any]) -> str:
    for key in values:
        if message.startswith(key) or f" {key} " in message:
            return f"{section}.{key}"
    return section


def parse_config(text: str) -> ExperimentConfig:
    """Parses and validates a TOML experiment document; omitted keys take defaults."""
    try:
        document = tomllib.loads(text or "")
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(str(e), "document") from None

    sections = {}
    for name, raw in document.items():
        if name not in _SECTIONS:
            raise ConfigError("unknown section", name)
        if not isinstance(raw, dict):
            raise ConfigError("expected a [section] table", name)
        sections[name] = _build_section(name, raw)

    run = sections.get("run", RunSettings())
    override = seed_override()
    if override is not None:
        logger.info("Seeds overridden from environment: %s", override)
        run = RunSettings(seeds=tuple(override), output_dir=run.output_dir)
    if not run.seeds:
        raise ConfigError("at least one seed is required", "run.seeds")

    loading = sections.get("loading", LoadingSettings())
    if not loading.target_ber:
        raise ConfigError("at least one target BER is required", "loading.target_ber")
    for target in loading.target_ber + (loading.plan_target_ber,):
        if not 0 < target < 0.2:
            raise ConfigError(f"target BER {target} outside (0, 0.2)", "loading.target_ber")
    if loading.power_budget is not None and loading.power_budget <= 0:
        raise ConfigError("must be positive", "loading.power_budget")
    if loading.b_max < 1:
        raise ConfigError("must be at least 1", "loading.b_max")

    analysis = sections.get("analysis", AnalysisSettings())
    if analysis.window < 1:
        raise ConfigError("must be at least 1", "analysis.window")
    if analysis.f_cutoff <= 0:
        raise ConfigError("must be positive", "analysis.f_cutoff")

    vcsel = sections.get("vcsel", VcselModel())
    try:
        cfg = ExperimentConfig(
            ofdm=sections.get("ofdm", OfdmConfig()),
            preset_settings=sections.get("preset", PresetSettings()),
            vcsel=vcsel,
            loading=loading,
            analysis=analysis,
            run=run,
        )
        cfg.preset.check_bias(vcsel)
    except ValidationError as e:
        raise ConfigError(str(e), "preset") from None
    return cfg


def _toml_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    raise TypeError(f"cannot write {type(value).__name__} to TOML")


def dump_toml(sections: Dict[str, Dict[str, Any]]) -> str:
    """Flat TOML: one table per section, None values left out."""
    blocks = []
    for name, values in sections.items():
        lines = [f"[{name}]"]
        lines += [f"{k} = {_toml_value(v)}" for k, v in values.items() if v is not None]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def dump_config(cfg: ExperimentConfig) -> str:
    def as_dict(obj) -> Dict[str, Any]:
        return {f.name: getattr(obj, f.name) for f in fields(obj)}

    vcsel = as_dict(cfg.vcsel)
    vcsel["linear_range"] = list(cfg.vcsel.linear_range)
    return dump_toml(
        {
            "ofdm": cfg.ofdm.to_json(),
            "preset": as_dict(cfg.preset_settings),
            "vcsel": vcsel,
            "loading": as_dict(cfg.loading),
            "analysis": as_dict(cfg.analysis),
            "run": as_dict(cfg.run),
        }
    )


def experiment_from_sections(sections: Dict[str, Dict[str, Any]]) -> ExperimentConfig:
    """Shortcut used by tests and the request handler: sections as dicts."""
    return parse_config(dump_toml(sections) if sections else "")
