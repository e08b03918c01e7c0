"""Transmitter model and link presets (bias point, response cascade, noise)."""

from dataclasses import dataclass, field, replace
from typing import List, Tuple

from channel.stages import ResponseStage
from errors import ValidationError

PRESET_NAMES = ("Config-I", "Config-II", "custom")


@dataclass(frozen=True)
class VcselModel:
    """Parametric LIV curve: threshold, linear slope region and rollover."""

    i_threshold: float = 1.5  # mA
    slope_efficiency: float = 0.6  # W/A == mW/mA
    i_rollover: float = 30.0  # mA
    p_max: float = 14.0  # mW
    linear_range: Tuple[float, float] = (5.0, 20.0)  # mA

    def __post_init__(self):
        low, high = self.linear_range
        if not 0 < self.i_threshold < low < high < self.i_rollover:
            raise ValidationError(
                "VCSEL currents must satisfy 0 < i_threshold < linear_range < i_rollover"
            )
        if self.slope_efficiency <= 0:
            raise ValidationError("slope_efficiency must be positive")
        if self.p_max < self.slope_efficiency * (high - self.i_threshold):
            raise ValidationError("p_max lies below the end of the linear region")

    def in_linear_range(self, i_ma: float) -> bool:
        low, high = self.linear_range
        return low <= i_ma <= high


@dataclass
class LinkPreset:
    """Bias point, drive scale, response cascade and receiver noise of a link.

    Currents are in mA, optical powers in mW (p_r in uW), noise_std in the
    photocurrent domain (mA) per sample.
    """

    name: str = "custom"
    v_dc: float = 0.0
    i_dc: float = 8.42
    p_t: float = 0.0
    p_r: float = 0.0
    drive_scale: float = 1.1
    response_stages: List[ResponseStage] = field(default_factory=list)
    noise_std: float = 0.0
    responsivity: float = 0.6
    delay_samples: int = 0

    def __post_init__(self):
        if self.name not in PRESET_NAMES:
            raise ValidationError(f"unknown preset name {self.name!r}")
        if self.drive_scale < 0:
            raise ValidationError("drive_scale must be non-negative")
        if self.noise_std < 0:
            raise ValidationError("noise_std must be non-negative")
        if self.responsivity <= 0:
            raise ValidationError("responsivity must be positive")
        if self.delay_samples < 0:
            raise ValidationError("delay_samples must be non-negative")

    def check_bias(self, model: VcselModel) -> None:
        """Rejects a DC bias outside the transmitter's linear range."""
        if not model.in_linear_range(self.i_dc):
            low, high = model.linear_range
            raise ValidationError(
                f"bias current {self.i_dc} mA outside the linear range [{low}, {high}] mA"
            )

    def with_changes(self, **changes) -> "LinkPreset":
        return replace(self, **changes)
