"""Two-segment piecewise-linear SNR model (dB over frequency)."""

from dataclasses import dataclass, replace
from typing import Any, Dict, Optional

import numpy as np

from errors import ExtrapolationError, ValidationError
from models.profile import from_db

APPROXIMATED = "approximated"
EXTRAPOLATED = "extrapolated"


@dataclass
class PwlModel:
    """Connected line segments over [0, f1) and [f1, f2], slopes in dB/Hz.

    Segment 2 is stored as its value at f1 plus a slope, which keeps the
    continuity at f1 structural.
    """

    f1: float
    f2: float
    f_cutoff: float
    intercept_db: float
    slope1_db: float
    slope2_db: float
    f_ext: Optional[float] = None
    f2_clamped: bool = False
    residual: float = 0.0
    smoothed_db: Optional[np.ndarray] = None

    def __post_init__(self):
        if not 0 < self.f1 < self.f2 <= self.f_cutoff:
            raise ValidationError(
                f"breakpoints must satisfy 0 < f1 < f2 <= f_cutoff "
                f"(got {self.f1}, {self.f2}, {self.f_cutoff})"
            )

    # Slopes below this magnitude (dB per GHz) count as flat
    FLAT_SLOPE_DB_PER_GHZ = 1e-6

    @property
    def extrapolatable(self) -> bool:
        return self.slope2_db * 1e9 < -self.FLAT_SLOPE_DB_PER_GHZ

    @property
    def level_at_f1(self) -> float:
        return self.intercept_db + self.slope1_db * self.f1

    def line_db(self, f) -> np.ndarray:
        """The two fitted lines, each extended over its side of f1."""
        f = np.asarray(f, dtype=float)
        seg1 = self.intercept_db + self.slope1_db * f
        seg2 = self.level_at_f1 + self.slope2_db * (f - self.f1)
        return np.where(f < self.f1, seg1, seg2)

    def zero_crossing(self) -> float:
        """Frequency where the segment-2 line reaches 0 dB."""
        if not self.extrapolatable:
            raise ExtrapolationError(
                f"segment-2 slope {self.slope2_db * 1e9:.4g} dB/GHz is not negative"
            )
        return self.f1 - self.level_at_f1 / self.slope2_db

    def with_extrapolation(self, f_ext: float) -> "PwlModel":
        return replace(self, f_ext=float(f_ext))

    def snr_db_at(self, f, mode: str = APPROXIMATED) -> np.ndarray:
        """Model SNR in dB; -inf marks frequencies where the SNR is zero."""
        f = np.asarray(f, dtype=float)
        out = self.line_db(f)
        beyond = f > self.f2
        if mode == APPROXIMATED:
            if self.f_cutoff > self.f2:
                v2 = float(self.line_db(self.f2))
                ramp = v2 * (self.f_cutoff - f) / (self.f_cutoff - self.f2)
                out = np.where(beyond, ramp, out)
            out = np.where(f > self.f_cutoff, -np.inf, out)
        elif mode == EXTRAPOLATED:
            if self.f_ext is None:
                raise ExtrapolationError("model has no extrapolation frequency")
            out = np.where(f > self.f_ext, -np.inf, out)
        else:
            raise ValidationError(f"unknown PWL evaluation mode {mode!r}")
        return out

    def snr_at(self, f, mode: str = APPROXIMATED) -> np.ndarray:
        db = self.snr_db_at(f, mode)
        return np.where(np.isneginf(db), 0.0, from_db(np.where(np.isneginf(db), 0.0, db)))

    def approximated(self) -> "PwlView":
        return PwlView(self, APPROXIMATED)

    def extrapolated(self) -> "PwlView":
        if self.f_ext is None:
            raise ExtrapolationError("model has no extrapolation frequency")
        return PwlView(self, EXTRAPOLATED)

    def to_json(self) -> Dict[str, Any]:
        return {
            "f1": self.f1,
            "f2": self.f2,
            "f_cutoff": self.f_cutoff,
            "intercept_db": self.intercept_db,
            "slope1_db": self.slope1_db,
            "slope2_db": self.slope2_db,
            "f_ext": self.f_ext,
            "f2_clamped": self.f2_clamped,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class PwlView:
    """A PwlModel pinned to one evaluation mode; usable wherever snr_at is."""

    model: PwlModel
    mode: str

    def snr_at(self, f) -> np.ndarray:
        return self.model.snr_at(f, self.mode)

    def snr_db_at(self, f) -> np.ndarray:
        return self.model.snr_db_at(f, self.mode)
