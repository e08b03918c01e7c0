"""OFDM framing parameters and frame payloads."""

from dataclasses import dataclass, field, fields
from enum import Enum
from typing import Any, Dict

import numpy as np

from errors import ValidationError


def is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


class FrameKind(Enum):
    """Role of a frame in the transmitted stream."""

    PILOT = "pilot"
    DATA = "data"


@dataclass(frozen=True)
class OfdmConfig:
    """Framing and sampling constants of the DCO-OFDM link.

    n_sc and the signal bandwidth are derived: n_sc = n_fft/2 - 1 and
    B = (F_s / 2) / n_sps.
    """

    n_fft: int = 1024
    n_cp: int = 15
    rolloff: float = 0.1
    sample_rate: float = 32e9
    n_sps: int = 1
    rrc_span: int = 32
    n_pilot_frames: int = 150
    n_data_frames: int = 300
    pilot_seed: int = 2024

    def __post_init__(self):
        if not is_power_of_two(self.n_fft) or self.n_fft < 4:
            raise ValidationError(f"n_fft must be a power of two >= 4, got {self.n_fft}")
        if self.n_cp < 0:
            raise ValidationError(f"n_cp must be >= 0, got {self.n_cp}")
        if not 0.0 <= self.rolloff <= 1.0:
            raise ValidationError(f"rolloff must lie in [0, 1], got {self.rolloff}")
        if self.sample_rate <= 0:
            raise ValidationError("sample_rate must be positive")
        if self.n_sps < 1:
            raise ValidationError(f"n_sps must be >= 1, got {self.n_sps}")
        if self.rrc_span < 2 or self.rrc_span % 2:
            raise ValidationError(f"rrc_span must be even and >= 2, got {self.rrc_span}")
        if self.n_pilot_frames < 2:
            raise ValidationError("at least 2 pilot frames are needed")
        if self.n_data_frames < 1:
            raise ValidationError("at least 1 data frame is needed")

    @property
    def n_sc(self) -> int:
        return self.n_fft // 2 - 1

    @property
    def bandwidth(self) -> float:
        """Signal bandwidth B in Hz."""
        return (self.sample_rate / 2) / self.n_sps

    @property
    def symbol_rate(self) -> float:
        """OFDM sample rate before upsampling, 2B."""
        return 2 * self.bandwidth

    @property
    def frame_length(self) -> int:
        return self.n_fft + self.n_cp

    @property
    def subcarrier_spacing(self) -> float:
        return self.symbol_rate / self.n_fft

    def subcarrier_frequencies(self) -> np.ndarray:
        """Centre frequencies of data subcarriers k = 1..n_sc in Hz."""
        return np.arange(1, self.n_sc + 1) * self.subcarrier_spacing

    def to_json(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class OfdmFrame:
    """One frame of n_sc QAM payload symbols."""

    payload_symbols: np.ndarray
    kind: FrameKind = FrameKind.DATA
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.payload_symbols = np.asarray(self.payload_symbols, dtype=complex)

    def check_length(self, cfg: OfdmConfig) -> None:
        if self.payload_symbols.shape != (cfg.n_sc,):
            raise ValidationError(
                f"frame carries {self.payload_symbols.size} symbols, expected {cfg.n_sc}"
            )
