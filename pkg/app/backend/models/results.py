"""Result records produced by the estimation, streaming and sweep workflows."""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from models.profile import SnrProfile


@dataclass
class ChannelEstimate:
    """Pilot-based per-subcarrier gain, residual noise variance and SNR."""

    gains: np.ndarray
    noise_var: np.ndarray
    snr: SnrProfile
    n_frames: int = 0
    clipping: bool = False


@dataclass
class StreamResult:
    """Outcome of one pilot+data stream through the link."""

    ber: float
    rate: float
    snr_profile: SnrProfile
    estimate: ChannelEstimate
    bit_errors: int
    bit_count: int
    clipping: bool = False
    offset: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepRow:
    """One row of the BER-versus-rate table."""

    target_ber: float
    gamma: float
    total_bits: int
    rate_bps: float
    measured_ber: float
    seed_count: int

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "SweepRow":
        return cls(
            target_ber=float(data["target_ber"]),
            gamma=float(data["gamma"]),
            total_bits=int(data["total_bits"]),
            rate_bps=float(data["rate_bps"]),
            measured_ber=float(data["measured_ber"]),
            seed_count=int(data["seed_count"]),
        )


@dataclass(frozen=True)
class DrivePoint:
    """Loaded rate reached at one drive scale."""

    drive_scale: float
    total_bits: int
    rate_bps: float
    mean_snr_db: float
    clipping: bool
    measured_ber: Optional[float] = None

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)
