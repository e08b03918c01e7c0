"""SNR gap and per-subcarrier loading plan."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from errors import ValidationError

B_MAX_DEFAULT = 10


@dataclass(frozen=True)
class GapParams:
    """Target BER and the matching linear SNR gap."""

    target_ber: float
    gamma: float


@dataclass
class LoadingPlan:
    """Bits and power per subcarrier, with the resulting rate."""

    bits: np.ndarray
    power_scales: np.ndarray
    rate: float = 0.0
    frequencies: Optional[np.ndarray] = None
    snr_linear: Optional[np.ndarray] = None
    target_ber: Optional[float] = None
    gamma: Optional[float] = None
    power_budget: Optional[float] = None
    b_max: int = B_MAX_DEFAULT

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=int)
        self.power_scales = np.asarray(self.power_scales, dtype=float)
        if self.bits.shape != self.power_scales.shape:
            raise ValidationError("bits and power_scales must have the same length")
        if np.any(self.bits < 0) or np.any(self.bits > self.b_max):
            raise ValidationError(f"bits must lie in [0, {self.b_max}]")
        if np.any(self.power_scales < 0):
            raise ValidationError("power scales must be non-negative")
        if np.any(self.power_scales[self.bits == 0] != 0):
            raise ValidationError("unloaded subcarriers must carry zero power")

    @property
    def n_sc(self) -> int:
        return len(self.bits)

    @property
    def orders(self) -> np.ndarray:
        """Constellation sizes M_k = 2^b_k (1 means unloaded)."""
        return np.left_shift(1, self.bits)

    @property
    def total_bits(self) -> int:
        return int(self.bits.sum())

    @property
    def total_power(self) -> float:
        return float(self.power_scales.sum())

    @classmethod
    def uniform(cls, n_sc: int, bits: int, power: float = 1.0) -> "LoadingPlan":
        """Same constellation and power on every subcarrier."""
        b = np.full(n_sc, bits, dtype=int)
        p = np.full(n_sc, power if bits > 0 else 0.0)
        return cls(bits=b, power_scales=p, b_max=max(bits, B_MAX_DEFAULT))
