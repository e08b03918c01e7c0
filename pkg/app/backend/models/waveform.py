"""Sampled waveform container used between the modem and the channel."""

from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from errors import NumericError, ValidationError


@dataclass
class ComplexWaveform:
    """A block of samples taken at `sample_rate` Hz.

    Real-valued signals (the DCO-OFDM drive, the photocurrent) use the same
    container with a real dtype.
    """

    samples: np.ndarray
    sample_rate: float
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.samples = np.asarray(self.samples)
        if self.sample_rate <= 0:
            raise ValidationError(f"sample_rate must be positive, got {self.sample_rate}")
        if not np.all(np.isfinite(self.samples)):
            raise NumericError("waveform contains NaN or Inf samples")

    def __len__(self) -> int:
        return len(self.samples)
