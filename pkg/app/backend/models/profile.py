"""Per-frequency SNR profile on a uniform grid."""

from dataclasses import dataclass

import numpy as np

from errors import ValidationError

# Finite stand-in for an infinite SNR (noise-free estimate), 60 dB
SNR_CAP_LINEAR = 1e6
# Floor used when converting a zero SNR to dB
SNR_FLOOR_DB = -60.0


def to_db(snr_linear) -> np.ndarray:
    snr = np.maximum(np.asarray(snr_linear, dtype=float), 10 ** (SNR_FLOOR_DB / 10))
    return 10 * np.log10(snr)


def from_db(snr_db) -> np.ndarray:
    return 10 ** (np.asarray(snr_db, dtype=float) / 10)


@dataclass
class SnrProfile:
    """Linear SNR values sampled at strictly increasing frequencies (Hz)."""

    frequencies: np.ndarray
    snr_linear: np.ndarray

    def __post_init__(self):
        self.frequencies = np.asarray(self.frequencies, dtype=float)
        self.snr_linear = np.asarray(self.snr_linear, dtype=float)
        if self.frequencies.shape != self.snr_linear.shape or self.frequencies.ndim != 1:
            raise ValidationError("frequencies and snr_linear must be 1-D of equal length")
        if len(self.frequencies) > 1 and np.any(np.diff(self.frequencies) <= 0):
            raise ValidationError("frequencies must be strictly increasing")
        if np.any(self.snr_linear < 0) or not np.all(np.isfinite(self.snr_linear)):
            raise ValidationError("SNR values must be finite and non-negative")

    def __len__(self) -> int:
        return len(self.frequencies)

    @classmethod
    def from_db(cls, frequencies, snr_db) -> "SnrProfile":
        return cls(np.asarray(frequencies, dtype=float), from_db(snr_db))

    @property
    def snr_db(self) -> np.ndarray:
        return to_db(self.snr_linear)

    def snr_at(self, f) -> np.ndarray:
        """Linear interpolation; held flat below the grid and zero above it."""
        return np.interp(
            np.asarray(f, dtype=float),
            self.frequencies,
            self.snr_linear,
            left=self.snr_linear[0],
            right=0.0,
        )
