"""Power-of-two discrete Fourier transforms (unscaled forward, 1/N inverse)."""

import numpy as np
from scipy import fft as sp_fft

from errors import ValidationError
from models.ofdm import is_power_of_two


def _check_length(x: np.ndarray) -> None:
    n = x.shape[-1] if x.ndim else 0
    if not is_power_of_two(n):
        raise ValidationError(f"transform length must be a power of two, got {n}")


def fft(x) -> np.ndarray:
    """Forward DFT along the last axis, no scaling."""
    x = np.asarray(x)
    _check_length(x)
    return sp_fft.fft(x, axis=-1)


def ifft(X) -> np.ndarray:
    """Inverse DFT along the last axis with 1/N scaling, so ifft(fft(x)) == x."""
    X = np.asarray(X)
    _check_length(X)
    return sp_fft.ifft(X, axis=-1)
