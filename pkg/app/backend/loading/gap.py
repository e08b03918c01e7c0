"""SNR gap of uncoded QAM and the largest constellation a subcarrier supports."""

import math

import numpy as np

from errors import ValidationError
from models.loading import B_MAX_DEFAULT, GapParams

# Absorbs round-off when 1 + SNR/gamma lands exactly on a power of two
_LOG2_SLACK = 1e-9


def snr_gap(target_ber: float) -> GapParams:
    """gamma = -ln(5 BER) / 1.5, defined for 0 < BER < 0.2."""
    if not 0.0 < target_ber < 0.2:
        raise ValidationError(f"target BER must lie in (0, 0.2), got {target_ber}")
    return GapParams(target_ber=target_ber, gamma=-math.log(5 * target_ber) / 1.5)


def max_bits(snr_k, gap: GapParams, b_max: int = B_MAX_DEFAULT):
    """Largest b with 2^b <= 1 + SNR/gamma, capped at b_max."""
    snr = np.asarray(snr_k, dtype=float)
    if np.any(snr < 0):
        raise ValidationError("SNR must be non-negative")
    bits = np.floor(np.log2(1.0 + snr / gap.gamma) + _LOG2_SLACK).astype(int)
    bits = np.minimum(bits, b_max)
    return int(bits) if bits.ndim == 0 else bits
