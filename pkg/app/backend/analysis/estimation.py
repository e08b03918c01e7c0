"""Pilot-based channel and SNR estimation."""

import logging

import numpy as np

from errors import ValidationError
from models.profile import SNR_CAP_LINEAR, SnrProfile
from models.results import ChannelEstimate

logger = logging.getLogger(__name__)


def estimate_channel(pilot_tx, pilot_rx, frequencies=None) -> ChannelEstimate:
    """Least-squares gain and residual noise per subcarrier.

    Both inputs are (frames, n_sc). gains[k] = mean(rx/tx) over frames,
    noise_var[k] = sum|rx - g tx|^2 / (frames - 1) and
    snr[k] = |g|^2 E_s / noise_var[k], capped at 60 dB.
    """
    tx = np.asarray(pilot_tx, dtype=complex)
    rx = np.asarray(pilot_rx, dtype=complex)
    if tx.shape != rx.shape or tx.ndim != 2:
        raise ValidationError("pilot_tx and pilot_rx must be matching (frames, n_sc) arrays")
    n_frames, n_sc = tx.shape
    if n_frames < 2:
        raise ValidationError("at least 2 pilot frames are needed to estimate noise")
    if np.any(tx == 0):
        raise ValidationError("pilot symbols must be nonzero")

    gains = np.mean(rx / tx, axis=0)
    residual = rx - gains * tx
    noise_var = np.sum(np.abs(residual) ** 2, axis=0) / (n_frames - 1)
    symbol_energy = np.mean(np.abs(tx) ** 2, axis=0)
    signal = np.abs(gains) ** 2 * symbol_energy
    snr = np.full(n_sc, SNR_CAP_LINEAR)
    np.divide(signal, noise_var, out=snr, where=noise_var > 0)
    snr = np.minimum(snr, SNR_CAP_LINEAR)

    if frequencies is None:
        frequencies = np.arange(1, n_sc + 1, dtype=float)
    logger.debug("Estimated %d subcarriers from %d pilot frames", n_sc, n_frames)
    return ChannelEstimate(
        gains=gains,
        noise_var=noise_var,
        snr=SnrProfile(np.asarray(frequencies, dtype=float), snr),
        n_frames=n_frames,
    )
