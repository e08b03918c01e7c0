"""Noise and shaping calibration so the emulated link reproduces a target SNR profile."""

import logging

import numpy as np

from analysis.smoothing import moving_average
from channel.link import frequency_response, small_signal_gain
from channel.stages import Tabulated
from errors import CalibrationError, ValidationError
from models.link import LinkPreset, VcselModel
from models.ofdm import OfdmConfig
from models.profile import SNR_CAP_LINEAR, SnrProfile, to_db
from modem.stream import probe_channel

logger = logging.getLogger(__name__)

TOLERANCE_DB = 1.0
MAX_ITERATIONS = 3
CORRECTION_WINDOW = 10


def _usable(target: np.ndarray) -> np.ndarray:
    # Subcarriers that carry at least 0 dB in the target get loaded
    return target >= 1.0


def calibration_error_db(achieved: SnrProfile, target: SnrProfile) -> float:
    """Mean absolute dB error over the target's usable subcarriers."""
    mask = _usable(target.snr_linear)
    if not mask.any():
        return 0.0
    return float(np.mean(np.abs(achieved.snr_db[mask] - target.snr_db[mask])))


def calibrate_noise(
    preset: LinkPreset,
    target: SnrProfile,
    cfg: OfdmConfig,
    model: VcselModel = None,
    seed: int = 0,
    tolerance_db: float = TOLERANCE_DB,
    iterations: int = MAX_ITERATIONS,
) -> LinkPreset:
    """Returns a preset whose pilot-estimated SNR matches `target`.

    A tabulated shaping stage takes the spectral shape and noise_std the
    absolute level, both from the flat-link SNR formula. A few closed-loop
    passes then correct the shape with the smoothed dB error measured on
    pilots. Raises CalibrationError, carrying the achieved profile, when
    the target cannot be reached within tolerance_db.
    """
    model = model or VcselModel()
    if len(target) != cfg.n_sc:
        raise ValidationError(f"target has {len(target)} points, expected {cfg.n_sc}")
    freqs = cfg.subcarrier_frequencies()
    wanted = np.asarray(target.snr_linear, dtype=float)
    usable = _usable(wanted)
    if not usable.any():
        raise ValidationError("target profile has no subcarrier at or above 0 dB")

    base_stages = [s for s in preset.response_stages if not isinstance(s, Tabulated)]
    base = preset.with_changes(response_stages=base_stages)
    h = np.abs(frequency_response(base, freqs))

    blocked = usable & (h == 0)
    if blocked.any() or np.any(wanted[usable] >= SNR_CAP_LINEAR):
        raise CalibrationError(
            f"target asks for SNR on {int(blocked.sum())} blocked subcarrier(s) "
            f"or above the {to_db(SNR_CAP_LINEAR):.0f} dB estimator ceiling",
            achieved=probe_channel(base, cfg, seed, model).snr,
            preset=base,
        )

    # shape_k * h_k = a * sqrt(target_k), with shape = 1 on the first usable subcarrier
    k0 = int(np.flatnonzero(usable)[0])
    a = h[k0] / np.sqrt(wanted[k0])
    shape = np.zeros_like(wanted)
    open_ = h > 0
    shape[open_] = a * np.sqrt(wanted[open_]) / h[open_]
    # noise for which (G a)^2 * target_k * N * n_sps / (2 n_sc sigma^2) = target_k
    sigma = small_signal_gain(base, model) * a * np.sqrt(cfg.n_sps * cfg.n_fft / (2 * cfg.n_sc))

    candidate = _with_shape(base, freqs, shape, sigma)
    achieved = probe_channel(candidate, cfg, seed, model).snr
    error = calibration_error_db(achieved, target)
    logger.info("Calibration start: noise_std=%.4g mA, MAE %.3f dB", sigma, error)

    for step in range(iterations):
        if error <= tolerance_db / 2:
            break
        diff = np.zeros_like(wanted)
        diff[usable] = target.snr_db[usable] - achieved.snr_db[usable]
        correction = np.zeros_like(wanted)
        correction[usable] = moving_average(diff[usable], min(CORRECTION_WINDOW, int(usable.sum())))
        shape = shape * 10 ** (correction / 20)
        candidate = _with_shape(base, freqs, shape, sigma)
        achieved = probe_channel(candidate, cfg, seed, model).snr
        error = calibration_error_db(achieved, target)
        logger.info("Calibration pass %d: MAE %.3f dB", step + 1, error)

    if error > tolerance_db:
        logger.warning("Calibration stopped at MAE %.3f dB (tolerance %.3f dB)", error, tolerance_db)
        raise CalibrationError(
            f"achieved MAE {error:.3f} dB exceeds {tolerance_db} dB",
            achieved=achieved,
            preset=candidate,
        )
    return candidate


def _with_shape(base: LinkPreset, freqs: np.ndarray, shape: np.ndarray, sigma: float) -> LinkPreset:
    table = Tabulated(np.concatenate([[0.0], freqs]), np.concatenate([[shape[0]], shape]))
    return base.with_changes(response_stages=base.response_stages + [table], noise_std=float(sigma))
