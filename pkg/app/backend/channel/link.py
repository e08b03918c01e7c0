"""End-to-end link emulation: drive mapping, LIV curve, response cascade, detection, noise."""

import logging

import numpy as np
from scipy import fft as sp_fft

from channel.stages import cascade_response
from channel.vcsel import vcsel_power
from errors import ValidationError
from models.link import LinkPreset, VcselModel
from models.ofdm import OfdmConfig
from models.waveform import ComplexWaveform

logger = logging.getLogger(__name__)

# Share of drive samples outside [0, i_rollover] that marks the clipping regime
CLIPPING_FRACTION = 0.01


def frequency_response(preset: LinkPreset, f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if np.any(f < 0):
        raise ValidationError("frequency must be non-negative")
    return cascade_response(preset.response_stages, f)


def small_signal_gain(preset: LinkPreset, model: VcselModel) -> float:
    """Photocurrent (mA) per unit of normalized drive, in the linear region."""
    return preset.drive_scale * model.slope_efficiency * preset.responsivity


def noise_std_for_snr(preset: LinkPreset, model: VcselModel, cfg: OfdmConfig, snr) -> float:
    """Noise level giving per-subcarrier SNR `snr` (linear) through a flat link.

    The transmit stream has unit-variance pilots, so after the N-point FFT a
    subcarrier carries |G|^2 N^2 / (2 n_sc) of signal against N sigma^2 of noise.
    """
    if snr <= 0:
        raise ValidationError("target SNR must be positive")
    gain = small_signal_gain(preset, model)
    return float(gain * np.sqrt(cfg.n_sps * cfg.n_fft / (2 * cfg.n_sc * snr)))


def _zero_phase_filter(x: np.ndarray, sample_rate: float, preset: LinkPreset) -> np.ndarray:
    # |H| applied to the AC part; zero padding keeps the convolution linear
    mean = float(np.mean(x))
    n = sp_fft.next_fast_len(2 * len(x))
    spectrum = sp_fft.rfft(x - mean, n)
    gain = np.abs(frequency_response(preset, sp_fft.rfftfreq(n, 1.0 / sample_rate)))
    y = sp_fft.irfft(spectrum * gain, n)[: len(x)]
    return y + mean * gain[0]


def apply_link(
    tx,
    preset: LinkPreset,
    model: VcselModel,
    seed: int,
    sample_rate: float = None,
) -> ComplexWaveform:
    """Pushes a unit-std drive signal through the link; returns the photocurrent (mA).

    The metadata records whether the drive left [0, i_rollover] on more than
    1% of the samples (`clipping`).
    """
    if isinstance(tx, ComplexWaveform):
        sample_rate = tx.sample_rate
        x = np.asarray(tx.samples, dtype=float)
    else:
        x = np.asarray(tx, dtype=float)
    if sample_rate is None:
        raise ValidationError("sample_rate is required for a raw sample sequence")
    preset.check_bias(model)

    current = preset.i_dc + preset.drive_scale * x
    outside = float(np.mean((current < 0) | (current > model.i_rollover))) if x.size else 0.0
    clipping = outside > CLIPPING_FRACTION
    if clipping:
        logger.warning(
            "Drive leaves [0, %.1f] mA on %.2f%% of samples (kappa=%.3g mA)",
            model.i_rollover,
            100 * outside,
            preset.drive_scale,
        )

    optical = vcsel_power(np.maximum(current, 0.0), model)
    filtered = _zero_phase_filter(optical, sample_rate, preset) if x.size else optical
    photocurrent = preset.responsivity * filtered

    if preset.delay_samples:
        idle = preset.responsivity * vcsel_power(preset.i_dc, model)
        photocurrent = np.concatenate([np.full(preset.delay_samples, idle), photocurrent])

    rng = np.random.default_rng(seed)
    if preset.noise_std > 0:
        photocurrent = photocurrent + rng.normal(0.0, preset.noise_std, photocurrent.size)

    return ComplexWaveform(
        photocurrent,
        sample_rate,
        metadata={
            "clipping": clipping,
            "clipped_fraction": outside,
            "delay_samples": preset.delay_samples,
            "seed": seed,
        },
    )
