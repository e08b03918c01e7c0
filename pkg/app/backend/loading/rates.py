"""Achievable data rates: loaded rate, discrete and integral gap bounds."""

import logging

import numpy as np
from scipy import integrate

from errors import NumericError, ValidationError
from models.loading import GapParams
from models.ofdm import OfdmConfig
from models.profile import SnrProfile
from models.pwl import PwlModel

logger = logging.getLogger(__name__)

MAX_STEP_HZ = 1e6
RTOL = 1e-4
_MAX_REFINEMENTS = 12


def data_rate(total_bits: int, cfg: OfdmConfig) -> float:
    """R = 2B / (N_FFT + N_CP) * sum(b_k)."""
    if total_bits < 0:
        raise ValidationError("total_bits must be non-negative")
    return cfg.symbol_rate * total_bits / cfg.frame_length


def rate_bound_discrete(profile: SnrProfile, gap: GapParams, cfg: OfdmConfig) -> float:
    """Real-valued bits per subcarrier from the gap capacity, no flooring."""
    if len(profile) != cfg.n_sc:
        raise ValidationError(f"profile has {len(profile)} points, expected {cfg.n_sc}")
    bits = np.log2(1.0 + profile.snr_linear / gap.gamma)
    return float(cfg.symbol_rate * bits.sum() / cfg.frame_length)


def _trapezoid(snr_fn, f_max: float, n: int, gamma: float) -> float:
    f = np.linspace(0.0, f_max, n + 1)
    snr = np.asarray(snr_fn.snr_at(f), dtype=float)
    if np.any(snr < 0):
        raise ValidationError("SNR function returned negative values")
    return float(integrate.trapezoid(np.log2(1.0 + snr / gamma), f))


def rate_bound_integral(
    snr_fn,
    f_max: float,
    gap: GapParams,
    max_step: float = MAX_STEP_HZ,
    rtol: float = RTOL,
) -> float:
    """Integral of log2(1 + SNR(f)/gamma) over [0, f_max] (bit/s).

    Composite trapezoid, step at most `max_step`, halved until two successive
    results agree within `rtol`. A PwlModel is evaluated in extrapolated mode
    when f_max lies past its cutoff and in approximated mode otherwise.
    """
    if f_max < 0:
        raise ValidationError("f_max must be non-negative")
    if f_max == 0:
        return 0.0
    if isinstance(snr_fn, PwlModel):
        snr_fn = snr_fn.extrapolated() if f_max > snr_fn.f_cutoff else snr_fn.approximated()

    n = max(1, int(np.ceil(f_max / max_step)))
    coarse = _trapezoid(snr_fn, f_max, n, gap.gamma)
    for _ in range(_MAX_REFINEMENTS):
        n *= 2
        fine = _trapezoid(snr_fn, f_max, n, gap.gamma)
        if abs(fine - coarse) <= rtol * abs(fine):
            return fine
        coarse = fine
    raise NumericError(
        f"rate integral did not converge to {rtol:g} after {_MAX_REFINEMENTS} refinements"
    )
