"""Two-segment piecewise-linear regression of SNR (dB) and extrapolation past the cutoff."""

import logging

import numpy as np
from scipy import optimize

from analysis.smoothing import DEFAULT_WINDOW, moving_average
from errors import ExtrapolationError, ValidationError
from loading.gap import snr_gap
from loading.rates import rate_bound_integral
from models.loading import GapParams
from models.profile import SnrProfile, from_db, to_db
from models.pwl import PwlModel

logger = logging.getLogger(__name__)

MIN_POINTS = 20
MIN_SEGMENT_POINTS = 2
USABLE_SNR_DB = 1.0
ANCHOR_FLOOR_DB = -15.0


def _select_f2(freqs: np.ndarray, smoothed: np.ndarray, f_cutoff: float):
    """Last frequency before the cutoff whose smoothed SNR is still >= 1 dB."""
    before = freqs < f_cutoff
    above = np.flatnonzero(before & (smoothed >= USABLE_SNR_DB))
    if above.size == 0:
        raise ValidationError("profile never reaches 1 dB before the cutoff")
    last = int(above[-1])
    if last == np.flatnonzero(before)[-1]:
        return f_cutoff, True
    return float(freqs[last]), False


def _fit_breakpoint(x: np.ndarray, y: np.ndarray):
    """Grid search of the breakpoint over the sample positions; x in GHz."""
    best = None
    for j in range(MIN_SEGMENT_POINTS, x.size - MIN_SEGMENT_POINTS + 1):
        c = x[j]
        basis = np.column_stack([np.ones_like(x), x, np.maximum(x - c, 0.0)])
        coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
        sse = float(np.sum((basis @ coef - y) ** 2))
        if best is None or sse < best[0]:
            best = (sse, c, coef)
    return best


def pwl_fit(profile: SnrProfile, f_cutoff: float = 11e9, window: int = DEFAULT_WINDOW) -> PwlModel:
    """Fits connected lines over [0, f1) and [f1, f2] to the profile in dB.

    The smoothed profile only selects f2; the lines are fitted to the raw dB
    values, with f1 searched over the profile frequencies.
    """
    keep = profile.frequencies <= f_cutoff
    freqs = profile.frequencies[keep]
    if freqs.size < MIN_POINTS:
        raise ValidationError(
            f"need at least {MIN_POINTS} points up to the cutoff, got {freqs.size}"
        )
    y_db = to_db(profile.snr_linear[keep])
    smoothed = moving_average(y_db, min(window, y_db.size))
    f2, clamped = _select_f2(freqs, smoothed, f_cutoff)
    if clamped:
        logger.warning("SNR stays above %.1f dB up to the cutoff; f2 clamped to %.4g Hz", USABLE_SNR_DB, f_cutoff)

    in_fit = freqs <= f2
    x = freqs[in_fit] / 1e9
    if x.size < 2 * MIN_SEGMENT_POINTS + 1:
        raise ValidationError("too few points below f2 for a two-segment fit")
    sse, c, (b0, b1, b2) = _fit_breakpoint(x, y_db[in_fit])

    model = PwlModel(
        f1=float(c * 1e9),
        f2=float(f2),
        f_cutoff=float(f_cutoff),
        intercept_db=float(b0),
        slope1_db=float(b1 / 1e9),
        slope2_db=float((b1 + b2) / 1e9),
        f2_clamped=clamped,
        residual=sse,
        smoothed_db=smoothed,
    )
    if not model.extrapolatable:
        logger.warning("Fitted segment-2 slope %.4g dB/GHz cannot be extrapolated", b1 + b2)
    logger.info("PWL fit: f1=%.4g Hz, f2=%.4g Hz, residual %.4g dB^2", model.f1, model.f2, sse)
    return model


def extrapolate(model: PwlModel) -> PwlModel:
    """Populates f_ext, where the segment-2 line crosses 0 dB."""
    f_ext = model.zero_crossing()
    if f_ext <= model.f_cutoff:
        raise ExtrapolationError(
            f"segment 2 reaches 0 dB at {f_ext:.4g} Hz, not past the cutoff {model.f_cutoff:.4g} Hz"
        )
    logger.info("Extrapolated 0 dB crossing at %.4g Hz", f_ext)
    return model.with_extrapolation(f_ext)


def anchored_profile(
    f1: float,
    f2: float,
    f_ext: float,
    level_db: float,
    freqs,
    floor_db: float = ANCHOR_FLOOR_DB,
) -> SnrProfile:
    """Flat level up to f1, a line through 0 dB at f_ext up to f2, a floor after."""
    freqs = np.asarray(freqs, dtype=float)
    if not 0 < f1 < f2 < f_ext:
        raise ValidationError("anchors must satisfy 0 < f1 < f2 < f_ext")
    line = level_db * (f_ext - freqs) / (f_ext - f1)
    db = np.where(freqs < f1, level_db, line)
    db = np.where(freqs > f2, floor_db, db)
    return SnrProfile(freqs, from_db(db))


def calibrate_level(
    f1: float,
    f2: float,
    f_ext: float,
    rate: float,
    gap: GapParams,
    freqs,
    f_cutoff: float = 11e9,
    bracket=(10.0, 50.0),
) -> float:
    """Segment-1 level (dB) at which the fitted model's bound at f_cutoff equals `rate`."""

    def excess(level_db: float) -> float:
        model = pwl_fit(anchored_profile(f1, f2, f_ext, level_db, freqs), f_cutoff)
        return rate_bound_integral(model, f_cutoff, gap) - rate

    lo, hi = bracket
    if excess(lo) > 0 or excess(hi) < 0:
        raise ValidationError(f"rate {rate:.4g} bit/s is not reachable for levels in {bracket} dB")
    return float(optimize.brentq(excess, lo, hi, xtol=1e-6))


# name -> (f1, f2, f_ext [Hz], measured rate [bit/s], target BER of that rate)
MEASURED_ANCHORS = {
    "Config-I": (2.38e9, 10.80e9, 23.26e9, 72.0e9, 3.3e-2),
    "Config-II": (3.00e9, 10.80e9, 24.36e9, 71.6e9, 3.1e-2),
}


def anchored_reference(name: str, freqs, f_cutoff: float = 11e9) -> SnrProfile:
    """Anchored profile whose bound at the cutoff equals the measured rate of `name`."""
    if name not in MEASURED_ANCHORS:
        raise ValidationError(f"no anchors for {name!r}; choose from {sorted(MEASURED_ANCHORS)}")
    f1, f2, f_ext, rate, target = MEASURED_ANCHORS[name]
    level = calibrate_level(f1, f2, f_ext, rate, snr_gap(target), freqs, f_cutoff)
    logger.info("Anchored %s profile: segment-1 level %.3f dB", name, level)
    return anchored_profile(f1, f2, f_ext, level, freqs)
