"""Static light-current characteristic of the transmitter."""

import numpy as np

from errors import ValidationError
from models.link import VcselModel


def vcsel_power(i, model: VcselModel) -> np.ndarray:
    """Optical power (mW) for drive current i (mA).

    Zero below threshold, linear up to the end of the linear range, then a
    cubic Hermite easing that reaches p_max with zero slope at the rollover
    current and stays there.
    """
    i = np.asarray(i, dtype=float)
    if np.any(i < 0):
        raise ValidationError("drive current must be non-negative")

    s = model.slope_efficiency
    i_hi = model.linear_range[1]
    p_hi = s * (i_hi - model.i_threshold)
    span = model.i_rollover - i_hi

    t = np.clip((i - i_hi) / span, 0.0, 1.0)
    h00 = 2 * t**3 - 3 * t**2 + 1
    h10 = t**3 - 2 * t**2 + t
    h01 = -2 * t**3 + 3 * t**2
    eased = h00 * p_hi + h10 * span * s + h01 * model.p_max

    linear = s * np.maximum(i - model.i_threshold, 0.0)
    p = np.where(i <= i_hi, linear, eased)
    return p if p.ndim else float(p)
