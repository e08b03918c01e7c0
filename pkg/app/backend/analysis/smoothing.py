"""Centered moving mean with shrinking edge windows."""

import numpy as np

from errors import ValidationError

DEFAULT_WINDOW = 10


def moving_average(values, window: int = DEFAULT_WINDOW) -> np.ndarray:
    """Mean over a window centred on each sample.

    An odd window averages i - window//2 .. i + window//2. An even window
    spans window + 1 samples with half weight on its two end points, so it
    stays centred and a linear ramp passes through unchanged. Near the edges
    the half-width shrinks to the distance from the nearest end and the
    plain mean of that symmetric span is used.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ValidationError("moving_average needs a non-empty 1-D sequence")
    if not 1 <= window <= x.size:
        raise ValidationError(f"window must lie in [1, {x.size}], got {window}")
    idx = np.arange(x.size)
    half = window // 2
    reach = np.minimum(half, np.minimum(idx, x.size - 1 - idx))
    lo = idx - reach
    hi = idx + reach + 1
    csum = np.concatenate([[0.0], np.cumsum(x)])
    total = csum[hi] - csum[lo]
    count = (2 * reach + 1).astype(float)
    if window % 2 == 0:
        full = reach == half
        total[full] -= 0.5 * (x[lo[full]] + x[hi[full] - 1])
        count[full] -= 1.0
    return total / count
