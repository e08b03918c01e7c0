"""Measured VCSEL spectral widths, selectable in place of a spectrum file."""

from errors import ValidationError

# RMS spectral width (nm) by bias current (mA); the peak drifts 939.2 -> 941.2 nm
SIGMA_LAMBDA_BY_BIAS = {5.0: 0.22, 10.0: 0.351, 15.0: 0.591}


def sigma_lambda_at(bias_ma: float) -> float:
    try:
        return SIGMA_LAMBDA_BY_BIAS[float(bias_ma)]
    except KeyError:
        raise ValidationError(
            f"no measured spectral width at {bias_ma} mA; choose from {sorted(SIGMA_LAMBDA_BY_BIAS)}"
        ) from None
