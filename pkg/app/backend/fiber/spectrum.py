"""RMS spectral width of a sampled laser spectrum."""

import logging
from typing import Tuple

import numpy as np
import pandas as pd
from scipy import integrate

from errors import ValidationError
from models.fiber import SpectrumRecord

logger = logging.getLogger(__name__)


def rms_spectral_width(spectrum: SpectrumRecord) -> Tuple[float, float]:
    """Power-weighted mean wavelength and standard deviation (nm), trapezoid rule.

    A single sample is a pure line: its wavelength with zero width.
    """
    lam, s = spectrum.wavelengths, spectrum.power
    if lam.size == 1:
        return float(lam[0]), 0.0
    total = integrate.trapezoid(s, lam)
    if total <= 0:
        # Isolated nonzero samples at the grid ends integrate to zero weight
        raise ValidationError("spectrum has no integrable power")
    mean = integrate.trapezoid(lam * s, lam) / total
    var = integrate.trapezoid((lam - mean) ** 2 * s, lam) / total
    return float(mean), float(np.sqrt(max(var, 0.0)))


def load_spectrum(path) -> SpectrumRecord:
    """Reads two columns (wavelength_nm, power_linear); '#' starts a comment."""
    try:
        table = pd.read_csv(
            path,
            comment="#",
            sep=r"[\s,]+",
            header=None,
            names=["wavelength_nm", "power_linear"],
            engine="python",
        )
    except pd.errors.EmptyDataError:
        raise ValidationError(f"{path}: no spectrum samples") from None
    table = table.dropna()
    if table.empty:
        raise ValidationError(f"{path}: no spectrum samples")
    logger.info("Loaded %d spectrum samples from %s", len(table), path)
    return SpectrumRecord(
        table["wavelength_nm"].to_numpy(dtype=float),
        table["power_linear"].to_numpy(dtype=float),
    )
