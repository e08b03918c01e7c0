"""Laser spectrum records and multi-mode fiber dispersion parameters."""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np

from errors import ValidationError


@dataclass
class SpectrumRecord:
    """Sampled optical spectrum: wavelengths in nm, linear power S(lambda)."""

    wavelengths: np.ndarray
    power: np.ndarray

    def __post_init__(self):
        self.wavelengths = np.asarray(self.wavelengths, dtype=float)
        self.power = np.asarray(self.power, dtype=float)
        if self.wavelengths.shape != self.power.shape or self.wavelengths.ndim != 1:
            raise ValidationError("wavelengths and power must be 1-D of equal length")
        if self.wavelengths.size == 0:
            raise ValidationError("spectrum is empty")
        if np.any(np.diff(self.wavelengths) <= 0):
            raise ValidationError("wavelengths must be strictly increasing")
        if np.any(self.power < 0) or not np.all(np.isfinite(self.power)):
            raise ValidationError("spectral power must be finite and non-negative")
        if not np.any(self.power > 0):
            raise ValidationError("spectrum carries no power")


@dataclass(frozen=True)
class FiberParams:
    """D in ps/(nm km), sigma_lambda in nm, EMB in MHz km, alpha in dB/km, L in km."""

    # OM4 figures specified at 850 nm, used unchanged at 940 nm as a conservative bound
    d_coeff: float = 65.0
    sigma_lambda: float = 0.351
    emb: float = 4700.0
    alpha: float = 2.3
    length: float = 0.001

    def __post_init__(self):
        if self.emb <= 0:
            raise ValidationError("EMB must be positive")
        if self.length <= 0:
            raise ValidationError("fiber length must be positive")
        if self.alpha < 0:
            raise ValidationError("attenuation coefficient must be non-negative")
        if self.sigma_lambda < 0:
            raise ValidationError("sigma_lambda must be non-negative")

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class DispersionReport:
    """Pulse spreads in ps, cutoff frequencies in Hz, attenuation in dB, reach in km."""

    sigma_cd: float
    sigma_md: float
    sigma_total: float
    f3db_cd: float
    f3db_md: float
    f3db: float
    attenuation: float
    sigma_lambda: float
    spectral_width_compliant: bool
    l_max: Optional[float] = None
    signal_bandwidth: Optional[float] = None

    def to_row(self) -> Dict[str, Any]:
        return asdict(self)

    def to_text(self) -> str:
        """Aligned key-value rendering."""
        lines = [
            ("sigma_lambda", f"{self.sigma_lambda:.4g} nm"),
            ("sigma_cd", f"{self.sigma_cd:.6g} ps"),
            ("sigma_md", f"{self.sigma_md:.6g} ps"),
            ("sigma_total", f"{self.sigma_total:.6g} ps"),
            ("f3db_cd", _hz(self.f3db_cd)),
            ("f3db_md", _hz(self.f3db_md)),
            ("f3db", _hz(self.f3db)),
            ("attenuation", f"{self.attenuation:.4g} dB"),
            ("spectral_width_compliant", "yes" if self.spectral_width_compliant else "no"),
        ]
        if self.l_max is not None:
            lines.append(("signal_bandwidth", _hz(self.signal_bandwidth)))
            lines.append(("l_max", f"{self.l_max * 1e3:.1f} m"))
        width = max(len(k) for k, _ in lines)
        return "\n".join(f"{k.ljust(width)} : {v}" for k, v in lines)


def _hz(v: float) -> str:
    if math.isinf(v):
        return "inf"
    for scale, unit in ((1e12, "THz"), (1e9, "GHz"), (1e6, "MHz")):
        if v >= scale:
            return f"{v / scale:.4f} {unit}"
    return f"{v:.4g} Hz"
