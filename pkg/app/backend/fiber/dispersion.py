"""Multi-mode fiber bandwidth and reach under chromatic plus modal dispersion.

Units: D in ps/(nm km), sigma_lambda in nm, EMB in MHz km, L in km. A
Gaussian impulse response with RMS width sigma has a 3 dB bandwidth of
sqrt(ln 2) / (2 pi sigma).
"""

import math

from errors import ValidationError
from models.fiber import DispersionReport, FiberParams

# Ethernet-over-MMF spectral width limit for 842-948 nm VCSELs
MAX_COMPLIANT_SIGMA_NM = 0.65

_GAUSS = math.sqrt(math.log(2)) / (2 * math.pi)


def _spread_to_bandwidth(sigma_s: float) -> float:
    return math.inf if sigma_s == 0 else _GAUSS / sigma_s


def _spread_per_km(params: FiberParams) -> float:
    """Combined RMS pulse spread per km of fiber, in seconds."""
    cd = abs(params.d_coeff) * params.sigma_lambda * 1e-12
    md = _GAUSS / (params.emb * 1e6)
    return math.hypot(cd, md)


def dispersion_report(params: FiberParams, signal_bandwidth: float = None) -> DispersionReport:
    L = params.length
    sigma_cd = abs(params.d_coeff) * params.sigma_lambda * L  # ps
    f3db_cd = _spread_to_bandwidth(sigma_cd * 1e-12)
    f3db_md = params.emb * 1e6 / L
    sigma_md = _GAUSS / f3db_md * 1e12  # ps
    sigma_total = math.hypot(sigma_cd, sigma_md)
    f3db = _spread_to_bandwidth(sigma_total * 1e-12)
    l_max = max_reach(params, signal_bandwidth) if signal_bandwidth else None
    return DispersionReport(
        sigma_cd=sigma_cd,
        sigma_md=sigma_md,
        sigma_total=sigma_total,
        f3db_cd=f3db_cd,
        f3db_md=f3db_md,
        f3db=f3db,
        attenuation=params.alpha * L,
        sigma_lambda=params.sigma_lambda,
        spectral_width_compliant=params.sigma_lambda <= MAX_COMPLIANT_SIGMA_NM,
        l_max=l_max,
        signal_bandwidth=signal_bandwidth,
    )


def max_reach(params: FiberParams, signal_bandwidth: float) -> float:
    """Longest fiber (km) whose combined 3 dB bandwidth still covers B; the length field is ignored."""
    if signal_bandwidth <= 0:
        raise ValidationError("signal bandwidth must be positive")
    return _GAUSS / (signal_bandwidth * _spread_per_km(params))
