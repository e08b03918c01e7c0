"""Bias configurations of the measured link and their reference SNR profiles."""

from typing import List

import numpy as np

from channel.stages import Brickwall, FirstOrderLowpass, ResponseStage, Ripple, SecondOrderLowpass
from errors import ValidationError
from models.link import LinkPreset

VCSEL_BANDWIDTH_HZ = 18e9
BIAS_TEE_CUTOFF_HZ = 12e9
SCOPE_CUTOFF_HZ = 11e9

# name -> (V_dc [V], I_dc [mA], P_t [mW], P_r [uW])
BIAS_POINTS = {
    "Config-I": (2.40, 8.42, 4.26, 445.0),
    "Config-II": (2.44, 9.46, 4.95, 510.0),
}


def reference_stages(
    resonance_hz: float = VCSEL_BANDWIDTH_HZ,
    damping: float = 0.7071,
    bias_tee_cutoff_hz: float = BIAS_TEE_CUTOFF_HZ,
    brickwall_cutoff_hz: float = SCOPE_CUTOFF_HZ,
    ripple_depth: float = 0.0,
    ripple_period_hz: float = 2e9,
) -> List[ResponseStage]:
    """VCSEL, bias tee and receiver cutoff, with an optional mismatch ripple."""
    stages: List[ResponseStage] = [
        SecondOrderLowpass(resonance_hz, damping),
        FirstOrderLowpass(bias_tee_cutoff_hz),
        Brickwall(brickwall_cutoff_hz),
    ]
    if ripple_depth > 0:
        stages.append(Ripple(ripple_depth, ripple_period_hz))
    return stages


def preset_for(name: str, **overrides) -> LinkPreset:
    """Table values for a named bias point with the measured response cascade."""
    if name not in BIAS_POINTS:
        raise ValidationError(f"no bias point named {name!r}; choose from {sorted(BIAS_POINTS)}")
    v_dc, i_dc, p_t, p_r = BIAS_POINTS[name]
    fields = dict(
        name=name,
        v_dc=v_dc,
        i_dc=i_dc,
        p_t=p_t,
        p_r=p_r,
        response_stages=reference_stages(),
    )
    fields.update(overrides)
    return LinkPreset(**fields)


def reference_snr_db(name: str, f) -> np.ndarray:
    """Shaped SNR reference (dB) with the structure of the measured profiles.

    A gentle decline up to 6 GHz, a steeper one to 10.8 GHz, a low shelf
    just before the 11 GHz cutoff and nothing above it. Values above the
    cutoff are -inf (zero SNR).
    """
    f_ghz = np.asarray(f, dtype=float) / 1e9
    if name == "Config-I":
        low = 23.5 - 0.5 * f_ghz
        mid = 17.5 - 0.8 * (f_ghz - 6)
    elif name == "Config-II":
        low = 23.0 - 0.45 * f_ghz
        mid = 20.3 - 1.1 * (f_ghz - 6)
    else:
        raise ValidationError(f"no reference profile for {name!r}")
    out = np.where(f_ghz < 6, low, mid)
    out = np.where(f_ghz >= 10.8, 5.0, out)
    return np.where(f_ghz >= SCOPE_CUTOFF_HZ / 1e9, -np.inf, out)
