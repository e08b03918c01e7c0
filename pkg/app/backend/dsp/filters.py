"""Root-raised-cosine pulse shaping taps."""

import numpy as np

from errors import ValidationError


def rrc_taps(rolloff: float, sps: int, span: int) -> np.ndarray:
    """RRC impulse response over `span` symbols, unit energy.

    Returns span*sps + 1 taps centred on t = 0. The singular points t = 0 and
    |t| = 1/(4*rolloff) take their analytic limits.
    """
    if not 0.0 <= rolloff <= 1.0:
        raise ValidationError(f"rolloff must lie in [0, 1], got {rolloff}")
    if sps < 1:
        raise ValidationError(f"sps must be >= 1, got {sps}")
    if span < 2 or span % 2:
        raise ValidationError(f"span must be even and >= 2, got {span}")

    n_taps = span * sps + 1
    t = (np.arange(n_taps) - (n_taps - 1) / 2) / sps
    h = np.zeros_like(t)

    at_zero = np.isclose(t, 0.0)
    h[at_zero] = 1.0 - rolloff + 4 * rolloff / np.pi

    if rolloff > 0:
        at_edge = np.isclose(np.abs(t), 1 / (4 * rolloff))
        h[at_edge] = (rolloff / np.sqrt(2)) * (
            (1 + 2 / np.pi) * np.sin(np.pi / (4 * rolloff))
            + (1 - 2 / np.pi) * np.cos(np.pi / (4 * rolloff))
        )
    else:
        at_edge = np.zeros_like(at_zero)

    general = ~(at_zero | at_edge)
    tg = t[general]
    num = np.sin(np.pi * tg * (1 - rolloff)) + 4 * rolloff * tg * np.cos(np.pi * tg * (1 + rolloff))
    den = np.pi * tg * (1 - (4 * rolloff * tg) ** 2)
    h[general] = num / den

    return h / np.sqrt(np.sum(h**2))
