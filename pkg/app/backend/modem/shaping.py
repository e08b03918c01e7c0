"""Root-raised-cosine pulse shaping and the matching receive filter."""

import numpy as np
from scipy import signal

from dsp.filters import rrc_taps
from models.ofdm import OfdmConfig
from models.waveform import ComplexWaveform


def shaping_taps(cfg: OfdmConfig) -> np.ndarray:
    """Transmit/receive filter; a single unit tap when n_sps = 1."""
    if cfg.n_sps == 1:
        return np.ones(1)
    return rrc_taps(cfg.rolloff, cfg.n_sps, cfg.rrc_span)


def pulse_shape(samples, cfg: OfdmConfig) -> ComplexWaveform:
    """Upsamples by n_sps and filters; output runs at F_s.

    At n_sps = 1 the OFDM samples already fill the Nyquist band, so the
    filter is the identity and the group delay is zero.
    """
    x = np.asarray(samples, dtype=float)
    taps = shaping_taps(cfg)
    delay = (len(taps) - 1) // 2
    if cfg.n_sps == 1:
        y = x.copy()
    else:
        up = np.zeros(len(x) * cfg.n_sps)
        up[:: cfg.n_sps] = x
        y = signal.fftconvolve(up, taps, mode="full")
    return ComplexWaveform(
        y,
        cfg.sample_rate,
        metadata={"group_delay": delay, "n_symbols": len(x), "n_sps": cfg.n_sps},
    )


def matched_filter(rx, cfg: OfdmConfig, n_symbols: int = None) -> np.ndarray:
    """Receive RRC, removal of the combined group delay, decimation to 2B."""
    y = np.asarray(rx.samples if isinstance(rx, ComplexWaveform) else rx, dtype=float)
    if cfg.n_sps == 1:
        return y if n_symbols is None else y[:n_symbols]
    taps = shaping_taps(cfg)
    delay = len(taps) - 1
    if n_symbols is None:
        n_symbols = int(np.ceil((len(y) - delay) / cfg.n_sps))
    z = signal.fftconvolve(y, taps, mode="full")
    picked = z[delay :: cfg.n_sps][:n_symbols]
    if len(picked) < n_symbols:
        picked = np.concatenate([picked, np.zeros(n_symbols - len(picked))])
    return picked
