"""DCO-OFDM framing: Hermitian subcarrier mapping, cyclic prefix, FFT demodulation."""

import logging

import numpy as np

from dsp.constellation import Constellation, qam_map
from dsp.transforms import fft, ifft
from errors import ValidationError
from models.ofdm import FrameKind, OfdmConfig, OfdmFrame
from models.waveform import ComplexWaveform

logger = logging.getLogger(__name__)


def hermitian_spectrum(payload, cfg: OfdmConfig) -> np.ndarray:
    """IFFT input bins for one or more payload rows of n_sc symbols.

    X[0] = X[N/2] = 0, X[k] = S[k-1] for k = 1..n_sc and X[N-k] = conj(X[k]).
    """
    payload = np.asarray(payload, dtype=complex)
    if payload.shape[-1] != cfg.n_sc:
        raise ValidationError(f"payload has {payload.shape[-1]} symbols, expected {cfg.n_sc}")
    X = np.zeros(payload.shape[:-1] + (cfg.n_fft,), dtype=complex)
    X[..., 1 : cfg.n_sc + 1] = payload
    X[..., cfg.n_fft - cfg.n_sc :] = np.conj(payload[..., ::-1])
    return X


def build_frames(payloads, cfg: OfdmConfig) -> np.ndarray:
    """Real time-domain frames (rows) with the cyclic prefix prepended."""
    body = ifft(hermitian_spectrum(payloads, cfg)).real
    if cfg.n_cp == 0:
        return body
    return np.concatenate([body[..., -cfg.n_cp :], body], axis=-1)


def build_frame(frame: OfdmFrame, cfg: OfdmConfig) -> ComplexWaveform:
    frame.check_length(cfg)
    body = ifft(hermitian_spectrum(frame.payload_symbols, cfg))
    rms = np.sqrt(np.mean(body.real**2))
    residue = float(np.max(np.abs(body.imag)) / rms) if rms > 0 else 0.0
    samples = np.concatenate([body.real[cfg.n_fft - cfg.n_cp :], body.real])
    return ComplexWaveform(
        samples,
        cfg.symbol_rate,
        metadata={"kind": frame.kind.value, "imag_residue": residue},
    )


def demodulate_frames(blocks, cfg: OfdmConfig) -> np.ndarray:
    """Strips the CP of each row and returns the n_sc data bins, unequalized."""
    blocks = np.asarray(blocks, dtype=float)
    if blocks.shape[-1] != cfg.frame_length:
        raise ValidationError(
            f"received block has {blocks.shape[-1]} samples, expected {cfg.frame_length}"
        )
    return fft(blocks[..., cfg.n_cp :])[..., 1 : cfg.n_sc + 1]


def demodulate_frame(rx_block, gains, cfg: OfdmConfig) -> np.ndarray:
    """One-tap zero-forcing equalization of a single received frame."""
    gains = np.asarray(gains, dtype=complex)
    if gains.shape != (cfg.n_sc,):
        raise ValidationError(f"expected {cfg.n_sc} channel gains, got {gains.size}")
    if np.any(gains == 0):
        raise ValidationError("channel gain is zero on at least one subcarrier")
    return demodulate_frames(rx_block, cfg) / gains


def pilot_symbols(cfg: OfdmConfig) -> np.ndarray:
    """Fixed pseudo-random unit-variance 4-QAM pattern, one symbol per subcarrier."""
    rng = np.random.default_rng(cfg.pilot_seed)
    bits = rng.integers(0, 2, size=2 * cfg.n_sc)
    return qam_map(bits, Constellation.for_bits(2))


def pilot_frame(cfg: OfdmConfig) -> OfdmFrame:
    return OfdmFrame(pilot_symbols(cfg), kind=FrameKind.PILOT)
