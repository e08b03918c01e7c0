"""Pilot+data streams through the emulated link, end to end."""

import logging
from typing import Tuple

import numpy as np

from analysis.ber import count_errors
from analysis.estimation import estimate_channel
from channel.link import apply_link
from dsp.constellation import Constellation, qam_demap, qam_map
from errors import ValidationError
from loading.rates import data_rate
from models.link import LinkPreset, VcselModel
from models.loading import LoadingPlan
from models.ofdm import OfdmConfig
from models.results import ChannelEstimate, StreamResult
from models.waveform import ComplexWaveform
from modem.framing import build_frames, demodulate_frames, pilot_symbols
from modem.shaping import matched_filter, pulse_shape, shaping_taps
from modem.sync import synchronize

logger = logging.getLogger(__name__)


def drive_scale_factor(cfg: OfdmConfig) -> float:
    """Gain that brings unit-variance pilots to a unit-std drive signal."""
    return cfg.n_fft / np.sqrt(2 * cfg.n_sc) * np.sqrt(cfg.n_sps)


def transmit(payloads, cfg: OfdmConfig) -> ComplexWaveform:
    """Frames every payload row, serializes and pulse-shapes the stream."""
    frames = build_frames(payloads, cfg) * drive_scale_factor(cfg)
    shaped = pulse_shape(frames.ravel(), cfg)
    shaped.metadata["n_frames"] = frames.shape[0]
    return shaped


def receive(rx: ComplexWaveform, reference, n_frames: int, cfg: OfdmConfig) -> Tuple[np.ndarray, int]:
    """Finds the first frame, matched-filters and returns the (frames, n_sc) data bins.

    The reference is the shaped first pilot frame; the search spans one frame,
    so the link delay must be shorter than a frame.
    """
    x = np.asarray(rx.samples, dtype=float)
    x = x - x.mean()
    reference = np.asarray(reference, dtype=float)
    span = len(reference) + cfg.frame_length * cfg.n_sps - 1
    offset = synchronize(x[: min(span, len(x))], reference)

    expected = n_frames * cfg.frame_length * cfg.n_sps + len(shaping_taps(cfg)) - 1
    aligned = x[offset : offset + expected]
    if len(aligned) < expected:
        aligned = np.concatenate([aligned, np.zeros(expected - len(aligned))])
    symbols = matched_filter(aligned, cfg, n_symbols=n_frames * cfg.frame_length)
    return demodulate_frames(symbols.reshape(n_frames, cfg.frame_length), cfg), offset


def _bit_columns(plan: LoadingPlan):
    # Frame-major layout: subcarrier k owns bits offsets[k] .. offsets[k] + b_k of a frame
    offsets = np.concatenate([[0], np.cumsum(plan.bits)[:-1]])
    for b in np.unique(plan.bits[plan.bits > 0]):
        idx = np.flatnonzero(plan.bits == b)
        yield int(b), idx, offsets[idx][:, None] + np.arange(b)


def map_payload(tx_bits, plan: LoadingPlan, cfg: OfdmConfig) -> np.ndarray:
    """Data-frame symbols, each scaled by the square root of its power."""
    frames = np.asarray(tx_bits).reshape(cfg.n_data_frames, plan.total_bits)
    payload = np.zeros((cfg.n_data_frames, cfg.n_sc), dtype=complex)
    for b, idx, cols in _bit_columns(plan):
        symbols = qam_map(frames[:, cols].ravel(), Constellation.for_bits(b))
        payload[:, idx] = symbols.reshape(cfg.n_data_frames, idx.size) * np.sqrt(plan.power_scales[idx])
    return payload


def demap_payload(bins, gains, plan: LoadingPlan, cfg: OfdmConfig) -> np.ndarray:
    """Zero-forcing equalization, power de-scaling and hard demapping."""
    out = np.zeros((cfg.n_data_frames, plan.total_bits), dtype=np.uint8)
    for b, idx, cols in _bit_columns(plan):
        scale = gains[idx] * np.sqrt(plan.power_scales[idx])
        with np.errstate(divide="ignore", invalid="ignore"):
            equalized = np.nan_to_num(bins[:, idx] / scale)
        bits = qam_demap(equalized.ravel(), Constellation.for_bits(b))
        out[:, cols] = bits.reshape(cfg.n_data_frames, idx.size, b)
    return out.ravel()


def _check_delay(preset: LinkPreset, cfg: OfdmConfig) -> None:
    if preset.delay_samples >= cfg.frame_length * cfg.n_sps:
        raise ValidationError("link delay must be shorter than one frame")


def probe_channel(
    preset: LinkPreset, cfg: OfdmConfig, seed: int, model: VcselModel = None
) -> ChannelEstimate:
    """Sends the pilot frames alone and estimates the channel from them."""
    model = model or VcselModel()
    _check_delay(preset, cfg)
    pilots = np.tile(pilot_symbols(cfg), (cfg.n_pilot_frames, 1))
    tx = transmit(pilots, cfg)
    rx = apply_link(tx, preset, model, seed)
    reference = tx.samples[: cfg.frame_length * cfg.n_sps]
    bins, _ = receive(rx, reference, cfg.n_pilot_frames, cfg)
    estimate = estimate_channel(pilots, bins, cfg.subcarrier_frequencies())
    estimate.clipping = bool(rx.metadata["clipping"])
    return estimate


def run_stream(
    tx_bits,
    plan: LoadingPlan,
    preset: LinkPreset,
    cfg: OfdmConfig,
    seed: int,
    model: VcselModel = None,
    keep_waveforms: bool = False,
) -> StreamResult:
    """150 pilot + 300 data frames through the link, estimated and demapped.

    Deterministic for a fixed seed; the channel estimate comes from this
    stream's own pilots.
    """
    model = model or VcselModel()
    tx_bits = np.asarray(tx_bits).ravel()
    if plan.n_sc != cfg.n_sc:
        raise ValidationError(f"plan covers {plan.n_sc} subcarriers, config has {cfg.n_sc}")
    expected = cfg.n_data_frames * plan.total_bits
    if tx_bits.size != expected:
        raise ValidationError(f"expected {expected} payload bits, got {tx_bits.size}")
    _check_delay(preset, cfg)

    pilots = np.tile(pilot_symbols(cfg), (cfg.n_pilot_frames, 1))
    payloads = np.vstack([pilots, map_payload(tx_bits, plan, cfg)])
    tx = transmit(payloads, cfg)
    rx = apply_link(tx, preset, model, seed)

    n_frames = cfg.n_pilot_frames + cfg.n_data_frames
    reference = tx.samples[: cfg.frame_length * cfg.n_sps]
    bins, offset = receive(rx, reference, n_frames, cfg)
    estimate = estimate_channel(pilots, bins[: cfg.n_pilot_frames], cfg.subcarrier_frequencies())
    estimate.clipping = bool(rx.metadata["clipping"])

    rx_bits = demap_payload(bins[cfg.n_pilot_frames :], estimate.gains, plan, cfg)
    errors = count_errors(tx_bits, rx_bits)
    ber = errors / tx_bits.size if tx_bits.size else 0.0
    logger.debug("Stream seed=%d: %d/%d bit errors, offset %d", seed, errors, tx_bits.size, offset)

    metadata = {}
    if keep_waveforms:
        metadata = {"tx": tx.samples, "rx": rx.samples, "sample_rate": tx.sample_rate}
    return StreamResult(
        ber=ber,
        rate=data_rate(plan.total_bits, cfg),
        snr_profile=estimate.snr,
        estimate=estimate,
        bit_errors=errors,
        bit_count=int(tx_bits.size),
        clipping=estimate.clipping,
        offset=offset,
        metadata=metadata,
    )
