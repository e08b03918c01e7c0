"""BER-versus-rate and drive-amplitude sweeps over the emulated link."""

import logging
from typing import List, Sequence

import numpy as np

from errors import OwcLabError, ValidationError
from loading.gap import snr_gap
from loading.hughes_hartogs import hughes_hartogs
from loading.rates import data_rate
from models.link import LinkPreset, VcselModel
from models.loading import B_MAX_DEFAULT
from models.ofdm import OfdmConfig
from models.profile import to_db
from models.results import DrivePoint, SweepRow
from modem.stream import probe_channel, run_stream

logger = logging.getLogger(__name__)


def payload_bits(seed: int, n_bits: int) -> np.ndarray:
    """Random payload drawn from a stream separate from the link noise."""
    return np.random.default_rng([seed, 1]).integers(0, 2, size=n_bits, dtype=np.uint8)


def ber_rate_sweep(
    preset: LinkPreset,
    cfg: OfdmConfig,
    ber_targets: Sequence[float],
    seeds: Sequence[int],
    model: VcselModel = None,
    power_budget: float = None,
    b_max: int = B_MAX_DEFAULT,
) -> List[SweepRow]:
    """Loads the channel for every target BER and measures the resulting BER.

    One pilot probe per seed estimates the channel; every target reuses it,
    so the loaded rate cannot drop as the target BER grows. Rows are sorted
    by target and average over the seeds.
    """
    if not ber_targets or not seeds:
        raise ValidationError("a sweep needs at least one target BER and one seed")
    model = model or VcselModel()
    targets = sorted(float(t) for t in ber_targets)
    estimates = {seed: probe_channel(preset, cfg, seed, model) for seed in seeds}

    rows = []
    for target in targets:
        try:
            gap = snr_gap(target)
            bits, bers = [], []
            for seed in seeds:
                plan = hughes_hartogs(estimates[seed].snr, gap, power_budget, b_max, cfg)
                tx_bits = payload_bits(seed, cfg.n_data_frames * plan.total_bits)
                result = run_stream(tx_bits, plan, preset, cfg, seed, model)
                bits.append(plan.total_bits)
                bers.append(result.ber)
                logger.debug("target=%g seed=%d bits=%d ber=%.3e", target, seed, plan.total_bits, result.ber)
        except OwcLabError as e:
            e.add_note(f"while sweeping target BER {target:g}")
            raise
        total_bits = int(round(float(np.mean(bits))))
        row = SweepRow(
            target_ber=target,
            gamma=gap.gamma,
            total_bits=total_bits,
            rate_bps=data_rate(total_bits, cfg),
            measured_ber=float(np.mean(bers)),
            seed_count=len(seeds),
        )
        logger.info(
            "Target BER %g: %d bits, %.2f Gb/s, measured BER %.3e",
            target,
            row.total_bits,
            row.rate_bps / 1e9,
            row.measured_ber,
        )
        rows.append(row)
    return rows


def drive_sweep(
    preset: LinkPreset,
    cfg: OfdmConfig,
    kappas: Sequence[float],
    target_ber: float,
    seed: int,
    model: VcselModel = None,
    power_budget: float = None,
    measure: bool = False,
) -> List[DrivePoint]:
    """Loaded rate as a function of the drive scale at fixed receiver noise."""
    model = model or VcselModel()
    gap = snr_gap(target_ber)
    points = []
    for kappa in kappas:
        trial = preset.with_changes(drive_scale=float(kappa))
        estimate = probe_channel(trial, cfg, seed, model)
        plan = hughes_hartogs(estimate.snr, gap, power_budget, cfg=cfg)
        measured = None
        if measure:
            tx_bits = payload_bits(seed, cfg.n_data_frames * plan.total_bits)
            measured = run_stream(tx_bits, plan, trial, cfg, seed, model).ber
        loaded = estimate.snr.snr_linear > 0
        points.append(
            DrivePoint(
                drive_scale=float(kappa),
                total_bits=plan.total_bits,
                rate_bps=plan.rate,
                mean_snr_db=float(np.mean(to_db(estimate.snr.snr_linear[loaded]))) if loaded.any() else float("-inf"),
                clipping=estimate.clipping,
                measured_ber=measured,
            )
        )
        logger.info("kappa=%.3g mA: %.2f Gb/s%s", kappa, plan.rate / 1e9, " (clipping)" if estimate.clipping else "")
    return points
