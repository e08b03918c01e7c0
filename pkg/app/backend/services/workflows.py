"""Batch workflows behind the CLI subcommands; each writes its tables through TableStorage."""

import dataclasses
import logging
import math
from typing import Any, Dict, Optional, Sequence

import numpy as np

from analysis.estimation import estimate_channel
from analysis.regression import anchored_reference, extrapolate, pwl_fit
from analysis.sweep import ber_rate_sweep, drive_sweep, payload_bits
from channel.calibration import calibrate_noise
from channel.presets import reference_snr_db
from config.experiment import ExperimentConfig, dump_config, dump_toml
from db.storage import TableStorage
from db.tables import (
    bounds_table,
    plan_table,
    profile_from_table,
    profile_table,
    pwl_table,
    sweep_table,
)
from errors import ExtrapolationError, ValidationError
from fiber.dispersion import dispersion_report
from fiber.reference import sigma_lambda_at
from fiber.spectrum import load_spectrum, rms_spectral_width
from loading.gap import snr_gap
from loading.hughes_hartogs import hughes_hartogs
from loading.rates import rate_bound_discrete, rate_bound_integral
from models.fiber import FiberParams
from models.link import LinkPreset
from models.ofdm import OfdmConfig
from models.profile import SnrProfile
from models.waveform import ComplexWaveform
from modem.framing import pilot_symbols
from modem.shaping import shaping_taps
from modem.stream import probe_channel, receive, run_stream

logger = logging.getLogger(__name__)


def _storage(cfg: ExperimentConfig, storage: Optional[TableStorage]) -> TableStorage:
    return storage or TableStorage(cfg.output_dir)


def resolve_preset(cfg: ExperimentConfig) -> LinkPreset:
    """The configured preset, noise-calibrated to its reference profile when one applies."""
    name = cfg.preset_settings.reference_name
    if name is None:
        return cfg.preset
    freqs = cfg.ofdm.subcarrier_frequencies()
    target = SnrProfile.from_db(freqs, reference_snr_db(name, freqs))
    logger.info("Calibrating %s noise to the %s reference profile", cfg.preset.name, name)
    return calibrate_noise(cfg.preset, target, cfg.ofdm, cfg.vcsel, seed=cfg.seeds[0])


def cmd_simulate(
    cfg: ExperimentConfig,
    storage: TableStorage = None,
    dump_waveforms: bool = False,
    drive_scales: Sequence[float] = (),
) -> Dict[str, Any]:
    """Estimate, load and stream at every target BER; writes the profile, plan and sweep tables."""
    storage = _storage(cfg, storage)
    seed = cfg.seeds[0]
    preset = resolve_preset(cfg)

    estimate = probe_channel(preset, cfg.ofdm, seed, cfg.vcsel)
    gap = snr_gap(cfg.loading.plan_target_ber)
    plan = hughes_hartogs(estimate.snr, gap, cfg.loading.power_budget, cfg.loading.b_max, cfg.ofdm)
    rows = ber_rate_sweep(
        preset,
        cfg.ofdm,
        cfg.loading.target_ber,
        cfg.seeds,
        cfg.vcsel,
        cfg.loading.power_budget,
        cfg.loading.b_max,
    )

    files = [
        storage.save("snr_profile.csv", profile_table(estimate.snr)),
        storage.save("loading_plan.csv", plan_table(plan)),
        storage.save("ber_rate.csv", sweep_table(rows)),
        storage.save_text("config.toml", dump_config(cfg)),
    ]
    if dump_waveforms:
        tx_bits = payload_bits(seed, cfg.ofdm.n_data_frames * plan.total_bits)
        result = run_stream(tx_bits, plan, preset, cfg.ofdm, seed, cfg.vcsel, keep_waveforms=True)
        files.append(storage.save_array("tx.npy", result.metadata["tx"]))
        files.append(storage.save_array("rx.npy", result.metadata["rx"]))
    if drive_scales:
        points = drive_sweep(
            preset, cfg.ofdm, drive_scales, cfg.loading.plan_target_ber, seed, cfg.vcsel, cfg.loading.power_budget
        )
        files.append(storage.save("drive_sweep.csv", [p.to_json() for p in points]))

    return {
        "files": files,
        "noise_std": preset.noise_std,
        "plan_total_bits": plan.total_bits,
        "plan_rate_bps": plan.rate,
        "rows": [r.to_json() for r in rows],
    }


def _bounds(profile: SnrProfile, model, targets, ofdm: OfdmConfig):
    rows = []
    for target in sorted(targets):
        gap = snr_gap(target)
        discrete = rate_bound_discrete(profile, gap, ofdm) if len(profile) == ofdm.n_sc else math.nan
        ext = rate_bound_integral(model, model.f_ext, gap) if model.f_ext is not None else math.nan
        rows.append(
            {
                "target_ber": target,
                "gamma": gap.gamma,
                "bound_cutoff_bps": rate_bound_integral(model, model.f_cutoff, gap),
                "bound_ext_bps": ext,
                "bound_discrete_bps": discrete,
            }
        )
    return bounds_table(rows)


def cmd_extrapolate(
    cfg: ExperimentConfig,
    profile_path: str = None,
    anchored: str = None,
    storage: TableStorage = None,
) -> Dict[str, Any]:
    """PWL fit of a measured profile, its 0 dB extrapolation and the rate bounds on both sides.

    A non-extrapolatable fit still writes the model and the cutoff bounds
    before the ExtrapolationError propagates.
    """
    storage = _storage(cfg, storage)
    if anchored:
        profile = anchored_reference(anchored, cfg.ofdm.subcarrier_frequencies(), cfg.analysis.f_cutoff)
    elif profile_path:
        profile = profile_from_table(storage.load(profile_path))
    else:
        raise ValidationError("either a profile file or an anchored preset name is required")

    model = pwl_fit(profile, cfg.analysis.f_cutoff, cfg.analysis.window)
    failure = None
    try:
        model = extrapolate(model)
    except ExtrapolationError as e:
        logger.warning("Extrapolation failed: %s", e)
        failure = e

    bounds = _bounds(profile, model, cfg.loading.target_ber, cfg.ofdm)
    files = [
        storage.save("pwl_model.csv", pwl_table(model)),
        storage.save_text("pwl_model.toml", dump_toml({"pwl": model.to_json()})),
        storage.save("rate_bounds.csv", bounds),
        storage.save_text("config.toml", dump_config(cfg)),
    ]
    if anchored:
        files.append(storage.save("snr_profile.csv", profile_table(profile)))
    if failure is not None:
        raise failure
    return {
        "files": files,
        "f1_hz": model.f1,
        "f2_hz": model.f2,
        "f_ext_hz": model.f_ext,
        "bounds": bounds.to_dict("records"),
    }


def cmd_fiber(
    params: FiberParams,
    bandwidth: float = None,
    spectrum_path: str = None,
    storage: TableStorage = None,
    bias_ma: float = None,
) -> Dict[str, Any]:
    """Dispersion report, with sigma_lambda taken from a measured spectrum or bias point when given."""
    mean_wavelength = None
    if bias_ma is not None:
        params = dataclasses.replace(params, sigma_lambda=sigma_lambda_at(bias_ma))
    if spectrum_path:
        mean_wavelength, sigma = rms_spectral_width(load_spectrum(spectrum_path))
        params = dataclasses.replace(params, sigma_lambda=sigma)
    report = dispersion_report(params, bandwidth)
    files = []
    if storage is not None:
        files.append(storage.save("fiber_report.csv", [report.to_row()]))
    return {"files": files, "report": report.to_row(), "text": report.to_text(), "mean_wavelength_nm": mean_wavelength}


def cmd_loadplan(cfg: ExperimentConfig, profile_path: str, storage: TableStorage = None) -> Dict[str, Any]:
    """Hughes-Hartogs plan for a stored profile at the configured plan target."""
    storage = _storage(cfg, storage)
    profile = profile_from_table(storage.load(profile_path))
    gap = snr_gap(cfg.loading.plan_target_ber)
    plan = hughes_hartogs(profile, gap, cfg.loading.power_budget, cfg.loading.b_max, cfg.ofdm)
    bound = rate_bound_discrete(profile, gap, cfg.ofdm) if len(profile) == cfg.ofdm.n_sc else None
    files = [storage.save("loading_plan.csv", plan_table(plan))]
    return {
        "files": files,
        "total_bits": plan.total_bits,
        "rate_bps": plan.rate,
        "bound_discrete_bps": bound,
        "total_power": plan.total_power,
    }


def cmd_estimate(cfg: ExperimentConfig, tx_path: str, rx_path: str, storage: TableStorage = None) -> Dict[str, Any]:
    """Channel estimate from saved tx/rx waveforms (the pilot section of the stream)."""
    storage = _storage(cfg, storage)
    ofdm = cfg.ofdm
    tx = storage.load_array(tx_path)
    rx = storage.load_array(rx_path)
    frame = ofdm.frame_length * ofdm.n_sps
    n_frames = (len(tx) - (len(shaping_taps(ofdm)) - 1)) // frame
    if n_frames < ofdm.n_pilot_frames:
        raise ValidationError(f"waveform holds {n_frames} frames, fewer than the {ofdm.n_pilot_frames} pilots")
    bins, offset = receive(ComplexWaveform(rx, ofdm.sample_rate), tx[:frame], n_frames, ofdm)
    pilots = np.tile(pilot_symbols(ofdm), (ofdm.n_pilot_frames, 1))
    estimate = estimate_channel(pilots, bins[: ofdm.n_pilot_frames], ofdm.subcarrier_frequencies())
    files = [storage.save("snr_profile.csv", profile_table(estimate.snr))]
    return {
        "files": files,
        "offset": offset,
        "mean_snr_db": float(np.mean(estimate.snr.snr_db)),
        "n_frames": n_frames,
    }
