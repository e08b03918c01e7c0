"""Conversions between result objects and their CSV table layouts.

Every *_table writer has a *_from_table reader that restores what it wrote.
"""

from typing import Any, Dict, List

import numpy as np
import pandas as pd

from errors import ValidationError
from models.loading import B_MAX_DEFAULT, LoadingPlan
from models.profile import SnrProfile, to_db
from models.pwl import PwlModel
from models.results import SweepRow

PROFILE_COLUMNS = ["subcarrier_index", "frequency_hz", "snr_linear", "snr_db"]
PLAN_COLUMNS = ["subcarrier_index", "frequency_hz", "snr_linear", "snr_db", "bits", "power_scale"]
SWEEP_COLUMNS = ["target_ber", "gamma", "total_bits", "rate_bps", "measured_ber", "seed_count"]
BOUND_COLUMNS = ["target_ber", "gamma", "bound_cutoff_bps", "bound_ext_bps", "bound_discrete_bps"]
PWL_COLUMNS = [
    "f1_hz",
    "f2_hz",
    "f_cutoff_hz",
    "f_ext_hz",
    "intercept_db",
    "slope1_db_per_hz",
    "slope2_db_per_hz",
    "residual_db2",
    "f2_clamped",
    "extrapolatable",
]


def _require(frame: pd.DataFrame, columns: List[str], name: str) -> None:
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise ValidationError(f"{name} table lacks column(s): {', '.join(missing)}")


def profile_table(profile: SnrProfile) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "subcarrier_index": np.arange(1, len(profile) + 1),
            "frequency_hz": profile.frequencies,
            "snr_linear": profile.snr_linear,
            "snr_db": profile.snr_db,
        }
    )


def profile_from_table(frame: pd.DataFrame) -> SnrProfile:
    """Accepts snr_linear, or snr_db when the linear column is absent."""
    if "snr_linear" in frame.columns:
        _require(frame, ["frequency_hz", "snr_linear"], "SNR profile")
        return SnrProfile(frame["frequency_hz"].to_numpy(float), frame["snr_linear"].to_numpy(float))
    _require(frame, ["frequency_hz", "snr_db"], "SNR profile")
    return SnrProfile.from_db(frame["frequency_hz"].to_numpy(float), frame["snr_db"].to_numpy(float))


def plan_table(plan: LoadingPlan) -> pd.DataFrame:
    freqs = plan.frequencies if plan.frequencies is not None else np.full(plan.n_sc, np.nan)
    snr = plan.snr_linear if plan.snr_linear is not None else np.zeros(plan.n_sc)
    return pd.DataFrame(
        {
            "subcarrier_index": np.arange(1, plan.n_sc + 1),
            "frequency_hz": freqs,
            "snr_linear": snr,
            "snr_db": to_db(snr),
            "bits": plan.bits,
            "power_scale": plan.power_scales,
        }
    )


def plan_from_table(frame: pd.DataFrame) -> LoadingPlan:
    _require(frame, PLAN_COLUMNS, "loading plan")
    return LoadingPlan(
        bits=frame["bits"].to_numpy(int),
        power_scales=frame["power_scale"].to_numpy(float),
        frequencies=frame["frequency_hz"].to_numpy(float),
        snr_linear=frame["snr_linear"].to_numpy(float),
        b_max=max(int(frame["bits"].max()), B_MAX_DEFAULT),
    )


def sweep_table(rows: List[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([r.to_json() for r in rows], columns=SWEEP_COLUMNS)


def sweep_from_table(frame: pd.DataFrame) -> List[SweepRow]:
    _require(frame, SWEEP_COLUMNS, "sweep")
    return [SweepRow.from_json(r) for r in frame.to_dict("records")]


def bounds_table(rows: List[Dict[str, Any]]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=BOUND_COLUMNS)


def bounds_from_table(frame: pd.DataFrame) -> List[Dict[str, float]]:
    _require(frame, BOUND_COLUMNS, "rate bounds")
    return [{k: float(row[k]) for k in BOUND_COLUMNS} for row in frame.to_dict("records")]


def pwl_table(model: PwlModel) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "f1_hz": model.f1,
                "f2_hz": model.f2,
                "f_cutoff_hz": model.f_cutoff,
                "f_ext_hz": model.f_ext if model.f_ext is not None else np.nan,
                "intercept_db": model.intercept_db,
                "slope1_db_per_hz": model.slope1_db,
                "slope2_db_per_hz": model.slope2_db,
                "residual_db2": model.residual,
                "f2_clamped": model.f2_clamped,
                "extrapolatable": model.extrapolatable,
            }
        ],
        columns=PWL_COLUMNS,
    )


def pwl_from_table(frame: pd.DataFrame) -> PwlModel:
    """The fitted lines and breakpoints; the smoothed profile is not stored."""
    _require(frame, PWL_COLUMNS, "PWL model")
    row = frame.iloc[0]
    f_ext = row["f_ext_hz"]
    return PwlModel(
        f1=float(row["f1_hz"]),
        f2=float(row["f2_hz"]),
        f_cutoff=float(row["f_cutoff_hz"]),
        intercept_db=float(row["intercept_db"]),
        slope1_db=float(row["slope1_db_per_hz"]),
        slope2_db=float(row["slope2_db_per_hz"]),
        f_ext=None if pd.isna(f_ext) else float(f_ext),
        f2_clamped=bool(row["f2_clamped"]),
        residual=float(row["residual_db2"]),
    )
