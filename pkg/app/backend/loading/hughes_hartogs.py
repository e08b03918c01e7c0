"""Greedy bit and power loading (Hughes-Hartogs)."""

import heapq
import logging

import numpy as np

from errors import ValidationError
from loading.rates import data_rate
from models.loading import B_MAX_DEFAULT, GapParams, LoadingPlan
from models.ofdm import OfdmConfig
from models.profile import SnrProfile

logger = logging.getLogger(__name__)

_BUDGET_SLACK = 1e-9


def incremental_power(bits: int, gain: float, gamma: float) -> float:
    """Power needed to go from `bits` to `bits + 1` on a subcarrier with SNR-per-power `gain`."""
    return (2**bits) * gamma / gain


def hughes_hartogs(
    profile: SnrProfile,
    gap: GapParams,
    power_budget: float = None,
    b_max: int = B_MAX_DEFAULT,
    cfg: OfdmConfig = None,
) -> LoadingPlan:
    """Adds one bit at a time where it costs the least power.

    The profile holds the SNR each subcarrier reaches at unit power, so it is
    also the gain g_k. Loading stops when the cheapest increment no longer
    fits the budget or every usable subcarrier is at b_max; ties go to the
    lowest subcarrier index. Each loaded subcarrier ends with
    p_k = (2^b_k - 1) gamma / g_k, meeting 2^b_k = 1 + p_k g_k / gamma.
    """
    g = np.asarray(profile.snr_linear, dtype=float)
    n_sc = g.size
    if n_sc == 0:
        raise ValidationError("cannot load an empty SNR profile")
    if power_budget is None:
        power_budget = float(n_sc)
    if power_budget <= 0:
        raise ValidationError("power budget must be positive")
    if b_max < 1:
        raise ValidationError("b_max must be at least 1")

    limit = power_budget * (1 + _BUDGET_SLACK)
    bits = np.zeros(n_sc, dtype=int)
    heap = [(incremental_power(0, g[k], gap.gamma), k) for k in range(n_sc) if g[k] > 0]
    heapq.heapify(heap)
    used = 0.0
    while heap:
        cost, k = heap[0]
        if used + cost > limit:
            break
        heapq.heappop(heap)
        used += cost
        bits[k] += 1
        if bits[k] < b_max:
            heapq.heappush(heap, (incremental_power(bits[k], g[k], gap.gamma), k))

    power = np.zeros(n_sc)
    loaded = bits > 0
    power[loaded] = (2.0 ** bits[loaded] - 1) * gap.gamma / g[loaded]
    rate = data_rate(int(bits.sum()), cfg) if cfg is not None else 0.0
    logger.debug(
        "HH loading: %d bits on %d/%d subcarriers, power %.4g of %.4g",
        bits.sum(),
        loaded.sum(),
        n_sc,
        used,
        power_budget,
    )
    return LoadingPlan(
        bits=bits,
        power_scales=power,
        rate=rate,
        frequencies=profile.frequencies,
        snr_linear=g,
        target_ber=gap.target_ber,
        gamma=gap.gamma,
        power_budget=power_budget,
        b_max=b_max,
    )
