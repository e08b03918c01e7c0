"""Tests for the SNR gap, Hughes-Hartogs loading and the rate bounds."""

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from channel.presets import reference_snr_db
from dsp.constellation import Constellation, qam_demap, qam_map
from errors import ValidationError
from loading.gap import max_bits, snr_gap
from loading.hughes_hartogs import hughes_hartogs
from loading.rates import data_rate, rate_bound_discrete, rate_bound_integral
from models.loading import GapParams
from models.ofdm import OfdmConfig
from models.profile import SnrProfile
from models.pwl import APPROXIMATED, EXTRAPOLATED, PwlModel


class TestGap:
    @pytest.mark.parametrize(
        "ber, gamma",
        [(3.8e-3, 2.6422), (5.6e-2, 0.8487), (3.3e-2, 1.2012), (3.1e-2, 1.2429)],
    )
    def test_reference_values(self, ber, gamma):
        assert snr_gap(ber).gamma == pytest.approx(gamma, abs=1e-4)

    @pytest.mark.parametrize("ber", [0.0, 0.2, 0.5, -1e-3])
    def test_domain(self, ber):
        with pytest.raises(ValidationError):
            snr_gap(ber)

    def test_gamma_falls_as_target_rises(self):
        gammas = [snr_gap(b).gamma for b in (1e-4, 1e-3, 1e-2, 1e-1)]
        assert gammas == sorted(gammas, reverse=True)

    def test_max_bits(self):
        gap = snr_gap(3.3e-2)
        assert max_bits(0.0, gap) == 0
        # exactly 2^3 = 1 + SNR/gamma
        assert max_bits(7 * gap.gamma, gap) == 3
        assert max_bits(1e9, gap, b_max=10) == 10
        np.testing.assert_array_equal(max_bits([0.0, 3 * gap.gamma], gap), [0, 2])

    @pytest.mark.parametrize("target", [3.8e-3, 3.3e-2, 5.6e-2])
    def test_gap_predicts_uncoded_ber(self, target):
        """4-QAM at SNR = 3 gamma lands near the target BER."""
        gap = snr_gap(target)
        c = Constellation.for_bits(2)
        rng = np.random.default_rng(11)
        tx = rng.integers(0, 2, size=400_000)
        snr = 3 * gap.gamma
        noise = (rng.normal(size=tx.size // 2) + 1j * rng.normal(size=tx.size // 2)) * math.sqrt(0.5 / snr)
        ber = np.mean(qam_demap(qam_map(tx, c) + noise, c) != tx)
        assert 0.4 * target < ber < 1.3 * target


class TestHughesHartogs:
    def test_small_example(self):
        profile = SnrProfile(np.arange(1, 5, dtype=float), [4.0, 2.0, 1.0, 0.5])
        plan = hughes_hartogs(profile, GapParams(target_ber=1e-2, gamma=1.0), power_budget=3.0)
        np.testing.assert_array_equal(plan.bits, [3, 1, 0, 0])
        assert plan.total_power == pytest.approx(2.25)
        np.testing.assert_allclose(plan.power_scales, [1.75, 0.5, 0.0, 0.0])

    def test_loaded_power_meets_gap(self):
        rng = np.random.default_rng(4)
        profile = SnrProfile(np.arange(1, 101, dtype=float), rng.uniform(0.1, 1000, size=100))
        gap = snr_gap(3.3e-2)
        plan = hughes_hartogs(profile, gap)
        loaded = plan.bits > 0
        np.testing.assert_allclose(
            2.0 ** plan.bits[loaded],
            1 + plan.power_scales[loaded] * profile.snr_linear[loaded] / gap.gamma,
        )

    @settings(max_examples=50, deadline=None)
    @given(
        snr=st.lists(st.floats(0.0, 1e5), min_size=1, max_size=60),
        budget=st.floats(0.1, 100.0),
        b_max=st.integers(1, 10),
    )
    def test_invariants(self, snr, budget, b_max):
        profile = SnrProfile(np.arange(1, len(snr) + 1, dtype=float), snr)
        plan = hughes_hartogs(profile, snr_gap(1e-2), power_budget=budget, b_max=b_max)
        assert plan.total_power <= budget * (1 + 1e-6)
        assert np.all(plan.bits <= b_max)
        assert np.all(plan.bits[profile.snr_linear == 0] == 0)
        assert np.all(plan.power_scales[plan.bits == 0] == 0)

    def test_rate_rises_with_target_ber(self):
        f = OfdmConfig().subcarrier_frequencies()
        profile = SnrProfile.from_db(f, reference_snr_db("Config-I", f))
        bits = [hughes_hartogs(profile, snr_gap(t)).total_bits for t in (3.8e-3, 1e-2, 3.3e-2, 5.6e-2)]
        assert bits == sorted(bits)

    def test_zero_snr_profile_carries_nothing(self):
        profile = SnrProfile(np.arange(1, 6, dtype=float), np.zeros(5))
        assert hughes_hartogs(profile, snr_gap(1e-2)).total_bits == 0

    def test_rejects_bad_budget(self):
        profile = SnrProfile([1.0, 2.0], [1.0, 1.0])
        with pytest.raises(ValidationError):
            hughes_hartogs(profile, snr_gap(1e-2), power_budget=0.0)


class TestReferenceProfiles:
    """Loading of the shaped reference profiles at the measured operating points."""

    def test_config_one(self):
        cfg = OfdmConfig()
        f = cfg.subcarrier_frequencies()
        profile = SnrProfile.from_db(f, reference_snr_db("Config-I", f))
        plan = hughes_hartogs(profile, snr_gap(3.3e-2), cfg=cfg)
        assert plan.total_bits == 2300
        assert plan.rate == pytest.approx(70.84e9, rel=1e-3)
        assert np.all(plan.bits[f >= 11e9] == 0)
        assert set(plan.bits[f < 6e9]) <= {7, 8}
        assert set(plan.bits[(f >= 6e9) & (f < 10.8e9)]) <= {4, 5, 6}
        assert set(plan.bits[(f >= 10.8e9) & (f < 11e9)]) <= {1, 2, 3}

    def test_config_two(self):
        cfg = OfdmConfig()
        f = cfg.subcarrier_frequencies()
        profile = SnrProfile.from_db(f, reference_snr_db("Config-II", f))
        plan = hughes_hartogs(profile, snr_gap(3.1e-2), cfg=cfg)
        assert plan.total_bits == 2364
        assert plan.rate == pytest.approx(72.81e9, rel=1e-3)


class TestRates:
    def test_data_rate(self):
        cfg = OfdmConfig()
        assert data_rate(1039, cfg) == pytest.approx(32e9)
        with pytest.raises(ValidationError):
            data_rate(-1, cfg)

    def test_discrete_bound_above_loaded_rate(self):
        cfg = OfdmConfig()
        profile = SnrProfile.from_db(cfg.subcarrier_frequencies(), np.full(cfg.n_sc, 20.0))
        gap = snr_gap(3.3e-2)
        assert rate_bound_discrete(profile, gap, cfg) >= hughes_hartogs(profile, gap, cfg=cfg).rate

    def test_loaded_rate_can_beat_bound_on_shaped_profile(self):
        # the unit-power bound leaves the budget of the two dead subcarriers unused
        cfg = OfdmConfig(n_fft=8)
        profile = SnrProfile(cfg.subcarrier_frequencies(), [400.0, 0.01, 0.01])
        gap = GapParams(target_ber=1e-2, gamma=1.0)
        plan = hughes_hartogs(profile, gap, cfg=cfg)
        assert plan.bits.tolist() == [10, 0, 0]
        assert plan.total_power <= 3.0
        assert plan.rate > rate_bound_discrete(profile, gap, cfg)
        assert rate_bound_discrete(profile, gap, cfg) == pytest.approx(data_rate(1, cfg) * 8.676, rel=1e-3)

    def test_discrete_bound_checks_length(self):
        with pytest.raises(ValidationError):
            rate_bound_discrete(SnrProfile([1.0], [1.0]), snr_gap(1e-2), OfdmConfig())

    def test_integral_of_flat_profile(self):
        gap = snr_gap(3.3e-2)
        profile = SnrProfile([0.0, 20e9], [100.0, 100.0])
        expected = 10e9 * math.log2(1 + 100 / gap.gamma)
        assert rate_bound_integral(profile, 10e9, gap) == pytest.approx(expected, rel=1e-6)
        assert rate_bound_integral(profile, 0.0, gap) == 0.0

    def test_integral_grows_with_target_ber(self):
        f = np.linspace(0, 11e9, 200)
        profile = SnrProfile.from_db(f, 25 - 2 * f / 1e9)
        low = rate_bound_integral(profile, 11e9, snr_gap(3.8e-3))
        high = rate_bound_integral(profile, 11e9, snr_gap(5.6e-2))
        assert high > low > 0


def _exhaustive_max_bits(g, gamma, budget, b_max):
    grid = np.array(list(itertools.product(range(b_max + 1), repeat=len(g))))
    power = ((2.0**grid - 1) * gamma / np.asarray(g)).sum(axis=1)
    return int(grid[power <= budget * (1 + 1e-9)].sum(axis=1).max())


class TestGreedyOptimality:
    @settings(max_examples=200, deadline=None)
    @given(
        g=st.lists(st.floats(0.05, 200.0), min_size=1, max_size=5),
        budget=st.floats(0.05, 50.0),
        b_max=st.integers(1, 4),
    )
    def test_matches_exhaustive_search(self, g, budget, b_max):
        gap = GapParams(target_ber=1e-2, gamma=1.5)
        profile = SnrProfile(np.arange(1, len(g) + 1, dtype=float), g)
        plan = hughes_hartogs(profile, gap, power_budget=budget, b_max=b_max)
        assert plan.total_bits == _exhaustive_max_bits(g, gap.gamma, budget, b_max)

    @pytest.mark.slow
    @settings(max_examples=60, deadline=None)
    @given(
        g=st.lists(st.floats(0.05, 200.0), min_size=6, max_size=8),
        budget=st.floats(0.05, 50.0),
        b_max=st.integers(1, 3),
    )
    def test_matches_exhaustive_search_up_to_eight_subcarriers(self, g, budget, b_max):
        gap = GapParams(target_ber=1e-2, gamma=1.5)
        profile = SnrProfile(np.arange(1, len(g) + 1, dtype=float), g)
        plan = hughes_hartogs(profile, gap, power_budget=budget, b_max=b_max)
        assert plan.total_bits == _exhaustive_max_bits(g, gap.gamma, budget, b_max)

    def test_flat_profile_budget_for_eight_bits(self):
        gap = snr_gap(3.3e-2)
        g, n = 50.0, 16
        profile = SnrProfile(np.arange(1, n + 1, dtype=float), np.full(n, g))
        plan = hughes_hartogs(profile, gap, power_budget=n * 255 * gap.gamma / g)
        np.testing.assert_array_equal(plan.bits, 8)

    def test_larger_snr_never_loads_fewer_bits(self):
        rng = np.random.default_rng(8)
        f = np.arange(1, 41, dtype=float)
        low = rng.uniform(0, 500, size=40)
        high = low * rng.uniform(1.0, 3.0, size=40)
        gap = snr_gap(1e-2)
        assert (
            hughes_hartogs(SnrProfile(f, high), gap).total_bits
            >= hughes_hartogs(SnrProfile(f, low), gap).total_bits
        )


class TestGapProperties:
    @settings(max_examples=100, deadline=None)
    @given(snr=st.floats(0.0, 1e6), ber=st.floats(1e-6, 0.19))
    def test_scale_covariance(self, snr, ber):
        gap = snr_gap(ber)
        doubled = GapParams(target_ber=ber, gamma=2 * gap.gamma)
        assert max_bits(2 * snr, doubled) == max_bits(snr, gap)

    def test_documented_points(self):
        gap = snr_gap(3.3e-2)
        assert max_bits(100.0, gap) == 6
        assert max_bits(255 * gap.gamma, gap) == 8
        assert snr_gap(math.exp(-1) / 5).gamma == pytest.approx(2 / 3)


class TestRateFormulas:
    def test_documented_rates(self):
        cfg = OfdmConfig()
        assert data_rate(0, cfg) == 0.0
        assert data_rate(4088, cfg) == pytest.approx(125.91e9, abs=0.01e9)
        assert data_rate(2338, cfg) == pytest.approx(72.01e9, abs=0.01e9)

    def test_discrete_bound_closed_form(self):
        cfg = OfdmConfig()
        gap = snr_gap(1e-2)
        flat = SnrProfile(cfg.subcarrier_frequencies(), np.full(cfg.n_sc, 255 * gap.gamma))
        assert rate_bound_discrete(flat, gap, cfg) == pytest.approx(125.91e9, abs=0.01e9)
        zero = SnrProfile(cfg.subcarrier_frequencies(), np.zeros(cfg.n_sc))
        assert rate_bound_discrete(zero, gap, cfg) == 0.0

    def test_integral_matches_fine_riemann_sum(self):
        f1, level, s1, s2 = 3e9, 24.0, -0.4, -2.2
        model = PwlModel(
            f1=f1, f2=10.5e9, f_cutoff=11e9, intercept_db=level,
            slope1_db=s1 / 1e9, slope2_db=s2 / 1e9,
        )
        gap = snr_gap(3.3e-2)
        step = 10e3
        f = np.arange(0.0, 11e9, step) + step / 2
        oracle = float(np.sum(np.log2(1 + model.snr_at(f) / gap.gamma)) * step)
        assert rate_bound_integral(model, 11e9, gap) == pytest.approx(oracle, rel=1e-3)

    def test_integral_matches_riemann_sum_on_random_models(self):
        rng = np.random.default_rng(50)
        gap = snr_gap(3.3e-2)
        for _ in range(50):
            model = PwlModel(
                f1=rng.uniform(1e9, 5e9),
                f2=rng.uniform(7e9, 11e9),
                f_cutoff=11e9,
                intercept_db=rng.uniform(15.0, 30.0),
                slope1_db=rng.uniform(-1.0, 0.0) / 1e9,
                slope2_db=rng.uniform(-4.0, -1.0) / 1e9,
            )
            f_ext = model.zero_crossing()
            if f_ext > model.f_cutoff:
                model = model.with_extrapolation(f_ext)
                f_max, mode = f_ext, EXTRAPOLATED
            else:
                f_max, mode = model.f_cutoff, APPROXIMATED
            n = 200_000
            f = (np.arange(n) + 0.5) * f_max / n
            oracle = float(np.sum(np.log2(1 + model.snr_at(f, mode) / gap.gamma)) * f_max / n)
            assert rate_bound_integral(model, f_max, gap) == pytest.approx(oracle, rel=1e-4)

    def test_zero_profile_integral(self):
        profile = SnrProfile([0.0, 1e9], [0.0, 0.0])
        assert rate_bound_integral(profile, 1e9, snr_gap(1e-2)) == 0.0
