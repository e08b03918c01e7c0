"""Tests for DCO-OFDM framing, pulse shaping, synchronization and full streams."""

import numpy as np
import pytest
from scipy import signal

from analysis.sweep import payload_bits
from channel.link import noise_std_for_snr
from errors import ValidationError
from loading.gap import snr_gap
from loading.hughes_hartogs import hughes_hartogs
from models.loading import LoadingPlan
from models.ofdm import FrameKind, OfdmConfig, OfdmFrame
from modem.framing import (
    build_frame,
    build_frames,
    demodulate_frame,
    demodulate_frames,
    hermitian_spectrum,
    pilot_frame,
    pilot_symbols,
)
from modem.shaping import matched_filter, pulse_shape
from modem.stream import probe_channel, run_stream
from modem.sync import synchronize


def _random_payload(cfg, rows, seed=0):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(rows, cfg.n_sc)) + 1j * rng.normal(size=(rows, cfg.n_sc))


class TestOfdmConfig:
    def test_derived_quantities(self):
        cfg = OfdmConfig()
        assert cfg.n_sc == 511
        assert cfg.frame_length == 1039
        assert cfg.bandwidth == 16e9
        assert cfg.subcarrier_spacing == pytest.approx(31.25e6)
        assert cfg.subcarrier_frequencies()[-1] == pytest.approx(511 * 31.25e6)

    @pytest.mark.parametrize("changes", [{"n_fft": 100}, {"n_cp": -1}, {"rolloff": 1.2}, {"n_pilot_frames": 1}])
    def test_invalid_values(self, changes):
        with pytest.raises(ValidationError):
            OfdmConfig(**changes)


class TestFraming:
    def test_spectrum_is_hermitian(self, small_cfg):
        X = hermitian_spectrum(_random_payload(small_cfg, 1)[0], small_cfg)
        N = small_cfg.n_fft
        assert X[0] == 0 and X[N // 2] == 0
        np.testing.assert_allclose(X[N - np.arange(1, N // 2)], np.conj(X[1 : N // 2]))

    def test_frame_is_real_with_cyclic_prefix(self, small_cfg):
        frame = OfdmFrame(_random_payload(small_cfg, 1)[0])
        wave = build_frame(frame, small_cfg)
        assert len(wave) == small_cfg.frame_length
        assert wave.metadata["imag_residue"] < 1e-10
        np.testing.assert_allclose(wave.samples[: small_cfg.n_cp], wave.samples[-small_cfg.n_cp :])

    def test_demodulation_inverts_framing(self, small_cfg):
        payload = _random_payload(small_cfg, 5)
        bins = demodulate_frames(build_frames(payload, small_cfg), small_cfg)
        np.testing.assert_allclose(bins, payload, atol=1e-10)

    def test_zero_forcing_divides_gains(self, small_cfg):
        payload = _random_payload(small_cfg, 1)[0]
        block = build_frames(payload, small_cfg)
        gains = np.ones(small_cfg.n_sc, dtype=complex)
        np.testing.assert_allclose(demodulate_frame(block, gains, small_cfg), payload, atol=1e-10)
        gains[3] = 0
        with pytest.raises(ValidationError):
            demodulate_frame(block, gains, small_cfg)

    def test_wrong_payload_length(self, small_cfg):
        with pytest.raises(ValidationError):
            build_frame(OfdmFrame(np.ones(small_cfg.n_sc + 1)), small_cfg)

    def test_pilots_are_fixed_and_unit_energy(self, small_cfg):
        np.testing.assert_array_equal(pilot_symbols(small_cfg), pilot_symbols(small_cfg))
        assert np.allclose(np.abs(pilot_symbols(small_cfg)), 1.0)
        assert pilot_frame(small_cfg).kind is FrameKind.PILOT


class TestShaping:
    def test_identity_at_one_sample_per_symbol(self, small_cfg):
        x = np.arange(10, dtype=float)
        shaped = pulse_shape(x, small_cfg)
        np.testing.assert_array_equal(shaped.samples, x)
        np.testing.assert_array_equal(matched_filter(shaped, small_cfg), x)

    def test_shape_then_match_recovers_symbols(self, shaped_cfg):
        x = np.random.default_rng(1).normal(size=400)
        y = matched_filter(pulse_shape(x, shaped_cfg), shaped_cfg, n_symbols=x.size)
        # truncated RRC leaves a small ISI floor
        assert np.max(np.abs(y - x)[40:-40]) < 0.05

    def test_shaped_noise_stays_in_band(self, shaped_cfg):
        x = np.random.default_rng(9).normal(size=20000)
        shaped = pulse_shape(x, shaped_cfg)
        f, psd = signal.welch(shaped.samples, fs=shaped_cfg.sample_rate, nperseg=2048)
        edge = 0.55 * shaped_cfg.sample_rate / shaped_cfg.n_sps
        assert psd[f < edge].sum() / psd.sum() >= 0.99


class TestSync:
    def test_finds_inserted_delay(self):
        rng = np.random.default_rng(7)
        reference = rng.normal(size=200)
        rx = np.concatenate([rng.normal(scale=0.1, size=37), reference, rng.normal(scale=0.1, size=50)])
        assert synchronize(rx, reference) == 37

    def test_reference_longer_than_signal(self):
        with pytest.raises(ValidationError):
            synchronize(np.zeros(5), np.ones(6))


class TestStream:
    def _plan(self, cfg, bits=2):
        return LoadingPlan.uniform(cfg.n_sc, bits)

    def test_noiseless_link_is_error_free(self, small_cfg, flat_link, vcsel):
        plan = self._plan(small_cfg, 4)
        tx_bits = payload_bits(1, small_cfg.n_data_frames * plan.total_bits)
        result = run_stream(tx_bits, plan, flat_link, small_cfg, seed=1, model=vcsel)
        assert result.bit_errors == 0
        assert result.ber == 0.0
        assert not result.clipping
        assert result.rate == pytest.approx(small_cfg.symbol_rate * plan.total_bits / small_cfg.frame_length)

    def test_noiseless_shaped_link_is_error_free(self, shaped_cfg, flat_link, vcsel):
        plan = self._plan(shaped_cfg, 2)
        tx_bits = payload_bits(2, shaped_cfg.n_data_frames * plan.total_bits)
        assert run_stream(tx_bits, plan, flat_link, shaped_cfg, seed=2, model=vcsel).ber == 0.0

    def test_delay_is_recovered(self, small_cfg, flat_link, vcsel):
        delayed = flat_link.with_changes(delay_samples=23)
        plan = self._plan(small_cfg, 2)
        tx_bits = payload_bits(3, small_cfg.n_data_frames * plan.total_bits)
        result = run_stream(tx_bits, plan, delayed, small_cfg, seed=3, model=vcsel)
        assert result.offset == 23
        assert result.ber == 0.0

    def test_delay_of_a_frame_rejected(self, small_cfg, flat_link, vcsel):
        delayed = flat_link.with_changes(delay_samples=small_cfg.frame_length)
        with pytest.raises(ValidationError):
            probe_channel(delayed, small_cfg, 0, vcsel)

    def test_same_seed_same_result(self, small_cfg, flat_link, vcsel):
        noisy = flat_link.with_changes(noise_std=0.2)
        estimate = probe_channel(noisy, small_cfg, 5, vcsel)
        plan = hughes_hartogs(estimate.snr, snr_gap(1e-2), cfg=small_cfg)
        tx_bits = payload_bits(5, small_cfg.n_data_frames * plan.total_bits)
        a = run_stream(tx_bits, plan, noisy, small_cfg, 5, vcsel)
        b = run_stream(tx_bits, plan, noisy, small_cfg, 5, vcsel)
        assert a.bit_errors == b.bit_errors
        np.testing.assert_array_equal(a.snr_profile.snr_linear, b.snr_profile.snr_linear)

    def test_payload_size_is_checked(self, small_cfg, flat_link, vcsel):
        plan = self._plan(small_cfg, 2)
        with pytest.raises(ValidationError):
            run_stream(np.zeros(10, dtype=np.uint8), plan, flat_link, small_cfg, 0, vcsel)

    def test_plan_must_match_grid(self, small_cfg, flat_link, vcsel):
        plan = LoadingPlan.uniform(small_cfg.n_sc + 2, 2)
        with pytest.raises(ValidationError):
            run_stream(np.zeros(0), plan, flat_link, small_cfg, 0, vcsel)

    def test_keep_waveforms(self, small_cfg, flat_link, vcsel):
        plan = self._plan(small_cfg, 2)
        tx_bits = payload_bits(0, small_cfg.n_data_frames * plan.total_bits)
        result = run_stream(tx_bits, plan, flat_link, small_cfg, 0, vcsel, keep_waveforms=True)
        frames = small_cfg.n_pilot_frames + small_cfg.n_data_frames
        assert result.metadata["tx"].size == frames * small_cfg.frame_length


class TestFrameEnergy:
    def test_parseval(self, small_cfg):
        payload = _random_payload(small_cfg, 1, seed=4)
        body = build_frames(payload, small_cfg)[0, small_cfg.n_cp :]
        expected = 2 * np.sum(np.abs(payload) ** 2) / small_cfg.n_fft**2
        assert np.mean(body**2) == pytest.approx(expected, rel=1e-9)

    def test_cyclic_prefix_copies_body_tail(self, small_cfg):
        frame = build_frames(_random_payload(small_cfg, 1, seed=5), small_cfg)[0]
        np.testing.assert_allclose(frame[: small_cfg.n_cp], frame[-small_cfg.n_cp :])


class TestSyncEquivariance:
    @pytest.mark.parametrize("shift", [0, 1, 64, 199])
    def test_shift_moves_offset(self, shift):
        rng = np.random.default_rng(11)
        reference = rng.normal(size=128)
        base = np.concatenate([reference, rng.normal(scale=0.05, size=300)])
        shifted = np.concatenate([rng.normal(scale=0.05, size=shift), base])
        assert synchronize(shifted, reference) == synchronize(base, reference) + shift


class TestEveryConstellation:
    @pytest.mark.parametrize("bits", range(1, 11))
    def test_noiseless_link_carries_every_order(self, bits, small_cfg, flat_link, vcsel):
        plan = LoadingPlan.uniform(small_cfg.n_sc, bits)
        tx_bits = payload_bits(bits, small_cfg.n_data_frames * plan.total_bits)
        result = run_stream(tx_bits, plan, flat_link, small_cfg, seed=bits, model=vcsel)
        assert result.bit_errors == 0


@pytest.mark.slow
class TestGapFidelity:
    @pytest.mark.parametrize("target", [1e-2, 3.3e-2, 5.6e-2])
    def test_uniform_4qam_at_gap_snr(self, target, flat_link, vcsel):
        cfg = OfdmConfig(n_fft=64, n_cp=4, n_pilot_frames=150, n_data_frames=16200)
        gap = snr_gap(target)
        sigma = noise_std_for_snr(flat_link, vcsel, cfg, 3 * gap.gamma)
        plan = LoadingPlan.uniform(cfg.n_sc, 2)
        tx_bits = payload_bits(21, cfg.n_data_frames * plan.total_bits)
        result = run_stream(tx_bits, plan, flat_link.with_changes(noise_std=sigma), cfg, 21, vcsel)
        assert result.bit_count >= 1_000_000
        assert 0.5 * target < result.ber < 2 * target


@pytest.mark.slow
class TestDefaultGridIdentity:
    """1024-point FFT, 150 pilot and 300 data frames, noiseless flat link."""

    @pytest.mark.parametrize("bits", range(1, 11))
    def test_every_order_is_error_free(self, bits, flat_link, vcsel):
        cfg = OfdmConfig()
        plan = LoadingPlan.uniform(cfg.n_sc, bits)
        tx_bits = payload_bits(bits, cfg.n_data_frames * plan.total_bits)
        result = run_stream(tx_bits, plan, flat_link, cfg, seed=bits, model=vcsel)
        assert result.bit_errors == 0
        assert result.bit_count == cfg.n_data_frames * cfg.n_sc * bits

    def test_frame_is_real_and_keeps_energy(self):
        cfg = OfdmConfig()
        payload = _random_payload(cfg, 1, seed=12)[0]
        wave = build_frame(OfdmFrame(payload), cfg)
        assert wave.metadata["imag_residue"] <= 1e-12
        body = wave.samples[cfg.n_cp :]
        expected = 2 * np.sum(np.abs(payload) ** 2) / cfg.n_fft**2
        assert np.mean(body**2) == pytest.approx(expected, rel=1e-9)


@pytest.mark.slow
class TestSyncUnderNoise:
    def test_offset_found_at_10_db(self):
        rng = np.random.default_rng(31)
        hits = 0
        for _ in range(1000):
            reference = rng.normal(size=1039)
            delay = int(rng.integers(0, 1039))
            clean = np.concatenate([np.zeros(delay), reference, np.zeros(1039 - delay)])
            rx = clean + rng.normal(scale=np.sqrt(0.1), size=clean.size)
            hits += synchronize(rx, reference) == delay
        assert hits >= 999
