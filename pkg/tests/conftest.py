"""Shared fixtures: small framing configs and flat links that run in milliseconds."""

import os
import sys

import pytest

# Ensure the backend's internal imports work (mirrors what cli/main.py does)
_APP_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir, "app"))
_BACKEND_DIR = os.path.join(_APP_DIR, "backend")
for _d in (_APP_DIR, _BACKEND_DIR):
    if _d not in sys.path:
        sys.path.insert(0, _d)

from models.link import LinkPreset, VcselModel  # noqa: E402
from models.ofdm import OfdmConfig  # noqa: E402

# ---------------------------------------------------------------------------
# Framing
# ---------------------------------------------------------------------------


@pytest.fixture()
def small_cfg():
    """64-point FFT, 31 subcarriers, short streams."""
    return OfdmConfig(n_fft=64, n_cp=4, n_pilot_frames=40, n_data_frames=40)


@pytest.fixture()
def long_pilot_cfg():
    """Same grid with enough pilots for sub-dB SNR estimates."""
    return OfdmConfig(n_fft=64, n_cp=4, n_pilot_frames=300, n_data_frames=40)


@pytest.fixture()
def shaped_cfg():
    """Pulse-shaped variant: 4 samples per symbol, B = 4 GHz."""
    return OfdmConfig(n_fft=64, n_cp=4, n_sps=4, rrc_span=32, n_pilot_frames=20, n_data_frames=20)


# ---------------------------------------------------------------------------
# Links
# ---------------------------------------------------------------------------


@pytest.fixture()
def vcsel():
    return VcselModel()


@pytest.fixture()
def flat_link():
    """Linear-region bias, no response stages, no noise."""
    return LinkPreset(name="custom", i_dc=8.42, drive_scale=1.1, response_stages=[])
