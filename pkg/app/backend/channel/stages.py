"""Frequency-response stages of the link cascade using Strategy Pattern."""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Sequence

import numpy as np

from errors import ValidationError


class ResponseStage(ABC):
    """Abstract base class for one block of the end-to-end response."""

    @property
    @abstractmethod
    def kind(self) -> str:
        """Return the registry key of the stage."""
        pass

    @abstractmethod
    def response(self, f: np.ndarray) -> np.ndarray:
        """Complex gain at frequencies f (Hz, f >= 0)."""
        pass

    @abstractmethod
    def to_json(self) -> Dict[str, Any]:
        """Serialize the stage parameters into a dictionary."""
        pass

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.to_json().items() if k != "kind")
        return f"{self.__class__.__name__}({params})"


class SecondOrderLowpass(ResponseStage):
    """Resonant low-pass, H = f_r^2 / (f_r^2 - f^2 + j 2 zeta f_r f)."""

    def __init__(self, resonance_hz: float, damping: float = 0.7071):
        if resonance_hz <= 0 or damping <= 0:
            raise ValidationError("resonance and damping must be positive")
        self.resonance_hz = float(resonance_hz)
        self.damping = float(damping)

    @property
    def kind(self) -> str:
        return "second-order-lowpass"

    def response(self, f: np.ndarray) -> np.ndarray:
        fr = self.resonance_hz
        f = np.asarray(f, dtype=float)
        return fr**2 / (fr**2 - f**2 + 2j * self.damping * fr * f)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "resonance_hz": self.resonance_hz, "damping": self.damping}


class FirstOrderLowpass(ResponseStage):
    """Single-pole roll-off, H = 1 / (1 + j f / f_c)."""

    def __init__(self, cutoff_hz: float):
        if cutoff_hz <= 0:
            raise ValidationError("cutoff must be positive")
        self.cutoff_hz = float(cutoff_hz)

    @property
    def kind(self) -> str:
        return "first-order-lowpass"

    def response(self, f: np.ndarray) -> np.ndarray:
        return 1.0 / (1.0 + 1j * np.asarray(f, dtype=float) / self.cutoff_hz)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "cutoff_hz": self.cutoff_hz}


class Brickwall(ResponseStage):
    """Hard cutoff: unity below cutoff_hz, zero at and above it."""

    def __init__(self, cutoff_hz: float = 11e9):
        if cutoff_hz <= 0:
            raise ValidationError("cutoff must be positive")
        self.cutoff_hz = float(cutoff_hz)

    @property
    def kind(self) -> str:
        return "brickwall"

    def response(self, f: np.ndarray) -> np.ndarray:
        return np.where(np.asarray(f, dtype=float) < self.cutoff_hz, 1.0 + 0j, 0j)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "cutoff_hz": self.cutoff_hz}


class Ripple(ResponseStage):
    """Sinusoidal magnitude ripple from an impedance mismatch, unity at DC."""

    def __init__(self, depth: float, period_hz: float):
        if not 0 <= depth < 1 or period_hz <= 0:
            raise ValidationError("ripple depth must lie in [0, 1) and period be positive")
        self.depth = float(depth)
        self.period_hz = float(period_hz)

    @property
    def kind(self) -> str:
        return "ripple"

    def response(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        ripple = 1.0 + self.depth * np.cos(2 * np.pi * f / self.period_hz)
        return (ripple / (1.0 + self.depth)).astype(complex)

    def to_json(self) -> Dict[str, Any]:
        return {"kind": self.kind, "depth": self.depth, "period_hz": self.period_hz}


class Tabulated(ResponseStage):
    """Magnitude table, linearly interpolated, zero past its last frequency."""

    def __init__(self, frequencies: Sequence[float], gains: Sequence[float]):
        self.frequencies = np.asarray(frequencies, dtype=float)
        self.gains = np.asarray(gains, dtype=float)
        if self.frequencies.shape != self.gains.shape or self.frequencies.size < 2:
            raise ValidationError("tabulated stage needs matching arrays of >= 2 points")
        if np.any(np.diff(self.frequencies) <= 0) or np.any(self.gains < 0):
            raise ValidationError("table frequencies must increase and gains be >= 0")

    @property
    def kind(self) -> str:
        return "tabulated"

    def response(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        g = np.interp(f, self.frequencies, self.gains, left=self.gains[0], right=0.0)
        return g.astype(complex)

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "frequencies": self.frequencies.tolist(),
            "gains": self.gains.tolist(),
        }


STAGE_KINDS = {
    "second-order-lowpass": SecondOrderLowpass,
    "first-order-lowpass": FirstOrderLowpass,
    "brickwall": Brickwall,
    "ripple": Ripple,
    "tabulated": Tabulated,
}


def stage_from_json(data: Dict[str, Any]) -> ResponseStage:
    """Builds a stage from its persisted dict."""
    params = dict(data)
    kind = params.pop("kind", None)
    if kind not in STAGE_KINDS:
        raise ValidationError(f"unknown response stage kind: {kind!r}")
    return STAGE_KINDS[kind](**params)


def cascade_response(stages: List[ResponseStage], f) -> np.ndarray:
    """Pointwise product of all stage responses."""
    f = np.asarray(f, dtype=float)
    h = np.ones(f.shape, dtype=complex)
    for stage in stages:
        h = h * stage.response(f)
    return h
