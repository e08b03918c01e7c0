"""Gray-coded QAM constellations with unit average symbol energy."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from errors import ValidationError
from models.ofdm import is_power_of_two

MAX_BITS = 10


def gray(n) -> np.ndarray:
    n = np.asarray(n, dtype=np.int64)
    return n ^ (n >> 1)


@dataclass(frozen=True, eq=False)
class Constellation:
    """M-ary QAM on a rectangular grid.

    A label v (log2 M bits, MSB first) splits into bits_i in-phase bits and
    bits_q quadrature bits; each axis is Gray coded independently, so square
    and rectangular orders share one layout. M = 2 is BPSK on the real axis.
    """

    order: int
    bits_i: int
    bits_q: int
    scale: float
    points: np.ndarray

    @property
    def bits_per_symbol(self) -> int:
        return self.bits_i + self.bits_q

    @property
    def levels_i(self) -> int:
        return 1 << self.bits_i

    @property
    def levels_q(self) -> int:
        return 1 << self.bits_q

    @property
    def min_distance(self) -> float:
        return 2.0 * self.scale

    @property
    def bit_labels(self) -> np.ndarray:
        """Label bit patterns (MSB first), row v belongs to points[v]."""
        return _unpack(np.arange(self.order), self.bits_per_symbol)

    @classmethod
    def for_bits(cls, bits: int) -> "Constellation":
        return _build(int(bits))

    @classmethod
    def for_order(cls, order: int) -> "Constellation":
        if not is_power_of_two(order) or order < 2:
            raise ValidationError(f"constellation order must be a power of two >= 2, got {order}")
        return _build(int(order).bit_length() - 1)


def _axis_levels(n_bits: int) -> np.ndarray:
    # Amplitude of every Gray label on one axis, indexed by label
    count = 1 << n_bits
    amplitudes = 2 * np.arange(count) - (count - 1)
    out = np.empty(count, dtype=float)
    out[gray(np.arange(count))] = amplitudes
    return out


@lru_cache(maxsize=None)
def _build(bits: int) -> Constellation:
    if not 1 <= bits <= MAX_BITS:
        raise ValidationError(f"bits per symbol must lie in [1, {MAX_BITS}], got {bits}")
    bits_i = (bits + 1) // 2
    bits_q = bits // 2
    li, lq = 1 << bits_i, 1 << bits_q
    energy = (li * li - 1) / 3 + (lq * lq - 1) / 3
    scale = 1.0 / np.sqrt(energy)
    labels = np.arange(1 << bits)
    i_amp = _axis_levels(bits_i)[labels >> bits_q]
    q_amp = _axis_levels(bits_q)[labels & (lq - 1)]
    points = scale * (i_amp + 1j * q_amp)
    points.setflags(write=False)
    return Constellation(order=1 << bits, bits_i=bits_i, bits_q=bits_q, scale=scale, points=points)


def _pack(bits: np.ndarray, width: int) -> np.ndarray:
    weights = 1 << np.arange(width - 1, -1, -1)
    return bits.reshape(-1, width) @ weights


def _unpack(values: np.ndarray, width: int) -> np.ndarray:
    shifts = np.arange(width - 1, -1, -1)
    return ((np.asarray(values)[:, None] >> shifts) & 1).astype(np.uint8)


def qam_map(bits, constellation: Constellation) -> np.ndarray:
    """Maps each log2(M)-bit group to its constellation point."""
    bits = np.asarray(bits, dtype=np.int64).ravel()
    width = constellation.bits_per_symbol
    if bits.size % width:
        raise ValidationError(
            f"{bits.size} bits do not split into {width}-bit symbols"
        )
    return constellation.points[_pack(bits, width)]


def _nearest_label(coord: np.ndarray, n_bits: int, scale: float) -> np.ndarray:
    count = 1 << n_bits
    index = np.rint((coord / scale + (count - 1)) / 2)
    return gray(np.clip(index, 0, count - 1).astype(np.int64))


def qam_demap(symbols, constellation: Constellation) -> np.ndarray:
    """Hard decision: nearest point per axis, then label lookup."""
    symbols = np.asarray(symbols, dtype=complex).ravel()
    c = constellation
    gi = _nearest_label(symbols.real, c.bits_i, c.scale)
    gq = _nearest_label(symbols.imag, c.bits_q, c.scale)
    return _unpack((gi << c.bits_q) | gq, c.bits_per_symbol).ravel()
