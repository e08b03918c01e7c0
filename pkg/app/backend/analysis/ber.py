"""Bit error counting."""

import numpy as np

from errors import ValidationError


def count_errors(tx_bits, rx_bits) -> int:
    tx = np.asarray(tx_bits).ravel()
    rx = np.asarray(rx_bits).ravel()
    if tx.size != rx.size:
        raise ValidationError(f"bit sequences differ in length ({tx.size} vs {rx.size})")
    return int(np.count_nonzero(tx != rx))


def measure_ber(tx_bits, rx_bits) -> float:
    """Hamming distance over length."""
    errors = count_errors(tx_bits, rx_bits)
    n = np.asarray(tx_bits).size
    if n == 0:
        raise ValidationError("cannot measure BER on empty sequences")
    return errors / n
