"""Frame timing recovery against a known reference."""

import logging

import numpy as np
from scipy import signal

from errors import ValidationError

logger = logging.getLogger(__name__)


def normalized_correlation(rx, reference) -> np.ndarray:
    """Cross-correlation at every full-overlap lag, divided by both energies."""
    rx = np.asarray(rx, dtype=float)
    reference = np.asarray(reference, dtype=float)
    if rx.size == 0 or reference.size == 0:
        raise ValidationError("synchronization inputs must not be empty")
    if reference.size > rx.size:
        raise ValidationError("reference is longer than the received signal")
    corr = signal.correlate(rx, reference, mode="valid")
    energy = np.concatenate([[0.0], np.cumsum(rx**2)])
    window = np.maximum(energy[reference.size :] - energy[: -reference.size], 0.0)
    denom = np.sqrt(window) * np.linalg.norm(reference)
    return np.divide(corr, denom, out=np.zeros_like(corr), where=denom > 0)


def synchronize(rx, reference) -> int:
    """Offset of the reference inside rx (argmax of the normalized correlation)."""
    ncc = normalized_correlation(rx, reference)
    offset = int(np.argmax(ncc))
    logger.debug("Frame sync at offset %d (peak %.4f)", offset, ncc[offset])
    return offset
