# selberg/pipeline/shifts.py
"""
Admissible shifts.

A shift tau is admissible for K when no zero with beta > sigma0 has its
ordinate within Delta of tau + tau0 (and, with a pole, tau + tau0 stays
Delta away from 0). The core set uses Delta = |K| + 1, the set used for
Dirichlet-polynomial approximation Delta = |K| + y + 4.
"""

import logging
from typing import List, Tuple

import numpy as np

from ..errors import DomainError
from ..models.measure import IntervalSet, ZeroSet
from ..models.region import CompactSetContext

logger = logging.getLogger(__name__)


def count_zeros_N(Z: ZeroSet, sigma: float, T: float) -> int:
    """N(sigma, T): zeros with beta > sigma and |gamma| < T."""
    return int(np.count_nonzero((Z.betas > sigma) & (np.abs(Z.gammas) < T)))


def exclusion_windows(
    Z: ZeroSet, sigma0: float, tau0: float, delta: float, pole: bool
) -> List[Tuple[float, float]]:
    """Windows (gamma - tau0 - delta, gamma - tau0 + delta) for beta > sigma0, plus the pole."""
    offline = Z.gammas[Z.betas > sigma0]
    windows = [(g - tau0 - delta, g - tau0 + delta) for g in offline.tolist()]
    if pole:
        windows.append((-tau0 - delta, -tau0 + delta))
    return windows


def admissible_shifts(
    Z: ZeroSet, K: CompactSetContext, T: float, delta: float, pole: bool
) -> IntervalSet:
    """
    [T, 2T] minus the exclusion windows for zeros with beta > K.sigma0.

    Raises:
        DomainError: delta <= 0 or T <= 0
    """
    if delta <= 0 or T <= 0:
        raise DomainError(f"need delta > 0 and T > 0, got delta={delta}, T={T}")
    windows = exclusion_windows(Z, K.sigma0, K.tau0, delta, pole)
    shifts = IntervalSet.from_complement(T, 2.0 * T, windows)
    logger.debug(
        f"Admissible shifts in [{T}, {2 * T}]: {len(shifts)} intervals, "
        f"measure {shifts.total_measure:.6g} ({shifts.excluded_measure:.6g} excluded)"
    )
    return shifts


def core_shift_set(Z: ZeroSet, K: CompactSetContext, T: float, pole: bool) -> IntervalSet:
    """I_K(T), Delta = |K| + 1."""
    return admissible_shifts(Z, K, T, K.kwidth + 1.0, pole)


def poly_shift_set(Z: ZeroSet, K: CompactSetContext, T: float, y: float, pole: bool) -> IntervalSet:
    """X_K(T), Delta = |K| + y + 4."""
    return admissible_shifts(Z, K, T, K.kwidth + y + 4.0, pole)


def shift_window(Z: ZeroSet, K: CompactSetContext, lo: float, hi: float, pole: bool) -> IntervalSet:
    """An arbitrary window [lo, hi] minus the core exclusion windows."""
    if not lo < hi:
        raise DomainError(f"empty shift window [{lo}, {hi}]")
    windows = exclusion_windows(Z, K.sigma0, K.tau0, K.kwidth + 1.0, pole)
    return IntervalSet.from_complement(lo, hi, windows)


def exceptional_set(
    Z: ZeroSet, T: float, sigma3: float, y: float
) -> Tuple[IntervalSet, IntervalSet]:
    """
    l(T; sigma3, y) and its complement in [T/2, 5T/2].

    l is the union of (gamma - (y + 3), gamma + (y + 3)) over zeros with
    beta > sigma3 and gamma in [T/2, 5T/2], plus the two end segments of
    length y + 3.
    """
    if T <= 0 or y < 2:
        raise DomainError(f"need T > 0 and y >= 2, got T={T}, y={y}")
    lo, hi = 0.5 * T, 2.5 * T
    width = y + 3.0
    mask = (Z.betas > sigma3) & (Z.gammas >= lo) & (Z.gammas <= hi)
    windows = [(g - width, g + width) for g in Z.gammas[mask].tolist()]
    windows += [(lo, lo + width), (hi - width, hi)]
    clipped = [(max(a, lo), min(b, hi)) for a, b in windows if b > lo and a < hi]
    exceptional = IntervalSet.union_of(clipped)
    return exceptional, IntervalSet.from_complement(lo, hi, windows)
