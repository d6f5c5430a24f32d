# selberg/models/measure.py
"""
Zero tables, shift sets and witness reports.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DomainError
from .region import CompactSetContext


@dataclass(frozen=True, eq=False)
class ZeroSet:
    """Nontrivial zeros beta + i gamma with strictly ascending ordinates."""
    betas: np.ndarray
    gammas: np.ndarray
    source: str = ""

    def __post_init__(self):
        betas = np.asarray(self.betas, dtype=float).copy()
        gammas = np.asarray(self.gammas, dtype=float).copy()
        if betas.shape != gammas.shape or betas.ndim != 1:
            raise DomainError("betas and gammas must be aligned 1-d arrays")
        if gammas.size > 1 and not np.all(np.diff(gammas) > 0):
            raise DomainError("zero ordinates must be strictly ascending")
        if betas.size and not np.all((betas > 0) & (betas < 1)):
            raise DomainError("zero abscissae must lie in (0, 1)")
        betas.setflags(write=False)
        gammas.setflags(write=False)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "gammas", gammas)

    @classmethod
    def empty(cls, source: str = "") -> "ZeroSet":
        return cls(np.zeros(0), np.zeros(0), source)

    @property
    def entries(self) -> List[Tuple[float, float]]:
        return list(zip(self.betas.tolist(), self.gammas.tolist()))

    @property
    def rh_verified(self) -> bool:
        return bool(np.all(self.betas == 0.5))

    def __len__(self) -> int:
        return int(self.gammas.size)


@dataclass(frozen=True)
class IntervalSet:
    """
    Disjoint ascending closed intervals.

    `excluded_measure` records how much of the original window was removed
    when the set was built as a complement.
    """
    intervals: Tuple[Tuple[float, float], ...]
    excluded_measure: float = 0.0

    def __post_init__(self):
        cleaned = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        for lo, hi in cleaned:
            if hi < lo:
                raise DomainError(f"interval [{lo}, {hi}] is reversed")
        for (_, hi), (lo, _) in zip(cleaned, cleaned[1:]):
            if lo <= hi:
                raise DomainError("intervals must be disjoint and ascending")
        object.__setattr__(self, "intervals", cleaned)

    @property
    def total_measure(self) -> float:
        return math.fsum(hi - lo for lo, hi in self.intervals)

    @property
    def hull(self) -> Tuple[float, float]:
        if not self.intervals:
            return (0.0, 0.0)
        return (self.intervals[0][0], self.intervals[-1][1])

    def __len__(self) -> int:
        return len(self.intervals)

    def contains(self, tau) -> np.ndarray:
        tau = np.asarray(tau, dtype=float)
        if not self.intervals:
            return np.zeros(tau.shape, dtype=bool)
        arr = np.asarray(self.intervals)
        idx = np.searchsorted(arr[:, 0], tau, side="right") - 1
        safe = np.clip(idx, 0, len(arr) - 1)
        return (idx >= 0) & (tau <= arr[safe, 1])

    def locate(self, position) -> np.ndarray:
        """Map arc-length positions in [0, total_measure] to points of the set."""
        position = np.asarray(position, dtype=float)
        arr = np.asarray(self.intervals)
        lengths = arr[:, 1] - arr[:, 0]
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        idx = np.clip(np.searchsorted(cum, position, side="right") - 1, 0, len(arr) - 1)
        return arr[idx, 0] + np.minimum(position - cum[idx], lengths[idx])

    def scan_grid(self, step: float) -> np.ndarray:
        """Points lo0 + j * step (one global lattice) that fall inside the set."""
        if step <= 0:
            raise DomainError("step must be positive")
        if not self.intervals:
            return np.zeros(0)
        origin = self.intervals[0][0]
        chunks = []
        for lo, hi in self.intervals:
            j0 = math.ceil((lo - origin) / step - 1e-9)
            j1 = math.floor((hi - origin) / step + 1e-9)
            if j1 >= j0:
                pts = origin + step * np.arange(j0, j1 + 1)
                chunks.append(pts[(pts >= lo - 1e-9 * step) & (pts <= hi + 1e-9 * step)])
        return np.concatenate(chunks) if chunks else np.zeros(0)

    @staticmethod
    def merge(windows: Iterable[Tuple[float, float]]) -> List[Tuple[float, float]]:
        """Union of possibly overlapping windows, ascending."""
        merged: List[List[float]] = []
        for lo, hi in sorted((float(a), float(b)) for a, b in windows if b > a):
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return [(lo, hi) for lo, hi in merged]

    @classmethod
    def union_of(cls, windows: Iterable[Tuple[float, float]]) -> "IntervalSet":
        return cls(tuple(cls.merge(windows)))

    @classmethod
    def from_complement(
        cls, lo: float, hi: float, windows: Iterable[Tuple[float, float]]
    ) -> "IntervalSet":
        """[lo, hi] minus the union of the open windows."""
        clipped = [(max(a, lo), min(b, hi)) for a, b in windows if b > lo and a < hi]
        removed = cls.merge(clipped)
        kept: List[Tuple[float, float]] = []
        cursor = lo
        for a, b in removed:
            if a > cursor:
                kept.append((cursor, a))
            cursor = max(cursor, b)
        if cursor < hi:
            kept.append((cursor, hi))
        excluded = math.fsum(b - a for a, b in removed)
        return cls(tuple(kept), excluded_measure=excluded)

    def to_list(self) -> List[List[float]]:
        return [[lo, hi] for lo, hi in self.intervals]


@dataclass(frozen=True)
class WitnessHit:
    tau: float
    sup_error: float
    err_bound: float = 0.0
    exp_sup_error: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        row = {"tau": self.tau, "sup_error": self.sup_error, "err_bound": self.err_bound}
        if self.exp_sup_error is not None:
            row["exp_sup_error"] = self.exp_sup_error
        return row


@dataclass
class WitnessReport:
    """Outcome of a shift scan for sup_K |H_m(s + i tau) - target(s)| < epsilon."""
    target: Any
    K: CompactSetContext
    epsilon: float
    hits: List[WitnessHit] = field(default_factory=list)
    scanned_measure: float = 0.0
    density_estimate: float = 0.0
    # the same count normalized by the length of the whole scan window
    window_density: float = 0.0
    scanned_points: int = 0
    candidates: int = 0
    failed: int = 0

    @property
    def taus(self) -> List[float]:
        return [hit.tau for hit in self.hits]

    def summary(self) -> Dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "hits": len(self.hits),
            "scanned_points": self.scanned_points,
            "prefilter_candidates": self.candidates,
            "failed_points": self.failed,
            "scanned_measure": self.scanned_measure,
            "density_estimate": self.density_estimate,
            "window_density": self.window_density,
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": (
                self.target.describe() if hasattr(self.target, "describe") else str(self.target)
            ),
            "compact_set": self.K.describe(),
            "summary": self.summary(),
            "hits": [hit.to_dict() for hit in self.hits],
        }


def hit_neighborhood_measure(taus: Sequence[float], step: float) -> float:
    """Measure of the union of step-wide boxes centred on the hits."""
    boxes = IntervalSet.merge((t - 0.5 * step, t + 0.5 * step) for t in taus)
    return math.fsum(b - a for a, b in boxes)
