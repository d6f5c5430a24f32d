# selberg/pipeline/witness.py
"""
Universality witness search.

Scans the shift lattice of an IntervalSet for tau with
sup over the grid of K of |H_m(s + i tau) - target(s)| < eps, in two stages:
a vectorized Dirichlet-polynomial prefilter keeps every tau whose
approximate error is below eps + slack, then each candidate is confirmed
with eval_Hm.
"""

import logging
import time
from typing import Callable, List, Optional

import numpy as np

from ..errors import DomainError
from ..models.lfunction import SelbergLFunction
from ..models.measure import IntervalSet, WitnessHit, WitnessReport, hit_neighborhood_measure
from ..models.region import CompactSetContext
from ..models.targets import GridTarget, LogTarget
from ..utils.parallel import ordered_map
from .evaluator import HmEvaluator, poly_coefficients

PREFILTER_CHUNK = 4096


class WitnessSearcher:
    """
    Two-stage scan for one (L, m, target, K).

    The prefilter polynomial length `y` and the `slack` added to eps decide
    how many shifts reach the expensive confirmation stage.
    """

    def __init__(
        self,
        L: SelbergLFunction,
        m: int,
        target: Callable[[np.ndarray], np.ndarray],
        K: CompactSetContext,
        y: float = 100.0,
        slack: float = 0.5,
        evaluator: Optional[HmEvaluator] = None,
        threads: int = 1,
    ):
        if slack < 0:
            raise DomainError(f"slack must be nonnegative, got {slack}")
        self.L = L
        self.m = m
        self.target = target
        self.K = K
        self.y = y
        self.slack = slack
        self.evaluator = evaluator or HmEvaluator()
        self.threads = threads
        self.grid = K.grid_points()
        self.goal = np.asarray(target(self.grid), dtype=complex)
        self.logger = logging.getLogger(self.__class__.__name__)

    def prefilter_errors(self, taus: np.ndarray) -> np.ndarray:
        """sup over the grid of |dirichlet_poly(s + i tau) - target(s)| for every tau."""
        log_n, coeffs = poly_coefficients(self.L, self.m, self.grid, self.y)
        errors = np.empty(taus.size)
        for start in range(0, taus.size, PREFILTER_CHUNK):
            chunk = taus[start : start + PREFILTER_CHUNK]
            values = np.exp(-1j * np.outer(chunk, log_n)) @ coeffs
            errors[start : start + chunk.size] = np.max(np.abs(values - self.goal[None, :]), axis=1)
        return errors

    def confirm(self, tau: float) -> Optional[WitnessHit]:
        """Evaluate H_m on the shifted grid; None when a point is inadmissible or fails."""
        values = []
        err = 0.0
        for z in self.grid:
            value = self.evaluator.try_eval_Hm(self.L, self.m, z + 1j * tau)
            if value is None:
                return None
            values.append(value.value)
            err = max(err, value.err_bound)
        values = np.array(values)
        exp_error = None
        if isinstance(self.target, LogTarget):
            exp_error = float(np.max(np.abs(np.exp(values) - self.target.exp_values(self.grid))))
        return WitnessHit(float(tau), float(np.max(np.abs(values - self.goal))), err, exp_error)

    def search(self, shifts: IntervalSet, step: float, eps: float) -> WitnessReport:
        """
        Scan `shifts` on the lattice of spacing `step`.

        Returns:
            WitnessReport with confirmed hits in ascending tau, the hit
            density relative to the scanned measure and to the whole window
        """
        if step <= 0:
            raise DomainError(f"step must be positive, got {step}")
        if eps < 0:
            raise DomainError(f"eps must be nonnegative, got {eps}")
        started = time.time()
        taus = shifts.scan_grid(step)
        approx = self.prefilter_errors(taus)
        candidates = taus[approx < eps + self.slack]
        self.logger.info(
            f"Prefilter kept {candidates.size} of {taus.size} shifts "
            f"(eps={eps}, slack={self.slack}, y={self.y})"
        )
        confirmed = ordered_map(self.confirm, candidates.tolist(), self.threads)
        failed = sum(1 for hit in confirmed if hit is None)
        hits: List[WitnessHit] = [
            hit for hit in confirmed if hit is not None and hit.sup_error < eps
        ]
        if failed:
            self.logger.warning(
                f"{failed} candidate shifts could not be evaluated and were skipped"
            )
        covered = hit_neighborhood_measure([hit.tau for hit in hits], step)
        scanned = shifts.total_measure
        lo, hi = shifts.hull
        report = WitnessReport(
            target=self.target,
            K=self.K,
            epsilon=eps,
            hits=hits,
            scanned_measure=scanned,
            density_estimate=min(1.0, covered / scanned) if scanned > 0 else 0.0,
            window_density=min(1.0, covered / (hi - lo)) if hi > lo else 0.0,
            scanned_points=int(taus.size),
            candidates=int(candidates.size),
            failed=failed,
        )
        self.logger.info(
            f"Witness search for {self.L.name}, m={self.m}: {len(hits)} hits among "
            f"{candidates.size} candidates in {time.time() - started:.1f}s"
        )
        return report


def witness_search(
    L: SelbergLFunction,
    m: int,
    target: Callable[[np.ndarray], np.ndarray],
    K: CompactSetContext,
    shifts: IntervalSet,
    step: float,
    eps: float,
    y: float = 100.0,
    slack: float = 0.5,
    evaluator: Optional[HmEvaluator] = None,
    threads: int = 1,
) -> WitnessReport:
    return WitnessSearcher(L, m, target, K, y, slack, evaluator, threads).search(shifts, step, eps)


def plant_target(
    L: SelbergLFunction,
    m: int,
    K: CompactSetContext,
    tau: float,
    evaluator: Optional[HmEvaluator] = None,
):
    """GridTarget holding H_m(s + i tau) on the grid of K (a known witness at tau)."""
    evaluator = evaluator or HmEvaluator()
    grid = K.grid_points()
    values = [evaluator.eval_Hm(L, m, z + 1j * tau).value for z in grid]
    return GridTarget(grid, np.array(values), label=f"planted@{tau:g}")
