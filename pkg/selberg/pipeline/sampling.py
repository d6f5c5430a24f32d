# selberg/pipeline/sampling.py
"""
Empirical stand-ins for Q_T (shifts of H_m) and Q (the random model),
and the statistics that compare them.
"""

import logging
import math
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist, pdist, squareform

from ..errors import DomainError, EmptySampleError, UnsupportedRegionError
from ..models.lfunction import SelbergLFunction
from ..models.measure import IntervalSet
from ..models.region import CompactSetContext
from ..models.samples import SampleSet
from ..utils.parallel import ordered_map
from .evaluator import HmEvaluator
from .random_model import analytic_second_moment, phase_vector, random_series_plan

logger = logging.getLogger(__name__)

MC_CHUNK = 256
DISTANCE_CHUNK = 512


def shift_positions(
    shifts: IntervalSet, n: int, scheme: str = "equispaced", seed: int = 0
) -> np.ndarray:
    """n shifts from the set: equispaced in arc length, or uniform from a Philox stream."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if not shifts.intervals:
        raise EmptySampleError("the shift set is empty")
    measure = shifts.total_measure
    if scheme == "equispaced":
        positions = (np.arange(n) + 0.5) / n * measure
    elif scheme == "random":
        generator = np.random.Generator(np.random.Philox(key=int(seed)))
        positions = generator.random(n) * measure
    else:
        raise DomainError(f"unknown sampling scheme {scheme!r}")
    return shifts.locate(positions)


def sample_QT(
    L: SelbergLFunction,
    m: int,
    points: Sequence[complex],
    shifts: IntervalSet,
    n: int,
    scheme: str = "equispaced",
    seed: int = 0,
    evaluator: Optional[HmEvaluator] = None,
    threads: int = 1,
) -> SampleSet:
    """
    Rows (H_m(s_j + i tau))_j for n shifts tau drawn from `shifts`.

    Rows where any evaluation fails are dropped and counted.

    Raises:
        EmptySampleError: Every row failed
    """
    evaluator = evaluator or HmEvaluator()
    points = np.asarray(points, dtype=complex).ravel()
    taus = shift_positions(shifts, n, scheme, seed)
    started = time.time()

    def _row(tau: float) -> Optional[np.ndarray]:
        row = np.empty(points.size, dtype=complex)
        for j, z in enumerate(points):
            value = evaluator.try_eval_Hm(L, m, z + 1j * tau)
            if value is None:
                return None
            row[j] = value.value
        return row

    rows = ordered_map(_row, taus.tolist(), threads)
    kept = [i for i, row in enumerate(rows) if row is not None]
    dropped = len(rows) - len(kept)
    if not kept:
        raise EmptySampleError(f"all {len(rows)} shifted rows failed to evaluate")
    if dropped:
        logger.warning(
            f"Dropped {dropped} of {len(rows)} shifts where H_{m} could not be evaluated"
        )
    logger.info(
        f"Sampled Q_T for {L.name}, m={m}: {len(kept)} rows x {points.size} points "
        f"in {time.time() - started:.1f}s"
    )
    return SampleSet(
        eval_points=points,
        observations=np.array([rows[i] for i in kept]),
        provenance="shift-QT",
        params={
            "lfunction": L.name,
            "m": m,
            "n": n,
            "scheme": scheme,
            "seed": seed if scheme == "random" else None,
            "shift_measure": shifts.total_measure,
            "shift_hull": list(shifts.hull),
        },
        labels=taus[kept],
        dropped=dropped,
    )


def sample_Q(
    L: SelbergLFunction,
    m: int,
    points: Sequence[complex],
    n: int,
    seed: int,
    prime_bound: int,
    constant_phase: Optional[complex] = None,
    threads: int = 1,
) -> SampleSet:
    """
    n Monte-Carlo rows of the random model with seeds seed, seed + 1, ..., seed + n - 1.

    `constant_phase` replaces every omega(p) by one value (1 gives the
    deterministic series truncated at prime_bound).
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    if seed + n > 2**64:
        raise DomainError("seed range exceeds 64 bits")
    points = np.asarray(points, dtype=complex).ravel()
    plan = random_series_plan(L, m, points, prime_bound)
    count = plan.primes.size
    started = time.time()

    def _chunk(start: int) -> np.ndarray:
        stop = min(start + MC_CHUNK, n)
        if constant_phase is not None:
            Z = np.full((stop - start, count), complex(constant_phase))
        else:
            Z = np.array([phase_vector(seed + j, count) for j in range(start, stop)])
        return plan.evaluate(Z)

    blocks = ordered_map(_chunk, list(range(0, n, MC_CHUNK)), threads)
    for note in plan.notes:
        logger.warning(note)
    logger.info(
        f"Sampled Q for {L.name}, m={m}: {n} seeds, {count} primes in {time.time() - started:.1f}s"
    )
    return SampleSet(
        eval_points=points,
        observations=np.vstack(blocks),
        provenance="montecarlo-Q",
        params={
            "lfunction": L.name,
            "m": m,
            "n": n,
            "seed": seed,
            "prime_bound": prime_bound,
            "tail_estimate": plan.tail,
            "constant_phase": None if constant_phase is None else complex(constant_phase),
        },
        labels=np.arange(seed, seed + n, dtype=np.uint64),
    )


def _check_comparable(A: SampleSet, B: SampleSet) -> None:
    if A.eval_points.shape != B.eval_points.shape or not np.allclose(
        A.eval_points, B.eval_points, rtol=0.0, atol=1e-12
    ):
        raise DomainError("samples are taken at different evaluation points")


def _mean_distance(X: np.ndarray, Y: np.ndarray) -> float:
    sums = [
        float(cdist(X[i : i + DISTANCE_CHUNK], Y).sum())
        for i in range(0, X.shape[0], DISTANCE_CHUNK)
    ]
    return math.fsum(sums) / (X.shape[0] * Y.shape[0])


def energy_distance(A: SampleSet, B: SampleSet) -> float:
    """
    Two-sample energy statistic 2 E|a - b| - E|a - a'| - E|b - b'| (V-statistic)
    on rows viewed as vectors in R^(2k).

    Raises:
        DomainError: The samples use different evaluation points
    """
    _check_comparable(A, B)
    X, Y = A.as_real_matrix(), B.as_real_matrix()
    value = 2.0 * _mean_distance(X, Y) - _mean_distance(X, X) - _mean_distance(Y, Y)
    return max(value, 0.0)


@dataclass(frozen=True)
class PermutationTest:
    statistic: float
    p_value: float
    permutations: int
    null_quantile_95: float

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "p_value": self.p_value,
            "permutations": self.permutations,
            "null_quantile_95": self.null_quantile_95,
        }


def energy_permutation_test(
    A: SampleSet, B: SampleSet, permutations: int = 199, seed: int = 0
) -> PermutationTest:
    """
    Permutation p-value (1 + #{null >= observed}) / (1 + permutations) of energy_distance.

    Holds the pooled distance matrix in memory.
    """
    _check_comparable(A, B)
    pooled = np.vstack([A.as_real_matrix(), B.as_real_matrix()])
    D = squareform(pdist(pooled))
    n_a = A.size

    def _statistic(order: np.ndarray) -> float:
        a, b = order[:n_a], order[n_a:]
        value = 2.0 * D[np.ix_(a, b)].mean() - D[np.ix_(a, a)].mean() - D[np.ix_(b, b)].mean()
        return max(float(value), 0.0)

    observed = _statistic(np.arange(pooled.shape[0]))
    generator = np.random.Generator(np.random.Philox(key=int(seed)))
    null = np.array(
        [_statistic(generator.permutation(pooled.shape[0])) for _ in range(permutations)]
    )
    exceed = int(np.count_nonzero(null >= observed))
    quantile = float(np.quantile(null, 0.95)) if permutations else math.nan
    return PermutationTest(observed, (1 + exceed) / (1 + permutations), permutations, quantile)


def ball_frequency(
    S: SampleSet, P: Callable[[np.ndarray], np.ndarray], K: CompactSetContext, eps: float
) -> float:
    """
    Fraction of rows with max over the eval points in K of |row - P| < eps.

    Raises:
        DomainError: No evaluation point lies in K
    """
    inside = K.contains(S.eval_points)
    if not np.any(inside):
        raise DomainError("no evaluation point of the sample lies in the compact set")
    target = np.asarray(P(S.eval_points[inside]), dtype=complex)
    deviation = np.max(np.abs(S.observations[:, inside] - target[None, :]), axis=1)
    return float(np.mean(deviation < eps))


def torus_equidistribution(
    primes: Sequence[int], taus: Sequence[float], max_order: int = 2
) -> pd.DataFrame:
    """
    Empirical Fourier moments of (p^(i tau))_p over the shifts: mean of p^(ik tau)
    for each prime and 1 <= k <= max_order, and of (p/q)^(i tau) for consecutive
    primes. All tend to zero for Haar-distributed rotations.
    """
    primes = np.asarray(primes, dtype=np.int64)
    taus = np.asarray(taus, dtype=float)
    if primes.size == 0 or taus.size == 0:
        raise DomainError("need at least one prime and one shift")
    log_p = np.log(primes.astype(float))
    rows: List[dict] = []
    for k in range(1, max_order + 1):
        moments = np.exp(1j * k * np.outer(log_p, taus)).mean(axis=1)
        for p, z in zip(primes.tolist(), moments):
            rows.append(
                {
                    "character": f"{p}^{k}",
                    "moment_re": z.real,
                    "moment_im": z.imag,
                    "modulus": abs(z),
                }
            )
    for i in range(primes.size - 1):
        z = np.exp(1j * (log_p[i] - log_p[i + 1]) * taus).mean()
        rows.append(
            {
                "character": f"{primes[i]}/{primes[i + 1]}",
                "moment_re": z.real,
                "moment_im": z.imag,
                "modulus": abs(z),
            }
        )
    return pd.DataFrame(rows)


def moment_check(
    S: SampleSet, L: SelbergLFunction, m: int, prime_bound: Optional[int] = None
) -> pd.DataFrame:
    """
    Per-point sample moments against the analytic values: |mean| in standard
    errors, and the relative deviation of E|H|^2 from analytic_second_moment.
    """
    frame = S.moments()
    analytic = []
    for z in S.eval_points:
        try:
            moment = analytic_second_moment(L, m, z.real, prime_bound=prime_bound)
            analytic.append(moment.value.real)
        except UnsupportedRegionError:
            analytic.append(math.nan)
    frame["analytic_second_moment"] = analytic
    frame["mean_z"] = np.hypot(frame["mean_re"], frame["mean_im"]) / frame["mean_se"]
    frame["second_moment_rel_dev"] = frame["second_moment"] / frame["analytic_second_moment"] - 1.0
    return frame
