# selberg/pipeline/random_model.py
"""
The random model H_m(s, omega) = sum_p g_p(s, omega(p)),

    g_p(s, z) = sum_k b(p^k) z^k / ((k log p)^m p^(ks)),

with omega(p) independent and uniform on the unit circle. Phases come from a
counter-based generator keyed by the seed, so the phase of the i-th prime
depends only on (seed, i).
"""

import cmath
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import DivergenceError, DomainError, UnsupportedRegionError
from ..models.lfunction import SelbergLFunction
from ..models.region import CompactSetContext
from ..models.samples import PhaseAssignment
from ..models.targets import GridTarget
from ..models.values import ApproxValue
from ..utils.primes import cached_primes, factorize
from ..utils.quadrature import tail_integral
from .arithmetic import von_mangoldt_table

logger = logging.getLogger(__name__)

COUNTER_SCHEME = "philox-prime-index"
LOCAL_TAIL = 1e-14
# terms below this size are dropped from the vectorized sums
TERM_FLOOR = 1e-17
RANDOM_MARGIN = 0.05


def sample_phases(seed: int, prime_bound: int) -> PhaseAssignment:
    """
    omega(p) = exp(2 pi i u_p) for p <= prime_bound, u_p the deviate at the prime's index.

    Raises:
        DomainError: prime_bound < 2 or seed outside [0, 2^64)
    """
    if prime_bound < 2:
        raise DomainError(f"prime_bound must be at least 2, got {prime_bound}")
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must lie in [0, 2^64), got {seed}")
    primes = cached_primes(int(prime_bound))
    phases = phase_vector(seed, primes.size)
    return PhaseAssignment(int(prime_bound), primes, phases, int(seed), COUNTER_SCHEME)


def phase_vector(seed: int, count: int) -> np.ndarray:
    """The first `count` phases of the Philox stream keyed by `seed`."""
    generator = np.random.Generator(np.random.Philox(key=int(seed)))
    return np.exp(2j * np.pi * generator.random(count))


def omega_at(w: PhaseAssignment, n: int) -> complex:
    """
    Completely multiplicative extension omega(n) = prod omega(p)^nu_p(n).

    Raises:
        OutOfRangeError: A prime factor of n exceeds the assignment's bound
    """
    if n < 1:
        raise DomainError(f"omega is defined on n >= 1, got {n}")
    value = 1 + 0j
    for p, k in factorize(n).items():
        value *= w[p] ** k
    return value


def truncation_order(
    L: SelbergLFunction, m: int, sigma: float, p: int, tail: float = LOCAL_TAIL
) -> int:
    """
    Smallest K with C r^(K+1) / (((K+1) log p)^m (1 - r)) < tail, r = p^(theta - sigma).

    Raises:
        DivergenceError: sigma <= theta
    """
    if sigma <= L.theta:
        raise DivergenceError(
            f"the local series at p={p} diverges for Re s = {sigma} <= theta = {L.theta}"
        )
    log_p = math.log(p)
    r = math.exp((L.theta - sigma) * log_p)
    K = 1
    while True:
        bound = L.ramanujan_constant * r ** (K + 1) / (((K + 1) * log_p) ** m * (1.0 - r))
        if bound < tail or K >= 10_000:
            return K
        K += 1


def local_factor_g(L: SelbergLFunction, m: int, s: complex, z: complex, p: int) -> ApproxValue:
    """
    g_p(s, z) with its geometric tail bound.

    Raises:
        DomainError: |z| != 1
        DivergenceError: Re s <= theta
    """
    s = complex(s)
    z = complex(z)
    if abs(abs(z) - 1.0) > 1e-12:
        raise DomainError(f"phase must lie on the unit circle, got |z| = {abs(z)}")
    K = truncation_order(L, m, s.real, p)
    log_p = math.log(p)
    total = 0j
    for k in range(1, K + 1):
        total += L.b(p, k) * z**k / (k * log_p) ** m * cmath.exp(-k * s * log_p)
    r = math.exp((L.theta - s.real) * log_p)
    tail = L.ramanujan_constant * r ** (K + 1) / (((K + 1) * log_p) ** m * (1.0 - r))
    return ApproxValue(complex(total), tail, "random-series")


def default_kmax(L: SelbergLFunction, sigma: float) -> int:
    """Largest k for which 2^(k (theta - sigma)) still exceeds TERM_FLOOR."""
    return max(1, int(math.ceil(-math.log(TERM_FLOOR) / ((sigma - L.theta) * math.log(2.0)))))


@dataclass(frozen=True)
class RandomSeriesPlan:
    """
    Per-k coefficient blocks c_k[p, j] = b(p^k) / ((k log p)^m p^(k s_j)) for the
    active primes, so that H(s_j, omega) = sum_k (omega^k)[:len(c_k)] @ c_k[:, j].
    """
    points: np.ndarray
    primes: np.ndarray
    blocks: Tuple[np.ndarray, ...]
    tail: float
    notes: Tuple[str, ...] = ()

    def evaluate(self, phases: np.ndarray) -> np.ndarray:
        """phases: (rows, P) or (P,); returns (rows, points) or (points,)."""
        phases = np.asarray(phases, dtype=complex)
        single = phases.ndim == 1
        Z = phases[None, :] if single else phases
        out = np.zeros((Z.shape[0], self.points.size), dtype=complex)
        power = np.ones_like(Z)
        for block in self.blocks:
            power = power * Z
            out += power[:, : block.shape[0]] @ block
        return out[0] if single else out


def random_series_plan(
    L: SelbergLFunction,
    m: int,
    points: Sequence[complex],
    prime_bound: int,
    kmax: Optional[int] = None,
    tail_target: float = 1e-2,
) -> RandomSeriesPlan:
    """
    Precompute the coefficient blocks of H_m(s, omega) truncated at p <= prime_bound.

    Raises:
        UnsupportedRegionError: Some Re s <= 1/2
    """
    points = np.asarray(points, dtype=complex).ravel()
    sigma = float(np.min(points.real))
    if sigma <= 0.5:
        raise UnsupportedRegionError(f"the random series needs Re s > 1/2, got {sigma}")
    notes: List[str] = []
    if sigma <= 0.5 + RANDOM_MARGIN:
        notes.append(f"Re s = {sigma} is within {RANDOM_MARGIN} of 1/2; convergence is slow")
    primes = cached_primes(int(prime_bound))
    log_p = np.log(primes.astype(float))
    kmax = kmax or default_kmax(L, sigma)
    blocks = []
    for k in range(1, kmax + 1):
        # the k-th term decays in p, so the active primes form a prefix
        size = L.ramanujan_constant * np.exp(k * (L.theta - sigma) * log_p)
        active = int(np.searchsorted(-size, -TERM_FLOOR, side="right"))
        if active == 0:
            break
        lp = log_p[:active]
        b = L.b_array(primes[:active], k)
        block = (b / (k * lp) ** m)[:, None] * np.exp(-k * np.outer(lp, points))
        blocks.append(block)
    # variance of the omitted primes p > prime_bound
    omitted = tail_integral(2 * sigma - 2 * L.theta, -(2 * m + 1), prime_bound)
    tail = L.ramanujan_constant * math.sqrt(omitted)
    if tail > tail_target:
        notes.append(
            f"prime_bound {prime_bound} leaves an estimated tail of {tail:.3g} "
            f"(target {tail_target:.3g})"
        )
    return RandomSeriesPlan(points, primes, tuple(blocks), tail, tuple(notes))


def eval_random_Hm(
    L: SelbergLFunction,
    m: int,
    s: complex,
    w: PhaseAssignment,
    Kmax: Optional[int] = None,
    tail_target: float = 1e-2,
) -> ApproxValue:
    """
    H_m(s, omega) summed over p <= w.prime_bound.

    The error bound is the standard deviation of the omitted primes'
    contribution (a heuristic, not a rigorous bound); notes flag a
    prime_bound too small for `tail_target`.
    """
    plan = random_series_plan(L, m, [s], w.prime_bound, Kmax, tail_target)
    phases = w.phase_of(plan.primes)
    value = plan.evaluate(phases)[0]
    return ApproxValue(complex(value), plan.tail, "random-series", list(plan.notes))


def analytic_second_moment(
    L: SelbergLFunction,
    m: int,
    sigma: float,
    prime_bound: Optional[int] = None,
    terms: int = 1_000_000,
    n_min: int = 2,
) -> ApproxValue:
    """
    E|H_m(sigma + it, omega)|^2 = sum_n |Lambda(n)|^2 / ((log n)^(2m+2) n^(2 sigma)).

    With `prime_bound` the sum runs over prime powers p^k with p <= prime_bound
    (the exact moment of the truncated model); otherwise over n <= terms with
    the tail bound of the majorant |Lambda(n)| <= C n^theta log n.

    Raises:
        DivergenceError: sigma <= 1/2
    """
    if sigma <= 0.5:
        raise DivergenceError(f"the second moment diverges for sigma = {sigma} <= 1/2")
    if prime_bound is not None:
        plan_primes = cached_primes(int(prime_bound))
        log_p = np.log(plan_primes.astype(float))
        total = 0.0
        for k in range(1, default_kmax(L, sigma) + 1):
            size = np.exp(2 * k * (L.theta - sigma) * log_p)
            active = int(np.searchsorted(-size, -TERM_FLOOR**2, side="right"))
            if active == 0:
                break
            b = L.b_array(plan_primes[:active], k)
            weight = np.exp(-2 * k * sigma * log_p[:active])
            total += math.fsum(np.abs(b) ** 2 / (k * log_p[:active]) ** (2 * m) * weight)
        return ApproxValue(total, 0.0, "random-series", [f"primes <= {prime_bound}"])
    table = von_mangoldt_table(L, terms)
    keep = table.n >= n_min
    log_n = table.log_n[keep]
    values = np.abs(table.values[keep]) ** 2 / log_n ** (2 * m + 2) * np.exp(-2 * sigma * log_n)
    tail = L.ramanujan_constant**2 * tail_integral(2 * sigma - 2 * L.theta, -2 * m, terms)
    return ApproxValue(math.fsum(values), tail, "series")


@dataclass
class PhaseFitResult:
    assignment: PhaseAssignment
    error: float
    history: List[float]
    baseline_error: float
    metric: Optional[float] = None
    sweeps_run: int = 0
    changed: List[int] = field(default_factory=list)
    # sup error of the warm start, before the first sweep
    start_error: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "sup_error": self.error,
            "baseline_error": self.baseline_error,
            "error_history": self.history,
            "metric_d": self.metric,
            "sweeps_run": self.sweeps_run,
            "phases_changed_per_sweep": self.changed,
            "start_error": self.start_error,
            "prime_bound": self.assignment.prime_bound,
        }


class PhaseFitter:
    """
    Coordinate descent over omega(p) on a circle grid, minimizing
    sup over the grid of K of |sum_{p <= P} g_p(s, omega(p)) - target(s)|.

    Primes are visited in increasing order; a phase only moves when the
    sup error strictly drops, so the error history never increases.

    A fit can be warm-started from the assignment of a smaller prime bound:
    shared primes keep their phases and every new prime is placed at the
    circle point that best fits the residual left by the primes before it.
    """

    def __init__(
        self,
        L: SelbergLFunction,
        m: int,
        K: CompactSetContext,
        prime_bound: int,
        circle_points: int = 64,
    ):
        if prime_bound < 2:
            raise DomainError(f"prime_bound must be at least 2, got {prime_bound}")
        self.L = L
        self.m = m
        self.K = K
        self.prime_bound = int(prime_bound)
        self.circle = np.exp(2j * np.pi * np.arange(circle_points) / circle_points)
        self.grid = K.grid_points()
        self.logger = logging.getLogger(self.__class__.__name__)
        self.plan = random_series_plan(L, m, self.grid, self.prime_bound)
        self._coefficients = self._per_prime_coefficients()

    def _per_prime_coefficients(self) -> List[np.ndarray]:
        """Ragged (K_p, grid) arrays: row k-1 is b(p^k)/((k log p)^m p^(ks))."""
        per_prime: List[List[np.ndarray]] = [[] for _ in range(self.plan.primes.size)]
        for block in self.plan.blocks:
            for i in range(block.shape[0]):
                per_prime[i].append(block[i])
        return [np.array(rows) for rows in per_prime]

    def _candidates(self, i: int) -> np.ndarray:
        """g_p at every circle point: (circle_points, grid)."""
        coeffs = self._coefficients[i]
        if coeffs.size == 0:
            return np.zeros((self.circle.size, self.grid.size), dtype=complex)
        powers = self.circle[:, None] ** np.arange(1, coeffs.shape[0] + 1)[None, :]
        return powers @ coeffs

    def _warm_start(
        self, initial: PhaseAssignment, goal: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, float]:
        """Circle indices, fitted values and sup error seeded from `initial`."""
        primes = self.plan.primes
        known = np.isin(primes, initial.primes)
        index = np.zeros(primes.size, dtype=int)
        if np.any(known):
            phases = initial.phase_of(primes[known])
            index[known] = np.argmin(np.abs(phases[:, None] - self.circle[None, :]), axis=1)
        current = self.plan.evaluate(self.circle[index])
        for i in np.flatnonzero(~known).tolist():
            options = self._candidates(i)
            trial = (current - options[index[i]])[None, :] + options
            best = int(np.argmin(np.max(np.abs(trial - goal[None, :]), axis=1)))
            index[i] = best
            current = trial[best]
        self.logger.debug(
            f"Warm start from {int(np.count_nonzero(known))} fitted phases, "
            f"{int(np.count_nonzero(~known))} new primes placed"
        )
        return index, current, float(np.max(np.abs(current - goal)))

    def fit(
        self,
        target: Callable[[np.ndarray], np.ndarray],
        sweeps: int = 20,
        initial: Optional[PhaseAssignment] = None,
    ) -> PhaseFitResult:
        """
        Coordinate descent from omega == 1, or from `initial` when given.

        Args:
            target: Function to approximate, evaluated on the grid of K
            sweeps: Maximum number of passes over the primes
            initial: Phases of an earlier fit, usually for a smaller prime bound

        Returns:
            PhaseFitResult whose error is at most the warm-start error
        """
        started = time.time()
        goal = np.asarray(target(self.grid), dtype=complex)
        index = np.zeros(self.plan.primes.size, dtype=int)
        current = self.plan.evaluate(self.circle[index])
        error = float(np.max(np.abs(current - goal)))
        baseline = error
        start_error = None
        if initial is not None:
            index, current, error = self._warm_start(initial, goal)
            start_error = error
        history: List[float] = []
        changed: List[int] = []
        for sweep in range(sweeps):
            moves = 0
            for i in range(self.plan.primes.size):
                options = self._candidates(i)
                without = current - options[index[i]]
                trial = without[None, :] + options
                errors = np.max(np.abs(trial - goal[None, :]), axis=1)
                best = int(np.argmin(errors))
                if errors[best] < error:
                    index[i] = best
                    current = trial[best]
                    error = float(errors[best])
                    moves += 1
            history.append(error)
            changed.append(moves)
            self.logger.debug(f"Sweep {sweep + 1}: sup error {error:.6g}, {moves} phases moved")
            if moves == 0:
                break
        assignment = PhaseAssignment(
            self.prime_bound,
            self.plan.primes,
            self.circle[index],
            seed=-1,
            counter_scheme="phase-fit",
        )
        self.logger.info(
            f"Phase fit for {self.L.name}: sup error {baseline:.4g} -> {error:.4g} over "
            f"{len(history)} sweeps, {self.plan.primes.size} primes in {time.time() - started:.1f}s"
        )
        return PhaseFitResult(
            assignment=assignment,
            error=error,
            history=history,
            baseline_error=baseline,
            metric=self._metric(assignment, target),
            sweeps_run=len(history),
            changed=changed,
            start_error=start_error,
        )

    def _metric(
        self, assignment: PhaseAssignment, target: Callable[[np.ndarray], np.ndarray]
    ) -> Optional[float]:
        """d(fitted series, target) on R; None when the target has no values off the grid of K."""
        if isinstance(target, GridTarget):
            return None

        def fitted(points: np.ndarray) -> np.ndarray:
            plan = random_series_plan(self.L, self.m, points, self.prime_bound)
            return plan.evaluate(assignment.phases)

        try:
            return self.K.metric(fitted, lambda points: np.asarray(target(points), dtype=complex))
        except DomainError as e:
            self.logger.warning(f"Metric d not computed: {e}")
            return None


def phase_fit(
    L: SelbergLFunction,
    m: int,
    target: Callable[[np.ndarray], np.ndarray],
    K: CompactSetContext,
    prime_bound: int,
    sweeps: int = 20,
    circle_points: int = 64,
    initial: Optional[PhaseAssignment] = None,
) -> Tuple[PhaseAssignment, float]:
    """
    Best assignment found by PhaseFitter and its sup-norm error on the grid of K.

    Passing the result for a smaller prime bound as `initial` continues
    that fit instead of restarting from omega == 1.
    """
    result = PhaseFitter(L, m, K, prime_bound, circle_points).fit(target, sweeps, initial)
    return result.assignment, result.error


def save_phases(w: PhaseAssignment, path: str) -> None:
    """Text form: `# key=value` headers, then `p re im` per prime."""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"# seed={w.seed}\n")
        handle.write(f"# prime_bound={w.prime_bound}\n")
        handle.write(f"# counter_scheme={w.counter_scheme}\n")
        for p, z in zip(w.primes, w.phases):
            handle.write(f"{int(p)} {z.real:.17g} {z.imag:.17g}\n")
    logger.info(f"Saved {len(w)} phases to {path}")


def load_phases(path: str) -> PhaseAssignment:
    """Inverse of save_phases; phases are renormalized onto the unit circle."""
    meta = {}
    primes: List[int] = []
    phases: List[complex] = []
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key.strip()] = value.strip()
                continue
            fields = line.split()
            if len(fields) != 3:
                raise DomainError(f"{path}:{lineno}: expected 'p re im', got {line!r}")
            z = complex(float(fields[1]), float(fields[2]))
            primes.append(int(fields[0]))
            phases.append(z / abs(z))
    if "prime_bound" not in meta:
        raise DomainError(f"{path}: missing '# prime_bound=' header")
    return PhaseAssignment(
        int(meta["prime_bound"]),
        np.array(primes, dtype=np.int64),
        np.array(phases, dtype=complex),
        seed=int(meta.get("seed", -1)),
        counter_scheme=meta.get("counter_scheme", COUNTER_SCHEME),
    )
