# selberg/pipeline/arithmetic.py
"""
Arithmetic of a Selberg-class L-function derived from its b(p^k).

Lambda_L(n) = b(p^k) k log p on prime powers n = p^k, and a(p^k) is the
k-th coefficient of exp(sum_j b(p^j) x^j), extended multiplicatively.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..errors import DomainError, EmptyTableError
from ..models.lfunction import PrimeTable, SelbergLFunction, density_abscissa
from ..utils.primes import cached_primes, factorize, prime_power, sieve_primes

logger = logging.getLogger(__name__)


class RamanujanWarning(UserWarning):
    """|b(p^k)| exceeded the declared C p^(k theta)"""


@dataclass(frozen=True)
class VonMangoldtTable:
    """Prime powers n <= bound in ascending order with their Lambda_L(n)."""
    bound: int
    n: np.ndarray
    p: np.ndarray
    k: np.ndarray
    log_n: np.ndarray
    values: np.ndarray

    def upto(self, bound: float) -> "VonMangoldtTable":
        stop = int(np.searchsorted(self.n, math.floor(bound), side="right"))
        return VonMangoldtTable(
            int(math.floor(bound)),
            self.n[:stop],
            self.p[:stop],
            self.k[:stop],
            self.log_n[:stop],
            self.values[:stop],
        )

    def __len__(self) -> int:
        return int(self.n.size)


def primes_up_to(N: int) -> PrimeTable:
    """
    Complete table of primes <= N.

    Raises:
        EmptyTableError: If N < 2
    """
    if N < 2:
        raise EmptyTableError(f"no primes below {N}")
    return PrimeTable(int(N), sieve_primes(int(N)))


def prime_power_arrays(N: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(n, p, k) for every prime power n = p^k <= N, sorted by n."""
    primes = cached_primes(int(N))
    ns, ps, ks = [], [], []
    k = 1
    while 2**k <= N:
        limit = int(round(N ** (1.0 / k))) + 1
        cand = primes[primes <= limit]
        powers = cand.astype(np.int64) ** k
        keep = powers <= N
        ns.append(powers[keep])
        ps.append(cand[keep])
        ks.append(np.full(int(keep.sum()), k, dtype=np.int64))
        k += 1
    n = np.concatenate(ns) if ns else np.zeros(0, dtype=np.int64)
    p = np.concatenate(ps) if ps else np.zeros(0, dtype=np.int64)
    kk = np.concatenate(ks) if ks else np.zeros(0, dtype=np.int64)
    order = np.argsort(n, kind="stable")
    return n[order], p[order], kk[order]


def von_mangoldt_table(L: SelbergLFunction, N: float) -> VonMangoldtTable:
    """
    Lambda_L(n) for all prime powers n <= N, cached on the instance.

    A cached table with a larger bound is sliced rather than rebuilt.
    """
    N = int(math.floor(N))
    for key, table in sorted(L.cached_tables().items()):
        if key.startswith("lambda:") and table.bound >= N:
            return table.upto(N)

    def _build() -> VonMangoldtTable:
        n, p, k = prime_power_arrays(N)
        values = np.zeros(n.size, dtype=complex)
        for power in np.unique(k):
            mask = k == power
            values[mask] = L.b_array(p[mask], int(power)) * power * np.log(p[mask])
        logger.debug(f"Built Lambda table for {L.name} up to {N} ({n.size} prime powers)")
        return VonMangoldtTable(N, n, p, k, np.log(n.astype(float)), values)

    return L.cached(f"lambda:{N:012d}", _build)


def von_mangoldt(L: SelbergLFunction, n: int) -> complex:
    """Lambda_L(n): b(p^k) k log p when n = p^k, else 0."""
    if n < 1:
        raise DomainError(f"von_mangoldt needs n >= 1, got {n}")
    pk = prime_power(n)
    if pk is None:
        return 0j
    p, k = pk
    return L.b(p, k) * k * math.log(p)


def local_coefficients(L: SelbergLFunction, p: int, kmax: int) -> List[complex]:
    """a(p^0), ..., a(p^kmax) from k a_k = sum_{j=1}^k j b_j a_{k-j}."""
    b = [0j] + [L.b(p, j) for j in range(1, kmax + 1)]
    a = [1 + 0j]
    for k in range(1, kmax + 1):
        a.append(sum(j * b[j] * a[k - j] for j in range(1, k + 1)) / k)
    return a


def dirichlet_coefficient(L: SelbergLFunction, n: int) -> complex:
    """
    a(n), multiplicative, with a(p^k) from exponentiating the local log-series.

    Values are memoized in L.a_coeff_cache under the instance lock.
    """
    if n < 1:
        raise DomainError(f"dirichlet_coefficient needs n >= 1, got {n}")
    if n == 1:
        return 1 + 0j
    with L._lock:
        cached = L.a_coeff_cache.get(n)
    if cached is not None:
        return cached
    value = 1 + 0j
    for p, k in factorize(n).items():
        with L._lock:
            local = L.a_coeff_cache.get(p**k)
        if local is None:
            coeffs = local_coefficients(L, p, k)
            with L._lock:
                for j in range(1, k + 1):
                    L.a_coeff_cache.setdefault(p**j, coeffs[j])
            local = coeffs[k]
        value *= local
    with L._lock:
        L.a_coeff_cache.setdefault(n, value)
    return value


def prime_mean_square(L: SelbergLFunction, x: float) -> float:
    """
    (1/pi(x)) sum_{p <= x} |a(p)|^2.

    Raises:
        DomainError: If x < 2
    """
    if x < 2:
        raise DomainError(f"prime_mean_square needs x >= 2, got {x}")
    primes = cached_primes(int(math.floor(x)))
    a_p = L.b_array(primes, 1)
    return float(np.mean(np.abs(a_p) ** 2))


def default_sigma_L(L: SelbergLFunction, assume_gdh: bool = False) -> float:
    """1/2 for zeta or under GDH, otherwise 1 - 1/(4(d+3))."""
    if L.kind == "zeta":
        return 0.5
    return density_abscissa(L.degree, assume_gdh)


def check_ramanujan(L: SelbergLFunction, limit: int = 1_000_000) -> List[Tuple[int, int, float]]:
    """
    Compare |b(p^k)| with C p^(k theta) for all p^k <= limit.

    Violations are reported through warnings and the log, never raised.

    Returns:
        List of (p, k, |b(p^k)|) that break the bound
    """
    table = von_mangoldt_table(L, limit)
    b_abs = np.abs(table.values) / (table.k * np.log(table.p))
    bound = L.ramanujan_constant * np.exp(table.k * L.theta * np.log(table.p))
    bad = np.flatnonzero(b_abs > bound * (1 + 1e-12))
    violations = [(int(table.p[i]), int(table.k[i]), float(b_abs[i])) for i in bad]
    if violations:
        p, k, size = violations[0]
        message = (
            f"{L.name}: {len(violations)} coefficients break "
            f"|b(p^k)| <= {L.ramanujan_constant} p^(k theta) "
            f"(first p={p}, k={k}, |b|={size:.4g})"
        )
        warnings.warn(message, RamanujanWarning, stacklevel=2)
        logger.warning(message)
    return violations
