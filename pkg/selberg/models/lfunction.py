# selberg/models/lfunction.py
"""
Data model for Selberg-class L-functions.

An instance carries the local log-coefficients b(p^k) as a vectorized
provider plus the axiom metadata (degree, theta, pole flag, sigma_L).
Everything else - a(n), Lambda_L(n), the Dirichlet series of H_m - is
derived from b, so the Euler product and the Dirichlet series always agree.
"""

import logging
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np

from ..errors import DomainError
from .character import DirichletCharacter

# b_coeff(primes, k) -> complex array aligned with primes
BCoeff = Callable[[np.ndarray, int], np.ndarray]

LFUNCTION_KINDS = ("zeta", "dirichlet", "custom")


def density_abscissa(degree: float, assume_gdh: bool = False) -> float:
    """Zero-density abscissa: 1/2 under GDH, else 1 - 1/(4(d+3))."""
    if assume_gdh:
        return 0.5
    return 1.0 - 1.0 / (4.0 * (degree + 3.0))


@dataclass(frozen=True)
class PrimeTable:
    """Complete ascending list of primes up to `bound`."""
    bound: int
    primes: np.ndarray

    def __post_init__(self):
        primes = np.asarray(self.primes, dtype=np.int64).copy()
        primes.setflags(write=False)
        object.__setattr__(self, "primes", primes)

    def __len__(self) -> int:
        return int(self.primes.size)

    def __contains__(self, p: int) -> bool:
        i = int(np.searchsorted(self.primes, p))
        return i < self.primes.size and int(self.primes[i]) == p

    def to_list(self):
        return [int(p) for p in self.primes]


@dataclass(frozen=True, eq=False)
class SelbergLFunction:
    """
    One L-function of the Selberg class.

    Immutable after construction. The coefficient caches are filled lazily
    under a lock, so instances can be shared between worker threads.
    """
    name: str
    degree: float
    has_pole_at_one: bool
    theta: float
    b_coeff: BCoeff
    sigma_L: float
    kappa_hint: Optional[float] = None
    ramanujan_constant: float = 1.0
    kind: str = "custom"
    character: Optional[DirichletCharacter] = None
    # largest prime with supplied coefficients (file-based instances)
    coefficient_bound: Optional[int] = None
    # (S3) data: stored, never computed with
    functional_equation: Dict[str, Any] = field(default_factory=dict)

    a_coeff_cache: Dict[int, complex] = field(default_factory=dict, repr=False)
    _tables: Dict[str, Any] = field(default_factory=dict, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    def __post_init__(self):
        if self.degree < 0:
            raise DomainError(f"{self.name}: degree must be nonnegative, got {self.degree}")
        if not 0.0 <= self.theta < 0.5:
            raise DomainError(f"{self.name}: theta must lie in [0, 1/2), got {self.theta}")
        if not 0.5 <= self.sigma_L < 1.0:
            raise DomainError(f"{self.name}: sigma_L must lie in [1/2, 1), got {self.sigma_L}")
        if self.kappa_hint is not None and self.kappa_hint <= 0:
            raise DomainError(f"{self.name}: kappa must be positive")
        if self.ramanujan_constant <= 0:
            raise DomainError(f"{self.name}: Ramanujan constant must be positive")
        if self.kind not in LFUNCTION_KINDS:
            raise DomainError(f"{self.name}: unknown kind {self.kind!r}")
        logging.getLogger(self.__class__.__name__).debug(
            f"Created {self.kind} L-function {self.name} "
            f"(degree {self.degree}, sigma_L {self.sigma_L})"
        )

    def b(self, p: int, k: int) -> complex:
        """Scalar b(p^k)."""
        return complex(self.b_array(np.array([p], dtype=np.int64), k)[0])

    def b_array(self, primes: np.ndarray, k: int) -> np.ndarray:
        values = np.asarray(self.b_coeff(np.asarray(primes, dtype=np.int64), int(k)), dtype=complex)
        return np.broadcast_to(values, np.shape(primes)).astype(complex)

    def cached(self, key: str, build: Callable[[], Any]) -> Any:
        """Return the cached table under `key`, building it once under the lock."""
        with self._lock:
            if key not in self._tables:
                self._tables[key] = build()
            return self._tables[key]

    def cached_tables(self) -> Dict[str, Any]:
        with self._lock:
            return dict(self._tables)

    def describe(self) -> Dict[str, Any]:
        """Metadata echo used in reports."""
        info = {
            "name": self.name,
            "kind": self.kind,
            "degree": self.degree,
            "has_pole_at_one": self.has_pole_at_one,
            "theta": self.theta,
            "sigma_L": self.sigma_L,
            "kappa_hint": self.kappa_hint,
            "ramanujan_constant": self.ramanujan_constant,
        }
        if self.character is not None:
            info["modulus"] = self.character.modulus
            info["character"] = self.character.label
        if self.coefficient_bound is not None:
            info["coefficient_bound"] = self.coefficient_bound
        return info
