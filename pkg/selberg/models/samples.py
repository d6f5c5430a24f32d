# selberg/models/samples.py
"""
Random-model phases and sample matrices.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Optional

import numpy as np
import pandas as pd

from ..errors import DomainError, OutOfRangeError

Provenance = Literal["shift-QT", "montecarlo-Q"]


@dataclass(frozen=True, eq=False)
class PhaseAssignment:
    """
    A finite sample of omega: prime p <= prime_bound -> omega(p) on the unit circle.

    `primes` and `phases` are aligned read-only arrays. The phases are a
    deterministic function of (seed, prime index) under `counter_scheme`.
    """
    prime_bound: int
    primes: np.ndarray
    phases: np.ndarray
    seed: int
    counter_scheme: str = "philox-prime-index"

    def __post_init__(self):
        primes = np.asarray(self.primes, dtype=np.int64).copy()
        phases = np.asarray(self.phases, dtype=complex).copy()
        if primes.shape != phases.shape:
            raise DomainError("primes and phases must align")
        if primes.size and np.max(np.abs(np.abs(phases) - 1.0)) > 1e-12:
            raise DomainError("phases must have modulus 1")
        primes.setflags(write=False)
        phases.setflags(write=False)
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "phases", phases)

    def __len__(self) -> int:
        return int(self.primes.size)

    def __getitem__(self, p: int) -> complex:
        return complex(self.phase_of(np.array([p]))[0])

    def phase_of(self, primes: np.ndarray) -> np.ndarray:
        """omega(p) for an array of primes; every p must be in the table."""
        primes = np.asarray(primes, dtype=np.int64)
        idx = np.searchsorted(self.primes, primes)
        found = self.primes[np.minimum(idx, self.primes.size - 1)]
        ok = (idx < self.primes.size) & (found == primes)
        if not np.all(ok):
            bad = int(primes[~ok][0])
            raise OutOfRangeError(
                f"prime {bad} is not covered by this assignment (bound {self.prime_bound})"
            )
        return self.phases[idx]

    @classmethod
    def constant(
        cls, primes: np.ndarray, prime_bound: int, value: complex = 1.0 + 0j
    ) -> "PhaseAssignment":
        """omega == value on every prime (value = 1 recovers the deterministic series)."""
        primes = np.asarray(primes, dtype=np.int64)
        phases = np.full(primes.shape, complex(value))
        return cls(prime_bound, primes, phases, seed=-1, counter_scheme="constant")

    def with_phases(
        self, phases: np.ndarray, counter_scheme: Optional[str] = None
    ) -> "PhaseAssignment":
        return PhaseAssignment(
            self.prime_bound, self.primes, phases, self.seed, counter_scheme or self.counter_scheme
        )


@dataclass
class SampleSet:
    """
    Observations of (H_m(s_1), ..., H_m(s_k)) for n samples.

    Rows are shifts tau (provenance shift-QT) or Monte-Carlo seeds
    (provenance montecarlo-Q); `labels` holds the tau or seed of each row.
    """
    eval_points: np.ndarray
    observations: np.ndarray
    provenance: Provenance
    params: Dict[str, Any] = field(default_factory=dict)
    labels: Optional[np.ndarray] = None
    dropped: int = 0

    def __post_init__(self):
        self.eval_points = np.asarray(self.eval_points, dtype=complex).ravel()
        self.observations = np.asarray(self.observations, dtype=complex)
        if self.observations.ndim != 2 or self.observations.shape[1] != self.eval_points.size:
            raise DomainError(
                f"observation matrix {self.observations.shape} does not match "
                f"{self.eval_points.size} points"
            )
        if self.provenance not in ("shift-QT", "montecarlo-Q"):
            raise DomainError(f"unknown provenance {self.provenance!r}")
        if np.isnan(self.observations).any():
            raise DomainError("sample contains NaN entries")
        if self.labels is not None:
            self.labels = np.asarray(self.labels)
            if self.labels.shape[0] != self.observations.shape[0]:
                raise DomainError("labels do not match rows")

    @property
    def size(self) -> int:
        return int(self.observations.shape[0])

    def as_real_matrix(self) -> np.ndarray:
        """Each row as a vector in R^(2k): real parts then imaginary parts."""
        return np.hstack([self.observations.real, self.observations.imag])

    def moments(self) -> pd.DataFrame:
        """Per-point mean, second moment |H|^2 and their standard errors."""
        obs = self.observations
        n = obs.shape[0]
        sq = np.abs(obs) ** 2
        spread = np.abs(obs - obs.mean(axis=0)) ** 2
        return pd.DataFrame(
            {
                "point_re": self.eval_points.real,
                "point_im": self.eval_points.imag,
                "mean_re": obs.mean(axis=0).real,
                "mean_im": obs.mean(axis=0).imag,
                "mean_se": np.sqrt(spread.sum(axis=0) / (n - 1) / n) if n > 1 else np.nan,
                "second_moment": sq.mean(axis=0),
                "second_moment_se": sq.std(axis=0, ddof=1) / np.sqrt(n) if n > 1 else np.nan,
            }
        )

    def to_frame(self) -> pd.DataFrame:
        """One row per sample, columns label, h{j}_re, h{j}_im."""
        data: Dict[str, Any] = {}
        label_name = "tau" if self.provenance == "shift-QT" else "seed"
        data[label_name] = self.labels if self.labels is not None else np.arange(self.size)
        for j in range(self.eval_points.size):
            data[f"h{j}_re"] = self.observations[:, j].real
            data[f"h{j}_im"] = self.observations[:, j].imag
        return pd.DataFrame(data)
