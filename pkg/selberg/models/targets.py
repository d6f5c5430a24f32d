# selberg/models/targets.py
"""
Approximation targets on a compact set.

Targets are callables on arrays of points. Polynomial covers the usual
universality targets, GridTarget pins values on a fixed grid (planted
witnesses), LogTarget is the branch-consistent log of a non-vanishing
polynomial so that matching H_0 to it matches L itself to f.
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from ..errors import DomainError
from ..utils.numbers import format_complex, parse_complex


@dataclass(frozen=True)
class Polynomial:
    """p(s) = sum_j coeffs[j] s^j (ascending powers)."""
    coeffs: Tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise DomainError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        """Comma-separated ascending coefficients: `0.2` or `1,0.5-0.1i`."""
        parts = [p for p in text.split(",") if p.strip()]
        if not parts:
            raise DomainError(f"empty polynomial {text!r}")
        try:
            return cls(tuple(parse_complex(p) for p in parts))
        except ValueError as e:
            raise DomainError(str(e)) from None

    @classmethod
    def constant(cls, value: complex) -> "Polynomial":
        return cls((complex(value),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, points) -> np.ndarray:
        z = np.asarray(points, dtype=complex)
        return np.polynomial.polynomial.polyval(z, np.array(self.coeffs))

    def describe(self) -> Dict[str, Any]:
        return {"kind": "polynomial", "coefficients": [format_complex(c) for c in self.coeffs]}


@dataclass(frozen=True, eq=False)
class GridTarget:
    """Values pinned on a fixed set of points."""
    points: np.ndarray
    values: np.ndarray
    label: str = "grid"

    def __post_init__(self):
        points = np.asarray(self.points, dtype=complex).ravel()
        values = np.asarray(self.values, dtype=complex).ravel()
        if points.shape != values.shape:
            raise DomainError("grid target points and values must align")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)

    def __call__(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=complex).ravel()
        out = np.empty(points.shape, dtype=complex)
        for i, z in enumerate(points):
            match = np.flatnonzero(np.abs(self.points - z) <= 1e-12)
            if match.size == 0:
                raise DomainError(f"grid target has no value at {z}")
            out[i] = self.values[match[0]]
        return out

    def describe(self) -> Dict[str, Any]:
        return {"kind": "grid", "label": self.label, "points": int(self.points.size)}


@dataclass(frozen=True)
class LogTarget:
    """
    log f for a polynomial f without zeros on K.

    The branch is principal at `anchor` and continued along straight
    segments anchor -> s, so the values are those of one holomorphic log.
    """
    f: Polynomial
    anchor: complex
    steps: int = 64

    def __post_init__(self):
        object.__setattr__(self, "anchor", complex(self.anchor))

    def __call__(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=complex).ravel()
        base = self.f(np.array([self.anchor]))[0]
        if abs(base) < 1e-12:
            raise DomainError(f"target polynomial vanishes at the anchor {self.anchor}")
        frac = np.linspace(0.0, 1.0, self.steps + 1)
        path = self.anchor + frac[None, :] * (points[:, None] - self.anchor)
        values = self.f(path)
        if np.min(np.abs(values)) < 1e-12:
            raise DomainError("target polynomial vanishes on the compact set")
        ratios = values[:, 1:] / values[:, :-1]
        if np.max(np.abs(np.angle(ratios))) >= np.pi / 2:
            raise DomainError("target polynomial varies too fast for branch tracking; raise steps")
        args = np.angle(base) + np.sum(np.angle(ratios), axis=1)
        return np.log(np.abs(values[:, -1])) + 1j * args

    def exp_values(self, points) -> np.ndarray:
        return self.f(points)

    def describe(self) -> Dict[str, Any]:
        info = self.f.describe()
        info["kind"] = "log-polynomial"
        info["anchor"] = format_complex(self.anchor)
        return info
