# selberg/models/region.py
"""
Compact sets K in the critical strip and the quantities derived from them.

For K with real parts in [a, b] and imaginary parts in [c, d]:
    |K| = d - c,  tau0 = (c + d) / 2,
    sigma0 = (sigma_L + a) / 2,  sigma1 = (sigma0 + a) / 2,  sigma2 = (b + 1) / 2,
    R = (sigma1, sigma2) x i(c - 1/2, d + 1/2).
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Union

import numpy as np

from ..errors import DomainError


@dataclass(frozen=True)
class Rectangle:
    """Closed rectangle [lower.real, upper.real] x i[lower.imag, upper.imag]."""
    lower: complex
    upper: complex

    def __post_init__(self):
        object.__setattr__(self, "lower", complex(self.lower))
        object.__setattr__(self, "upper", complex(self.upper))
        if not (self.lower.real < self.upper.real and self.lower.imag < self.upper.imag):
            raise DomainError(f"degenerate rectangle {self.lower} .. {self.upper}")

    @property
    def min_re(self) -> float:
        return self.lower.real

    @property
    def max_re(self) -> float:
        return self.upper.real

    @property
    def min_im(self) -> float:
        return self.lower.imag

    @property
    def max_im(self) -> float:
        return self.upper.imag

    @property
    def center(self) -> complex:
        return 0.5 * (self.lower + self.upper)

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        z = np.asarray(points, dtype=complex)
        return (
            (z.real >= self.min_re - tol)
            & (z.real <= self.max_re + tol)
            & (z.imag >= self.min_im - tol)
            & (z.imag <= self.max_im + tol)
        )

    def grid(self, size: int = 7) -> np.ndarray:
        xs = np.linspace(self.min_re, self.max_re, size)
        ys = np.linspace(self.min_im, self.max_im, size)
        return (xs[None, :] + 1j * ys[:, None]).ravel()

    def boundary(self, per_side: int = 12) -> np.ndarray:
        """Points on the boundary, corners included once."""
        t = np.linspace(0.0, 1.0, per_side, endpoint=False)
        a, b, c, d = self.min_re, self.max_re, self.min_im, self.max_im
        bottom = (a + (b - a) * t) + 1j * c
        right = b + 1j * (c + (d - c) * t)
        top = (b - (b - a) * t) + 1j * d
        left = a + 1j * (d - (d - c) * t)
        return np.concatenate([bottom, right, top, left])

    def describe(self) -> Dict[str, list]:
        return {"rectangle": [self.min_re, self.min_im, self.max_re, self.max_im]}


@dataclass(frozen=True)
class Disk:
    """Closed disk |s - center| <= radius."""
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.radius > 0:
            raise DomainError(f"disk radius must be positive, got {self.radius}")

    @property
    def min_re(self) -> float:
        return self.center.real - self.radius

    @property
    def max_re(self) -> float:
        return self.center.real + self.radius

    @property
    def min_im(self) -> float:
        return self.center.imag - self.radius

    @property
    def max_im(self) -> float:
        return self.center.imag + self.radius

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        return np.abs(np.asarray(points, dtype=complex) - self.center) <= self.radius + tol

    def grid(self, size: int = 16) -> np.ndarray:
        """`size` boundary points plus the center."""
        angles = 2.0 * np.pi * np.arange(size) / size
        boundary = self.center + self.radius * np.exp(1j * angles)
        return np.concatenate([boundary, [self.center]])

    def describe(self) -> Dict[str, list]:
        return {"disk": [self.center.real, self.center.imag, self.radius]}


Shape = Union[Rectangle, Disk]


@dataclass(frozen=True)
class CompactSetContext:
    """K together with sigma0 < sigma1 < min Re K, sigma2 > max Re K, tau0, |K| and R."""
    shape: Shape
    sigma_L: float
    sigma0: float
    sigma1: float
    sigma2: float
    tau0: float
    kwidth: float
    rect_R: Rectangle
    grid_size: Optional[int] = None

    @classmethod
    def build(
        cls,
        shape: Shape,
        sigma_L: float,
        sigma0: Optional[float] = None,
        sigma1: Optional[float] = None,
        sigma2: Optional[float] = None,
        grid_size: Optional[int] = None,
    ) -> "CompactSetContext":
        """
        Derive the context of K, validating the abscissa chain.

        Args:
            shape: Rectangle or Disk inside sigma_L < Re s < 1
            sigma_L: Zero-density abscissa of the L-function
            sigma0, sigma1, sigma2: Overrides for the derived abscissae
            grid_size: Evaluation grid density (7 per side / 16 boundary points by default)

        Raises:
            DomainError: If sigma_L < sigma0 < sigma1 < min Re K and max Re K < sigma2 < 1 fails
        """
        a, b = shape.min_re, shape.max_re
        s0 = (sigma_L + a) / 2.0 if sigma0 is None else sigma0
        s1 = (s0 + a) / 2.0 if sigma1 is None else sigma1
        s2 = (b + 1.0) / 2.0 if sigma2 is None else sigma2
        if not (sigma_L < s0 < s1 < a and b < s2 < 1.0):
            raise DomainError(
                "compact set must satisfy sigma_L < sigma0 < sigma1 < min Re K "
                "and max Re K < sigma2 < 1; "
                f"got sigma_L={sigma_L}, sigma0={s0}, sigma1={s1}, "
                f"min Re K={a}, max Re K={b}, sigma2={s2}"
            )
        c, d = shape.min_im, shape.max_im
        rect = Rectangle(complex(s1, c - 0.5), complex(s2, d + 0.5))
        return cls(
            shape=shape,
            sigma_L=sigma_L,
            sigma0=s0,
            sigma1=s1,
            sigma2=s2,
            tau0=(c + d) / 2.0,
            kwidth=d - c,
            rect_R=rect,
            grid_size=grid_size,
        )

    @property
    def min_re(self) -> float:
        return self.shape.min_re

    @property
    def max_re(self) -> float:
        return self.shape.max_re

    def grid_points(self) -> np.ndarray:
        """Fixed evaluation grid on K used for every sup-norm."""
        if self.grid_size is None:
            return self.shape.grid()
        return self.shape.grid(self.grid_size)

    def contains(self, points, tol: float = 1e-12) -> np.ndarray:
        return self.shape.contains(points, tol)

    def exhaustion(self, j: int) -> Rectangle:
        """K_j, an increasing family of closed rectangles whose union is the open R."""
        if j < 1:
            raise DomainError("exhaustion index starts at 1")
        R = self.rect_R
        inset = 0.5 * min(R.max_re - R.min_re, R.max_im - R.min_im) / (j + 1)
        return Rectangle(
            complex(R.min_re + inset, R.min_im + inset),
            complex(R.max_re - inset, R.max_im - inset),
        )

    def metric(
        self,
        f: Callable[[np.ndarray], np.ndarray],
        g: Callable[[np.ndarray], np.ndarray],
        depth: int = 8,
        per_side: int = 12,
    ) -> float:
        """
        d(f, g) = sum_j 2^-j d_j / (1 + d_j), d_j = sup over K_j of |f - g|.

        The sup of a holomorphic difference sits on the boundary, so d_j is
        taken over boundary points of K_j; the sum stops at `depth`
        (remainder at most 2^-depth).
        """
        total = 0.0
        for j in range(1, depth + 1):
            pts = self.exhaustion(j).boundary(per_side)
            dj = float(np.max(np.abs(np.asarray(f(pts)) - np.asarray(g(pts)))))
            total += 2.0 ** (-j) * dj / (1.0 + dj)
        return total

    def describe(self) -> Dict[str, object]:
        info: Dict[str, object] = dict(self.shape.describe())
        info.update(
            {
                "sigma_L": self.sigma_L,
                "sigma0": self.sigma0,
                "sigma1": self.sigma1,
                "sigma2": self.sigma2,
                "tau0": self.tau0,
                "kwidth": self.kwidth,
                "rect_R": [
                    self.rect_R.min_re,
                    self.rect_R.min_im,
                    self.rect_R.max_re,
                    self.rect_R.max_im,
                ],
            }
        )
        return info
