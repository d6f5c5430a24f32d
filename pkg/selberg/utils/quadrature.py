# selberg/utils/quadrature.py
"""
Quadrature helpers.

adaptive_gauss is recursive bisection with a Gauss-Legendre rule on each
panel: a panel is accepted when the rule on the whole panel and the rule on
its two halves agree to the panel's share of the tolerance. The integrand is
vectorized (it receives all nodes of a panel at once) and complex-valued.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, Tuple

import mpmath
import numpy as np

from ..errors import QuadratureError


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    evaluations: int
    panels: int


@lru_cache(maxsize=16)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1] (read-only, cached)."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, order: int) -> complex:
    nodes, weights = gauss_legendre(order)
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * nodes
    return complex(half * np.dot(weights, f(x)))


def composite_gauss_nodes(
    a: float, b: float, panels: int, order: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of a composite rule with equal panels on [a, b]."""
    nodes, weights = gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def adaptive_gauss(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    tol: float = 1e-9,
    order: int = 10,
    max_depth: int = 14,
    breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """
    Integrate a complex-valued vectorized function over [a, b].

    Args:
        f: Callable taking an array of nodes, returning an array of values
        a: Lower bound
        b: Upper bound
        tol: Absolute tolerance for the whole interval
        order: Gauss-Legendre order per panel
        max_depth: Bisection depth limit
        breakpoints: Interior points where panels must start

    Returns:
        QuadratureResult with the estimate and the summed panel errors

    Raises:
        QuadratureError: If a panel cannot be resolved within max_depth
    """
    if a == b:
        return QuadratureResult(0j, 0.0, 0, 0)
    if a > b:
        flipped = adaptive_gauss(f, b, a, tol, order, max_depth, breakpoints)
        return QuadratureResult(-flipped.value, flipped.error, flipped.evaluations, flipped.panels)

    edges = [a] + sorted(x for x in breakpoints if a < x < b) + [b]
    length = b - a
    counters = {"evals": 0, "panels": 0}

    def _panel(lo: float, hi: float) -> complex:
        counters["evals"] += order
        return gauss_panel(f, lo, hi, order)

    def _adaptive(
        lo: float, hi: float, whole: complex, share: float, depth: int
    ) -> Tuple[complex, float]:
        mid = 0.5 * (lo + hi)
        left = _panel(lo, mid)
        right = _panel(mid, hi)
        halves = left + right
        error = abs(halves - whole)
        if error <= share:
            counters["panels"] += 2
            return halves, error
        if depth >= max_depth:
            raise QuadratureError(
                f"no convergence on [{lo:.6g}, {hi:.6g}] after {depth} bisections "
                f"(error {error:.3g})"
            )
        lv, le = _adaptive(lo, mid, left, 0.5 * share, depth + 1)
        rv, re = _adaptive(mid, hi, right, 0.5 * share, depth + 1)
        return lv + rv, le + re

    total, total_error = 0j, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        share = tol * (hi - lo) / length
        value, error = _adaptive(lo, hi, _panel(lo, hi), share, 0)
        total += value
        total_error += error
    return QuadratureResult(total, total_error, counters["evals"], counters["panels"])


def tail_integral(a: float, q: float, lower: float) -> float:
    """
    Closed form of the integral of x^(-a) (log x)^q over [lower, inf).

    With x = e^v this is (a-1)^(-q-1) * Gamma(q+1, (a-1) log lower), which
    majorizes sum_{n > lower} n^(-a) (log n)^q whenever the summand is
    decreasing beyond `lower`. Returns inf for a <= 1.
    """
    if a <= 1.0:
        return math.inf
    if lower <= 1.0:
        raise ValueError("tail_integral needs lower > 1")
    rate = a - 1.0
    value = mpmath.power(rate, -q - 1) * mpmath.gammainc(q + 1, rate * math.log(lower))
    return float(value)
