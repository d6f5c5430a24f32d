# selberg/pipeline/smoothing.py
"""
The smooth cutoff phi, its Mellin transform and smoothed truncations of H_m.

phi = 1 on [0, 1], 0 on [2, inf), and on (1, 2)
    phi(x) = h(2 - x) / (h(2 - x) + h(x - 1)),  h(u) = exp(-1/u),
which is the logistic function of 1/(x - 1) - 1/(2 - x).
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from scipy.special import expit

from ..errors import DomainError, PoleError
from ..models.lfunction import SelbergLFunction
from ..models.region import CompactSetContext
from ..models.samples import PhaseAssignment
from ..models.values import ApproxValue
from ..utils.parallel import ordered_map
from ..utils.quadrature import composite_gauss_nodes
from .arithmetic import von_mangoldt_table
from .evaluator import HmEvaluator, mp_context

logger = logging.getLogger(__name__)

MELLIN_DPS = 20
GRID_PANELS = 8
GRID_ORDER = 64


def _transition_logit(x: np.ndarray) -> np.ndarray:
    return 1.0 / (x - 1.0) - 1.0 / (2.0 - x)


def bump(x):
    """
    phi(x) for scalar or array x >= 0.

    Raises:
        DomainError: If any x < 0
    """
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(arr < 0):
        raise DomainError("bump is defined on x >= 0")
    out = np.where(arr <= 1.0, 1.0, 0.0)
    inside = (arr > 1.0) & (arr < 2.0)
    if np.any(inside):
        out[inside] = expit(_transition_logit(arr[inside]))
    return float(out[0]) if np.ndim(x) == 0 else out


def bump_derivative(x):
    """phi'(x) = -phi (1 - phi) (1/(2 - x)^2 + 1/(x - 1)^2) on (1, 2), zero elsewhere."""
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(arr < 0):
        raise DomainError("bump is defined on x >= 0")
    out = np.zeros(arr.shape)
    inside = (arr > 1.0) & (arr < 2.0)
    if np.any(inside):
        xi = arr[inside]
        logit = _transition_logit(xi)
        slope = 1.0 / (2.0 - xi) ** 2 + 1.0 / (xi - 1.0) ** 2
        out[inside] = -expit(logit) * expit(-logit) * slope
    return float(out[0]) if np.ndim(x) == 0 else out


def mellin_hat(s: complex) -> complex:
    """
    phi_hat(s) = int_0^inf phi(x) x^(s-1) dx, continued to Re s > -1.

    Re s > 0: 1/s + int_1^2 phi(x) x^(s-1) dx.
    Re s <= 0: -(1/s) int_1^2 phi'(x) x^s dx (one integration by parts).

    Raises:
        PoleError: |s| < 1e-12 (simple pole with residue phi(0) = 1)
        DomainError: Re s <= -1
    """
    s = complex(s)
    if abs(s) < 1e-12:
        raise PoleError("phi_hat has a pole at s = 0")
    if s.real <= -1.0:
        raise DomainError(f"mellin_hat is only continued to Re s > -1, got {s}")
    ctx = mp_context(MELLIN_DPS)
    z = ctx.mpc(s.real, s.imag)

    def phi(x):
        if x <= 1:
            return ctx.one
        if x >= 2:
            return ctx.zero
        return 1 / (1 + ctx.exp(1 / (2 - x) - 1 / (x - 1)))

    def dphi(x):
        if x <= 1 or x >= 2:
            return ctx.zero
        p = phi(x)
        return -p * (1 - p) * (1 / (2 - x) ** 2 + 1 / (x - 1) ** 2)

    # subdivide so each piece holds a bounded number of oscillations of x^(i t)
    pieces = 2 + int(abs(s.imag) / 8.0)
    nodes = ctx.linspace(1, 2, pieces + 1)
    if s.real > 0:
        value = 1 / z + ctx.quad(lambda x: phi(x) * ctx.power(x, z - 1), nodes)
    else:
        value = -ctx.quad(lambda x: dphi(x) * ctx.power(x, z), nodes) / z
    return complex(value)


def mellin_hat_grid(u: np.ndarray) -> np.ndarray:
    """
    Vectorized phi_hat(u) = -(1/u) int_1^2 phi'(x) x^u dx by a fixed
    composite Gauss-Legendre rule (8 panels of 64 nodes).
    """
    u = np.asarray(u, dtype=complex)
    if np.any(np.abs(u) < 1e-12):
        raise PoleError("phi_hat has a pole at s = 0")
    x, w = composite_gauss_nodes(1.0, 2.0, GRID_PANELS, GRID_ORDER)
    weighted = w * bump_derivative(x)
    log_x = np.log(x)
    flat = u.ravel()
    values = -(np.exp(np.outer(flat, log_x)) @ weighted) / flat
    return values.reshape(u.shape)


def fit_decay_constant(sigma: float, ts: Sequence[float], power: float = 3.0) -> float:
    """sup over ts of |phi_hat(sigma + it)| (1 + |t|)^power."""
    ts = np.asarray(ts, dtype=float)
    values = np.abs(mellin_hat_grid(sigma + 1j * ts))
    return float(np.max(values * (1.0 + np.abs(ts)) ** power))


def _smoothing_terms(
    L: SelbergLFunction,
    m: int,
    X: float,
    phases: Optional[PhaseAssignment],
    lo: Optional[float] = None,
):
    if X < 2:
        raise DomainError(f"X must be at least 2, got {X}")
    table = von_mangoldt_table(L, 2.0 * X)
    weights = bump(table.n / X)
    coeffs = table.values * weights / table.log_n ** (m + 1)
    if phases is not None:
        coeffs = coeffs * phases.phase_of(table.p) ** table.k
    if lo is not None:
        keep = table.n > lo
        return table.log_n[keep], coeffs[keep]
    return table.log_n, coeffs


def smoothed_sum(
    L: SelbergLFunction, m: int, s: complex, X: float, phases: Optional[PhaseAssignment] = None
) -> complex:
    """
    sum_{n <= 2X} Lambda(n) phi(n/X) / (n^s (log n)^(m+1)), optionally twisted by omega(n).

    Raises:
        DomainError: X < 2
        OutOfRangeError: A prime up to 2X is not covered by `phases`
    """
    log_n, coeffs = _smoothing_terms(L, m, X, phases)
    return complex(np.sum(coeffs * np.exp(-complex(s) * log_n)))


def smoothed_grid(
    L: SelbergLFunction,
    m: int,
    points: np.ndarray,
    X: float,
    phases: Optional[PhaseAssignment] = None,
) -> np.ndarray:
    """smoothed_sum at every point of `points`."""
    log_n, coeffs = _smoothing_terms(L, m, X, phases)
    points = np.asarray(points, dtype=complex)
    return (np.exp(-np.outer(points.ravel(), log_n)) @ coeffs).reshape(points.shape)


def transition_remainder(L: SelbergLFunction, m: int, s: complex, X: float) -> complex:
    """Terms X < n <= 2X of smoothed_sum, i.e. smoothed_sum - dirichlet_poly(y = X)."""
    log_n, coeffs = _smoothing_terms(L, m, X, None, lo=math.floor(X))
    return complex(np.sum(coeffs * np.exp(-complex(s) * log_n)))


def mellin_contour_sum(
    L: SelbergLFunction,
    m: int,
    s: complex,
    X: float,
    c: float = 2.0,
    height: float = 200.0,
    panel_length: float = 1.0,
    order: int = 16,
) -> ApproxValue:
    """
    (1/2 pi i) int_{(c)} H_m(s + u) phi_hat(u) X^u du truncated at |Im u| <= height.

    H_m(s + u) is summed over n <= 4X; the terms n > 2X integrate to zero.
    The error bound is the size of the integrand at the cut, an estimate
    rather than a rigorous bound.
    """
    s = complex(s)
    if s.real + c <= 1.0:
        raise DomainError(f"contour Re u = {c} must lie right of 1 - Re s")
    table = von_mangoldt_table(L, 4.0 * X)
    panels = max(1, int(math.ceil(2.0 * height / panel_length)))
    v, w = composite_gauss_nodes(-height, height, panels, order)
    u = c + 1j * v
    coeffs = table.values / table.log_n ** (m + 1) * np.exp(-(s + c) * table.log_n)
    H = np.empty(v.shape, dtype=complex)
    for start in range(0, v.size, 1024):
        chunk = slice(start, start + 1024)
        H[chunk] = np.exp(-1j * np.outer(v[chunk], table.log_n)) @ coeffs
    integrand = H * mellin_hat_grid(u) * np.exp(u * math.log(X))
    value = complex(np.dot(w, integrand)) / (2.0 * math.pi)
    cut = float(np.abs(integrand[0]) + np.abs(integrand[-1])) / (2.0 * math.pi)
    return ApproxValue(value, cut, "smoothed", [f"contour truncated at |Im u| = {height}"])


@dataclass
class SmoothingConvergence:
    """Mean over shifts of sup_K |H_m - H_{m,X}| for each X."""
    Xs: List[float]
    mean_sup_errors: List[float]
    shifts_used: int
    dropped: int = 0
    notes: List[str] = field(default_factory=list)

    def is_nonincreasing(self, slack: float = 1.5) -> bool:
        e = self.mean_sup_errors
        return all(b <= slack * a for a, b in zip(e, e[1:]))

    def to_dict(self) -> dict:
        return {
            "X": self.Xs,
            "mean_sup_error": self.mean_sup_errors,
            "shifts_used": self.shifts_used,
            "dropped": self.dropped,
            "nonincreasing": self.is_nonincreasing(),
        }


def smoothing_convergence(
    L: SelbergLFunction,
    m: int,
    K: CompactSetContext,
    taus: Sequence[float],
    Xs: Sequence[float],
    evaluator: Optional[HmEvaluator] = None,
    threads: int = 1,
) -> SmoothingConvergence:
    """
    sup over the grid of K of |eval_Hm - smoothed_sum| for each X, averaged over
    admissible shifts. Shifts where eval_Hm fails are dropped.
    """
    evaluator = evaluator or HmEvaluator()
    grid = K.grid_points()
    started = time.time()

    def _row(tau: float) -> Optional[np.ndarray]:
        values = []
        for z in grid:
            value = evaluator.try_eval_Hm(L, m, z + 1j * tau)
            if value is None:
                return None
            values.append(value.value)
        return np.array(values)

    rows = ordered_map(_row, list(taus), threads)
    kept = [(tau, row) for tau, row in zip(taus, rows) if row is not None]
    if not kept:
        raise DomainError("no admissible shift survived evaluation")
    errors = []
    for X in Xs:
        sups = [
            float(np.max(np.abs(row - smoothed_grid(L, m, grid + 1j * tau, X))))
            for tau, row in kept
        ]
        errors.append(float(np.mean(sups)))
    result = SmoothingConvergence(
        Xs=[float(X) for X in Xs],
        mean_sup_errors=errors,
        shifts_used=len(kept),
        dropped=len(rows) - len(kept),
    )
    logger.info(
        f"Smoothing convergence for {L.name}, m={m}: {len(kept)} shifts, "
        f"{len(Xs)} cutoffs in {time.time() - started:.1f}s"
    )
    return result
