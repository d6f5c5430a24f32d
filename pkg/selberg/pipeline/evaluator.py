# selberg/pipeline/evaluator.py
"""
Evaluation of L(s), log L(s) and the iterated integrals H_m(s).

Routes:
- Dirichlet series (sigma > 1) with an incomplete-gamma tail bound.
- Branch-tracked continuation of log L along the horizontal ray from the right.
- Collapsed integral H_m(s) = 1/(m-1)! int_sigma^inf (a - sigma)^(m-1) H_0(a + it) da:
  adaptive Gauss-Legendre quadrature on [sigma, 3] and the Dirichlet series,
  integrated termwise in closed form, on [3, inf).
- Dirichlet polynomials over n <= y with the approximation-error envelopes.
"""

import cmath
import logging
import math
import threading
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.special import gammaincc

from ..errors import (
    ContinuationFailedError,
    DomainError,
    InadmissiblePointError,
    PoleError,
    PoleRayError,
    QuadratureError,
    UnsupportedRegionError,
    ZeroOnPathError,
)
from ..models.config import EvaluatorSettings
from ..models.lfunction import SelbergLFunction
from ..models.values import ApproxValue
from ..utils.parallel import ordered_map
from ..utils.quadrature import adaptive_gauss, tail_integral
from .arithmetic import von_mangoldt_table

logger = logging.getLogger(__name__)

_local = threading.local()


def mp_context(dps: int) -> "mpmath.MPContext":
    """Thread-local mpmath context at `dps` digits (the global context is shared state)."""
    contexts = getattr(_local, "contexts", None)
    if contexts is None:
        contexts = _local.contexts = {}
    ctx = contexts.get(dps)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.dps = dps
        contexts[dps] = ctx
    return ctx


def _file_based(L: SelbergLFunction, margin: float) -> UnsupportedRegionError:
    return UnsupportedRegionError(
        f"{L.name} is file-based; only sigma > {1.0 + margin} is supported"
    )


class _TrackedRay:
    """
    log L(a + it) along one horizontal line, with a single continuous branch.

    Values at a >= anchor are principal logs (|log L| < pi there); below the
    anchor they are reached by stepping from the nearest point already
    visited, halving the step until |L_new / L_old - 1| < 0.5.
    """

    def __init__(self, evaluator: "HmEvaluator", L: SelbergLFunction, t: float, anchor: float):
        self.evaluator = evaluator
        self.settings = evaluator.settings
        self.L = L
        self.t = t
        self.anchor = anchor
        self.steps = 0
        start = evaluator.eval_L(L, complex(anchor, t))
        self._sigmas: List[float] = [anchor]
        self._values: List[complex] = [start.value]
        self._args: List[float] = [cmath.phase(start.value)]

    def _check_pole(self, alpha: float) -> None:
        if self.L.has_pole_at_one and abs(self.t) < self.settings.pole_radius and alpha <= 1.0:
            raise PoleRayError(f"the ray to {alpha}+{self.t}i crosses the pole at s = 1")

    def log_at(self, alpha: float) -> Tuple[complex, float]:
        """(log L(alpha + it), error bound) on the tracked branch."""
        self._check_pole(alpha)
        if alpha >= self.anchor:
            value = self.evaluator.eval_L(self.L, complex(alpha, self.t))
            log_value = complex(math.log(abs(value.value)), cmath.phase(value.value))
            return log_value, value.err_bound / abs(value.value) + 4e-16 * abs(log_value)
        i = bisect_left(self._sigmas, alpha)
        if i < len(self._sigmas) and self._sigmas[i] == alpha:
            return self._log_from(i), self._node_error
        # walk from the nearest visited point
        candidates = [j for j in (i - 1, i) if 0 <= j < len(self._sigmas)]
        nearest = min(candidates, key=lambda j: abs(self._sigmas[j] - alpha))
        return self._walk(nearest, alpha)

    def _log_from(self, i: int) -> complex:
        return complex(math.log(abs(self._values[i])), self._args[i])

    @property
    def _node_error(self) -> float:
        return 10.0 ** (3 - self.settings.dps) + 1e-15

    def _walk(self, start: int, target: float) -> Tuple[complex, float]:
        settings = self.settings
        sigma = self._sigmas[start]
        current = self._values[start]
        arg = self._args[start]
        h = settings.max_step
        while sigma != target:
            direction = 1.0 if target > sigma else -1.0
            nxt = target if abs(target - sigma) <= h else sigma + direction * h
            value = self.evaluator.eval_L(self.L, complex(nxt, self.t)).value
            self.steps += 1
            if abs(value) < settings.zero_threshold:
                raise ZeroOnPathError(f"|L| = {abs(value):.3g} at {nxt}+{self.t}i")
            ratio = value / current
            if abs(ratio - 1.0) < 0.5 and abs(cmath.phase(ratio)) < math.pi / 2:
                arg += cmath.phase(ratio)
                sigma, current = nxt, value
                k = bisect_left(self._sigmas, sigma)
                self._sigmas.insert(k, sigma)
                self._values.insert(k, value)
                self._args.insert(k, arg)
                h = min(2.0 * h, settings.max_step)
                continue
            h *= 0.5
            if h < settings.min_step:
                if min(abs(current), abs(value)) < settings.zero_proximity:
                    raise ZeroOnPathError(
                        f"zero of {self.L.name} next to the path at {sigma:.8f}+{self.t}i "
                        f"(|L| = {abs(current):.3g})"
                    )
                raise ContinuationFailedError(
                    f"step underflow continuing log {self.L.name} to {target}+{self.t}i "
                    f"at sigma={sigma:.8f}"
                )
            logger.debug(f"Halving step to {h:.3g} at {sigma:.6f}+{self.t}i")
        return complex(math.log(abs(current)), arg), self._node_error


@dataclass
class EnvelopeCalibration:
    """Fitted constant C for the Dirichlet-polynomial error envelope."""
    ys: List[float]
    sup_errors: List[float]
    constants: List[float]
    fitted_constant: float
    sup_constant: float
    sample_size: int
    sigma: float
    sigma3: float
    T: float
    dropped: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def stability_ratio(self) -> float:
        return max(self.constants) / min(self.constants) if min(self.constants) > 0 else math.inf

    def to_dict(self) -> dict:
        return {
            "ys": self.ys,
            "sup_errors": self.sup_errors,
            "constants": self.constants,
            "fitted_constant": self.fitted_constant,
            "sup_constant": self.sup_constant,
            "stability_ratio": self.stability_ratio,
            "sample_size": self.sample_size,
            "dropped": self.dropped,
            "sigma": self.sigma,
            "sigma3": self.sigma3,
            "T": self.T,
        }


class HmEvaluator:
    """
    Evaluates L, log L and H_m for one set of numerical settings.

    Stateless apart from the settings; safe to share across threads.
    """

    def __init__(self, settings: Optional[EvaluatorSettings] = None):
        self.settings = settings or EvaluatorSettings()
        self.logger = logging.getLogger(self.__class__.__name__)

    # L(s)

    def eval_L(self, L: SelbergLFunction, s: complex) -> ApproxValue:
        """
        L(s) for built-ins anywhere off the pole; custom L only for sigma > 1 + delta.

        Raises:
            PoleError: |s - 1| below the pole radius for an L with a pole
            UnsupportedRegionError: custom L with sigma <= 1 + delta
        """
        s = complex(s)
        settings = self.settings
        if L.has_pole_at_one and abs(s - 1.0) < settings.pole_radius:
            raise PoleError(f"{L.name} has a pole at s = 1 (|s - 1| = {abs(s - 1.0):.3g})")
        if L.kind == "custom":
            if s.real <= 1.0 + settings.custom_margin:
                raise _file_based(L, settings.custom_margin)
            log_value = self.eval_Hm_series(L, 0, s, settings.series_terms)
            value = cmath.exp(log_value.value)
            return ApproxValue(value, abs(value) * math.expm1(log_value.err_bound), "series")

        ctx = mp_context(settings.dps)
        point = ctx.mpf(s.real) if s.imag == 0 else ctx.mpc(s.real, s.imag)
        if L.kind == "zeta":
            raw = ctx.zeta(point)
        else:
            chi = L.character
            if abs(s - 1.0) < settings.pole_radius:
                # L(1, chi) = -(1/q) sum chi(a) psi(a/q)
                raw = -ctx.fsum(
                    chi(a) * ctx.digamma(ctx.mpf(a) / chi.modulus)
                    for a in range(1, chi.modulus)
                    if chi(a) != 0
                ) / chi.modulus
            else:
                raw = ctx.dirichlet(point, L.cached("chi-period", chi.period_list))
        value = complex(raw)
        err = max(abs(value), 1.0) * 10.0 ** (3 - settings.dps)
        return ApproxValue(value, err, "continuation")

    # log L(s)

    def tracked_ray(
        self, L: SelbergLFunction, t: float, anchor: Optional[float] = None
    ) -> _TrackedRay:
        anchor = self.settings.split_abscissa if anchor is None else anchor
        if anchor <= 1.0 + self.settings.custom_margin:
            raise DomainError(f"the continuation must start right of 1 + delta, got {anchor}")
        return _TrackedRay(self, L, t, anchor)

    def log_L_tracked(
        self, L: SelbergLFunction, sigma: float, t: float, sigma_start: Optional[float] = None
    ) -> ApproxValue:
        """
        log L(sigma + it) continued along [sigma + it, sigma_start + it].

        Args:
            L: The L-function
            sigma: Target abscissa
            t: Ordinate of the horizontal path
            sigma_start: Anchor abscissa (> 1 + delta), default 1.5

        Raises:
            ZeroOnPathError: The path meets a zero
            PoleRayError: t = 0, sigma <= 1 and L has a pole
            ContinuationFailedError: Step-size underflow away from any zero
        """
        if L.kind == "custom":
            if sigma <= 1.0 + self.settings.custom_margin:
                raise _file_based(L, self.settings.custom_margin)
            series = self.eval_Hm_series(L, 0, complex(sigma, t), self.settings.series_terms)
            return ApproxValue(series.value, series.err_bound, "continuation")
        ray = self.tracked_ray(L, t, sigma_start)
        value, err = ray.log_at(sigma)
        return ApproxValue(value, err, "continuation")

    # H_m(s)

    def eval_Hm_series(self, L: SelbergLFunction, m: int, s: complex, N: int) -> ApproxValue:
        """
        Partial Dirichlet series sum_{n <= N} Lambda(n) / ((log n)^(m+1) n^s) with tail bound.

        The tail uses |Lambda(n)| <= C n^theta log n and the closed-form
        integral of x^(theta - sigma) (log x)^(-m) over [N, inf).

        Raises:
            UnsupportedRegionError: Re s <= 1
        """
        s = complex(s)
        if m < 0:
            raise DomainError(f"m must be nonnegative, got {m}")
        if N < 2:
            raise DomainError(f"N must be at least 2, got {N}")
        if s.real <= 1.0:
            raise UnsupportedRegionError(f"the Dirichlet series needs Re s > 1, got {s}")
        table = von_mangoldt_table(L, N)
        terms = table.values / table.log_n ** (m + 1) * np.exp(-s * table.log_n)
        value = complex(np.sum(terms))
        tail = L.ramanujan_constant * tail_integral(s.real - L.theta, -m, N)
        rounding = 4.0 * np.finfo(float).eps * float(np.sum(np.abs(terms)))
        notes = [] if math.isfinite(tail) else ["tail bound unavailable for sigma <= 1 + theta"]
        return ApproxValue(value, tail + rounding, "series", notes)

    def _termwise_upper(
        self, L: SelbergLFunction, m: int, s: complex, upper: float
    ) -> Tuple[complex, float]:
        """
        1/(m-1)! int_upper^inf (a - sigma)^(m-1) H_0(a + it) da, summed termwise:
        sum Lambda(n) / ((log n)^(m+1) n^s) * Q(m, (upper - sigma) log n).
        """
        sigma = s.real
        N = self.settings.series_terms
        table = von_mangoldt_table(L, N)
        shift = upper - sigma
        weights = gammaincc(m, shift * table.log_n) if shift > 0 else np.ones_like(table.log_n)
        terms = table.values / table.log_n ** (m + 1) * np.exp(-s * table.log_n) * weights
        value = complex(np.sum(terms))
        tail = 0.0
        for j in range(m):
            coeff = shift**j / math.factorial(j) if shift > 0 else (1.0 if j == 0 else 0.0)
            if coeff:
                tail += coeff * tail_integral(upper - L.theta, j - m, N)
        tail *= L.ramanujan_constant
        rounding = 4.0 * np.finfo(float).eps * float(np.sum(np.abs(terms)))
        return value, tail + rounding

    def eval_Hm(self, L: SelbergLFunction, m: int, s: complex) -> ApproxValue:
        """
        H_m(s) anywhere in G_L.

        m = 0 is the tracked log; m >= 1 uses the collapsed integral. File-based
        L-functions fall back to the Dirichlet series (sigma > 1 + delta only).

        Raises:
            ZeroOnPathError, PoleRayError: s is not in G_L
            QuadratureError: The quadrature did not converge
        """
        s = complex(s)
        if m < 0:
            raise DomainError(f"m must be nonnegative, got {m}")
        settings = self.settings
        sigma, t = s.real, s.imag
        if L.kind == "custom":
            if sigma <= 1.0 + settings.custom_margin:
                raise _file_based(L, settings.custom_margin)
            return self.eval_Hm_series(L, m, s, settings.series_terms)
        if L.has_pole_at_one and abs(t) < settings.pole_radius and sigma <= 1.0:
            raise PoleRayError(f"{s} lies on the pole ray (-inf, 1]")
        if m == 0:
            return self.log_L_tracked(L, sigma, t)

        upper = max(sigma, settings.series_abscissa)
        tail_value, tail_err = self._termwise_upper(L, m, s, upper)
        if sigma >= upper:
            return ApproxValue(tail_value, tail_err, "collapsed-integral")

        ray = self.tracked_ray(L, t)
        norm = 1.0 / math.factorial(m - 1)
        node_errors: List[float] = [0.0]

        def integrand(alphas: np.ndarray) -> np.ndarray:
            out = np.empty(alphas.shape, dtype=complex)
            for i in np.argsort(-alphas):
                log_value, err = ray.log_at(float(alphas[i]))
                out[i] = norm * (alphas[i] - sigma) ** (m - 1) * log_value
                node_errors[0] = max(node_errors[0], err)
            return out

        breakpoints = [settings.split_abscissa] if sigma < settings.split_abscissa else []
        quad = adaptive_gauss(
            integrand,
            sigma,
            upper,
            tol=settings.tolerance,
            order=settings.gauss_order,
            max_depth=settings.max_depth,
            breakpoints=breakpoints,
        )
        weight_mass = (upper - sigma) ** m / math.factorial(m)
        err = quad.error + node_errors[0] * weight_mass + tail_err
        self.logger.debug(
            f"H_{m}({s}) via {quad.evaluations} nodes, {ray.steps} continuation steps, "
            f"err {err:.3g}"
        )
        return ApproxValue(quad.value + tail_value, err, "collapsed-integral")

    def try_eval_Hm(self, L: SelbergLFunction, m: int, s: complex) -> Optional[ApproxValue]:
        """eval_Hm, or None when the point is inadmissible or the numerics fail."""
        try:
            return self.eval_Hm(L, m, s)
        except (InadmissiblePointError, ContinuationFailedError, QuadratureError, PoleError) as e:
            self.logger.debug(f"Skipping {s}: {e}")
            return None

    # Dirichlet polynomials

    def dirichlet_poly(self, L: SelbergLFunction, m: int, s: complex, y: float) -> complex:
        """sum_{2 <= n <= y} Lambda(n) / (n^s (log n)^(m+1))."""
        if y < 2:
            raise DomainError(f"y must be at least 2, got {y}")
        table = von_mangoldt_table(L, y)
        s = complex(s)
        return complex(np.sum(table.values / table.log_n ** (m + 1) * np.exp(-s * table.log_n)))

    def calibrate_envelope(
        self,
        L: SelbergLFunction,
        m: int,
        sigma: float,
        taus: Sequence[float],
        ys: Sequence[float],
        sigma3: float,
        T: float,
        threads: int = 1,
    ) -> EnvelopeCalibration:
        """
        Fit C in C y^(sigma3 - sigma) (log T)^3 to the empirical sup error
        of dirichlet_poly against eval_Hm over the admissible shifts `taus`.

        Returns both the log-space least-squares constant and the sup constant
        (the smallest C for which the envelope holds on every y).
        """
        values = ordered_map(lambda tau: self.try_eval_Hm(L, m, complex(sigma, tau)), taus, threads)
        kept = [(tau, v.value) for tau, v in zip(taus, values) if v is not None]
        if not kept:
            raise DomainError("no admissible shift survived evaluation")
        sup_errors, constants = [], []
        for y in ys:
            table = von_mangoldt_table(L, y)
            coeffs = table.values / table.log_n ** (m + 1) * np.exp(-sigma * table.log_n)
            taus_kept = np.array([tau for tau, _ in kept])
            polys = np.exp(-1j * np.outer(taus_kept, table.log_n)) @ coeffs
            sup = float(np.max(np.abs(np.array([v for _, v in kept]) - polys)))
            shape = poly_error_envelope(sigma3, sigma, y, T, 1.0)
            sup_errors.append(sup)
            constants.append(sup / shape)
        fitted = float(np.exp(np.mean(np.log(np.maximum(constants, 1e-300)))))
        calibration = EnvelopeCalibration(
            ys=[float(y) for y in ys],
            sup_errors=sup_errors,
            constants=constants,
            fitted_constant=fitted,
            sup_constant=max(constants),
            sample_size=len(kept),
            sigma=sigma,
            sigma3=sigma3,
            T=T,
            dropped=len(taus) - len(kept),
        )
        self.logger.info(
            f"Envelope calibration for {L.name}, m={m}: C={fitted:.4g} "
            f"(stability ratio {calibration.stability_ratio:.3g}, {len(kept)} shifts)"
        )
        return calibration


def poly_coefficients(
    L: SelbergLFunction, m: int, points: np.ndarray, y: float
) -> Tuple[np.ndarray, np.ndarray]:
    """
    (log n, c) with c[n, j] = Lambda(n) / ((log n)^(m+1) n^(s_j)), so that
    dirichlet_poly at s_j + i tau equals exp(-i tau log n) @ c[:, j].
    """
    if y < 2:
        raise DomainError(f"y must be at least 2, got {y}")
    table = von_mangoldt_table(L, y)
    points = np.asarray(points, dtype=complex).ravel()
    weights = table.values / table.log_n ** (m + 1)
    coeffs = weights[:, None] * np.exp(-np.outer(table.log_n, points))
    return table.log_n, coeffs


def poly_error_envelope(sigma3: float, sigma4: float, y: float, T: float, C: float) -> float:
    """
    C y^(sigma3 - sigma4) (log T)^3.

    Raises:
        DomainError: Unless sigma3 < sigma4 <= 1, y >= 2, T >= y + 3, C > 0
    """
    if not sigma3 < sigma4 <= 1.0:
        raise DomainError(f"need sigma3 < sigma4 <= 1, got {sigma3}, {sigma4}")
    if y < 2 or T < y + 3 or C <= 0:
        raise DomainError(f"need y >= 2, T >= y + 3, C > 0; got y={y}, T={T}, C={C}")
    return C * y ** (sigma3 - sigma4) * math.log(T) ** 3


def sharp_error_envelope(
    sigma: float, sigma_star: float, y: float, t: float, C: float = 1.0
) -> float:
    """
    C log|t| / (sigma' - sigma_*)^2 * y^(sigma' - sigma),
    sigma' = min(sigma_* + 1/log y, (sigma + sigma_*)/2).
    """
    if not sigma_star < sigma:
        raise DomainError(f"need sigma_* < sigma, got {sigma_star}, {sigma}")
    if y < 2 or abs(t) < 2 or C <= 0:
        raise DomainError(f"need y >= 2, |t| >= 2, C > 0; got y={y}, t={t}, C={C}")
    sigma_prime = min(sigma_star + 1.0 / math.log(y), 0.5 * (sigma + sigma_star))
    return C * math.log(abs(t)) / (sigma_prime - sigma_star) ** 2 * y ** (sigma_prime - sigma)


def reference_Y(T: float, sigma0: float, sigma1: float) -> float:
    """(log T)^(4 / (sigma1 - sigma0)); usually astronomically large, hence inf on overflow."""
    if not sigma0 < sigma1 or T <= math.e:
        raise DomainError(f"need sigma0 < sigma1 and T > e, got {sigma0}, {sigma1}, {T}")
    try:
        return math.exp(4.0 / (sigma1 - sigma0) * math.log(math.log(T)))
    except OverflowError:
        return math.inf


# convenience wrappers with default settings


def eval_L(
    L: SelbergLFunction, s: complex, settings: Optional[EvaluatorSettings] = None
) -> ApproxValue:
    return HmEvaluator(settings).eval_L(L, s)


def log_L_tracked(
    L: SelbergLFunction,
    sigma: float,
    t: float,
    sigma_start: Optional[float] = None,
    settings: Optional[EvaluatorSettings] = None,
) -> ApproxValue:
    return HmEvaluator(settings).log_L_tracked(L, sigma, t, sigma_start)


def eval_Hm_series(
    L: SelbergLFunction, m: int, s: complex, N: int, settings: Optional[EvaluatorSettings] = None
) -> ApproxValue:
    return HmEvaluator(settings).eval_Hm_series(L, m, s, N)


def eval_Hm(
    L: SelbergLFunction, m: int, s: complex, settings: Optional[EvaluatorSettings] = None
) -> ApproxValue:
    return HmEvaluator(settings).eval_Hm(L, m, s)


def dirichlet_poly(L: SelbergLFunction, m: int, s: complex, y: float) -> complex:
    return HmEvaluator().dirichlet_poly(L, m, s, y)
