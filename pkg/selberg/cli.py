# selberg/cli.py
"""
Batch command-line front end.

    python -m selberg <command> [flags]

Each run validates its flags (and an optional --config JSON file) into an
ExperimentConfig, executes one command, writes the JSON report and CSV rows
when --out / --csv are given and prints a one-line JSON summary on stdout.

Exit codes: 0 success, 1 runtime error, 2 invalid configuration.
"""

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import ValidationError

from .errors import ConfigError, DomainError, EmptySampleError, SelbergLabError
from .models import (
    CompactSetContext,
    Disk,
    EvaluatorSettings,
    ExperimentConfig,
    IntervalSet,
    LogTarget,
    Polynomial,
    Rectangle,
    SelbergLFunction,
    ZeroSet,
    flag_name,
)
from .models.config import COMMANDS
from .pipeline import (
    HmEvaluator,
    ball_frequency,
    check_ramanujan,
    core_shift_set,
    count_zeros_N,
    create_report,
    energy_distance,
    energy_permutation_test,
    exceptional_set,
    load_phases,
    fit_decay_constant,
    mellin_contour_sum,
    mellin_hat,
    moment_check,
    poly_shift_set,
    reference_Y,
    sample_Q,
    sample_QT,
    save_phases,
    sharp_error_envelope,
    smoothed_sum,
    smoothing_convergence,
    torus_equidistribution,
    transition_remainder,
    witness_search,
)
from .pipeline.random_model import PhaseFitter
from .pipeline.sampling import shift_positions
from .pipeline.shifts import shift_window
from .sources import lfunction_slug, resolve_lfunction, zeros_for
from .utils.numbers import parse_floats
from .version import __version__

LOG_LEVEL_ENV = "SELBERG_LOG_LEVEL"
LOG_FORMAT = "%(asctime)s %(levelname)s [%(name)s] %(message)s"
DEFAULT_T = 10_000.0
TORUS_PRIMES = (2, 3, 5, 7, 11, 13)

logger = logging.getLogger(__name__)

# (field, type, help); type None marks a switch
FLAGS: List[Tuple[str, Any, str]] = [
    ("l", str, "L-function: zeta, dirichlet:<d>, dirichlet:<q>:<n> or a coefficient file"),
    ("m", int, "order of the iterated log-integral"),
    ("m_alt", int, "compare: second random-model order measured against the shifts"),
    ("s", str, "evaluation point a+bi"),
    ("points", str, "comma-separated evaluation points"),
    ("disk", str, "compact set cx,cy,r"),
    ("rect", str, "compact set x0,y0,x1,y1"),
    ("target", str, "polynomial target, ascending coefficients"),
    ("log_target", str, "polynomial f without zeros on K; the target is log f (m = 0)"),
    ("tau", str, "shift window lo:hi"),
    ("T", float, "shift window [T, 2T]"),
    ("step", float, "witness scan spacing"),
    ("eps", float, "approximation radius"),
    ("y", str, "Dirichlet polynomial length(s), comma-separated"),
    ("X", str, "smoothing cutoff(s), comma-separated"),
    ("N", int, "terms of the partial Dirichlet series"),
    ("n", int, "sample size"),
    ("prime_bound", int, "largest prime of the random model"),
    ("seed", int, "base seed"),
    ("sweeps", int, "phase-fit sweeps"),
    ("circle_points", int, "phase-fit candidates per prime"),
    ("grid", int, "evaluation grid density on K"),
    ("scheme", str, "shift sampling: equispaced or random"),
    ("method", str, "eval route: collapsed, series or continuation"),
    ("slack", float, "witness prefilter slack"),
    ("permutations", int, "energy permutation test size"),
    ("tolerance", float, "quadrature tolerance"),
    ("sigma", float, "abscissa of the line (poly-check) or of the decay fit (mellin)"),
    ("sigma0", float, "override for sigma0 of K"),
    ("gdh", None, "assume the Grand Density Hypothesis"),
    ("zeros", str, "zero table file"),
    ("threads", int, "worker threads"),
    ("out", str, "JSON report path"),
    ("csv", str, "CSV rows path"),
    ("phases_out", str, "phase file written by fit-phases"),
    ("phases_in", str, "phase file that warm-starts fit-phases"),
    ("log_level", str, "DEBUG, INFO, WARNING or ERROR"),
]


class _ArgumentParser(argparse.ArgumentParser):
    """Raises ConfigError instead of exiting so that run() owns the exit code."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="selberg-lab", description="Numerical lab for iterated log-integrals of L-functions"
    )
    parser.add_argument("--version", action="version", version=f"selberg-lab {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command, allow_abbrev=False, argument_default=argparse.SUPPRESS)
        for name, kind, help_text in FLAGS:
            if kind is None:
                sub.add_argument(flag_name(name), dest=name, action="store_true", help=help_text)
            else:
                sub.add_argument(flag_name(name), dest=name, type=kind, help=help_text)
        sub.add_argument(
            "--config", dest="config_file", help="JSON file of flag values; command-line flags win"
        )
    return parser


def _read_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}", flag="--config") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}: {e.msg}", flag="--config") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a JSON object", flag="--config")
    return {str(key).lstrip("-").replace("-", "_"): value for key, value in data.items()}


def _describe_validation(error: ValidationError) -> Tuple[str, Optional[str]]:
    messages = []
    first_flag = None
    for item in error.errors():
        loc = item.get("loc") or ()
        flag = flag_name(str(loc[0])) if loc else None
        first_flag = first_flag or flag
        messages.append(f"{flag}: {item['msg']}" if flag else item["msg"])
    return "; ".join(messages), first_flag


def build_config(argv: Sequence[str]) -> ExperimentConfig:
    """
    Parse argv into a validated ExperimentConfig.

    Precedence: SELBERG_LOG_LEVEL < --config file < command-line flags.

    Raises:
        ConfigError: Unknown command or flag, unreadable config file or a
            value rejected by validation; the message names the flag
    """
    args = vars(build_parser().parse_args(list(argv)))
    values: Dict[str, Any] = {}
    env_level = os.environ.get(LOG_LEVEL_ENV)
    if env_level:
        values["log_level"] = env_level
    if args.get("config_file"):
        values.update(_read_config_file(args["config_file"]))
    values.update(args)
    try:
        return ExperimentConfig(**values)
    except ValidationError as e:
        message, flag = _describe_validation(e)
        # the flag is already part of each message
        error = ConfigError(message)
        error.flag = flag
        raise error from None


def configure_logging(level: Optional[str] = None) -> None:
    name = (level or os.environ.get(LOG_LEVEL_ENV) or "INFO").upper()
    numeric = getattr(logging, name, None)
    if not isinstance(numeric, int):
        numeric = logging.INFO
    logging.basicConfig(level=numeric, format=LOG_FORMAT, stream=sys.stderr, force=True)


@dataclass
class CommandOutcome:
    """What a command hands to the report exporter."""
    results: Dict[str, Any]
    summary: Dict[str, Any]
    seeds: List[int] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    frame: Optional[pd.DataFrame] = None


# shared setup


def _lfunction(config: ExperimentConfig) -> SelbergLFunction:
    try:
        L = resolve_lfunction(config.l, assume_gdh=config.gdh)
    except DomainError as e:
        if os.path.exists(config.l):
            raise
        raise ConfigError(str(e), flag="--l") from None
    if L.coefficient_bound is not None:
        check_ramanujan(L, max(L.coefficient_bound, 2))
    return L


def _compact_set(config: ExperimentConfig, L: SelbergLFunction) -> CompactSetContext:
    if config.disk is not None:
        cx, cy, r = parse_floats(config.disk, 3)
        shape, flag = Disk(complex(cx, cy), r), "--disk"
    else:
        x0, y0, x1, y1 = parse_floats(config.rect, 4)
        shape, flag = Rectangle(complex(x0, y0), complex(x1, y1)), "--rect"
    try:
        return CompactSetContext.build(
            shape, L.sigma_L, sigma0=config.sigma0, grid_size=config.grid
        )
    except DomainError as e:
        raise ConfigError(str(e), flag=flag) from None


def _points_context(
    config: ExperimentConfig, L: SelbergLFunction, points: List[complex]
) -> CompactSetContext:
    """K from --disk/--rect, or a thin rectangle around the evaluation points."""
    if config.disk is not None or config.rect is not None:
        return _compact_set(config, L)
    re = [z.real for z in points]
    im = [z.imag for z in points]
    pad = 0.01
    shape = Rectangle(complex(min(re) - pad, min(im) - pad), complex(max(re) + pad, max(im) + pad))
    try:
        return CompactSetContext.build(shape, L.sigma_L, sigma0=config.sigma0)
    except DomainError as e:
        message = f"shifted points must lie in sigma_L < Re s < 1 ({e})"
        raise ConfigError(message, flag="--points") from None


def _zeros(config: ExperimentConfig, L: SelbergLFunction, warnings: List[str]) -> ZeroSet:
    Z = zeros_for(lfunction_slug(L), config.zeros)
    if not Z.source:
        warnings.append(f"no zero table for {L.name}; every shift treated as admissible")
    return Z


def _shift_set(
    config: ExperimentConfig, Z: ZeroSet, K: CompactSetContext, L: SelbergLFunction
) -> IntervalSet:
    """I_K(T) for --T, the window minus the same exclusions for --tau."""
    if config.tau is not None:
        lo, hi = config.shift_window()
        return shift_window(Z, K, lo, hi, L.has_pole_at_one)
    return core_shift_set(Z, K, config.T or DEFAULT_T, L.has_pole_at_one)


def _target(config: ExperimentConfig, K: CompactSetContext):
    flag = "--log-target" if config.log_target is not None else "--target"
    try:
        if config.log_target is not None:
            return LogTarget(Polynomial.parse(config.log_target), anchor=K.shape.center)
        return Polynomial.parse(config.target)
    except DomainError as e:
        raise ConfigError(str(e), flag=flag) from None


def _records(frame: pd.DataFrame) -> List[Dict[str, Any]]:
    """DataFrame rows with NaN turned into null."""
    return frame.astype(object).where(frame.notna(), None).to_dict(orient="records")


def _seeds(config: ExperimentConfig) -> List[int]:
    return [config.seed] if config.scheme == "random" else []


def _sample_summary(S) -> Dict[str, Any]:
    return {
        "provenance": S.provenance,
        "size": S.size,
        "dropped": S.dropped,
        "eval_points": S.eval_points,
        "params": S.params,
    }


# commands


def _cmd_eval(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    s = config.eval_point()
    if config.method == "series":
        value = evaluator.eval_Hm_series(L, config.m, s, config.N)
    elif config.method == "continuation":
        if config.m != 0:
            raise ConfigError(
                "the continuation route evaluates log L only; use --m 0", flag="--method"
            )
        value = evaluator.log_L_tracked(L, s.real, s.imag)
    else:
        value = evaluator.eval_Hm(L, config.m, s)
    results = {"lfunction": L.describe(), "m": config.m, "s": s, "H": value.to_dict()}
    summary = {"value": value.value, "err_bound": value.err_bound, "method": value.method}
    return CommandOutcome(results, summary)


def _cmd_poly_check(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    K = _compact_set(config, L)
    warnings: List[str] = []
    Z = _zeros(config, L, warnings)
    T = config.T or DEFAULT_T
    ys = sorted(config.y)
    if T < ys[-1] + 3.0:
        raise ConfigError(f"must be at least y + 3 = {ys[-1] + 3.0}", flag="--T")
    sigma = K.min_re if config.sigma is None else config.sigma
    sigma3 = K.sigma0 if config.sigma is None else 0.5 * (L.sigma_L + sigma)
    shifts = poly_shift_set(Z, K, T, ys[-1], L.has_pole_at_one)
    exceptional, _ = exceptional_set(Z, T, sigma3, ys[-1])
    taus = shift_positions(shifts, config.n, config.scheme, config.seed) + K.tau0
    taus = taus[~exceptional.contains(taus)]
    if taus.size == 0:
        raise EmptySampleError("every sampled shift lies in the exceptional set")
    calibration = evaluator.calibrate_envelope(
        L, config.m, sigma, taus.tolist(), ys, sigma3, T, config.threads
    )
    sharp = [sharp_error_envelope(sigma, sigma3, y, T, calibration.fitted_constant) for y in ys]
    frame = pd.DataFrame(
        {
            "y": calibration.ys,
            "sup_error": calibration.sup_errors,
            "constant": calibration.constants,
            "sharp_envelope": sharp,
        }
    )
    if calibration.dropped:
        warnings.append(f"dropped {calibration.dropped} shifts that could not be evaluated")
    results = {
        "lfunction": L.describe(),
        "m": config.m,
        "compact_set": K.describe(),
        "calibration": calibration.to_dict(),
        "sharp_envelope": sharp,
        "shift_measure": shifts.total_measure,
        "exceptional_measure": exceptional.total_measure,
        "reference_Y": reference_Y(T, K.sigma0, K.sigma1),
    }
    summary = {
        "fitted_constant": calibration.fitted_constant,
        "sup_constant": calibration.sup_constant,
        "stability_ratio": calibration.stability_ratio,
        "shifts": calibration.sample_size,
    }
    return CommandOutcome(results, summary, _seeds(config), warnings, frame)


def _cmd_smooth_check(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    K = _compact_set(config, L)
    warnings: List[str] = []
    Z = _zeros(config, L, warnings)
    shifts = _shift_set(config, Z, K, L)
    taus = shift_positions(shifts, config.n, config.scheme, config.seed)
    Xs = sorted(config.X)
    convergence = smoothing_convergence(
        L, config.m, K, taus.tolist(), Xs, evaluator, config.threads
    )
    if convergence.dropped:
        warnings.append(f"dropped {convergence.dropped} shifts that could not be evaluated")
    results: Dict[str, Any] = {
        "lfunction": L.describe(),
        "m": config.m,
        "compact_set": K.describe(),
        "convergence": convergence.to_dict(),
    }
    if config.s is not None:
        s, X = config.eval_point(), Xs[0]
        contour = mellin_contour_sum(L, config.m, s, X)
        direct = smoothed_sum(L, config.m, s, X)
        results["contour_check"] = {
            "s": s,
            "X": X,
            "smoothed_sum": direct,
            "contour": contour.to_dict(),
            "difference": abs(contour.value - direct),
            "transition_remainder": transition_remainder(L, config.m, s, X),
        }
    errors = convergence.mean_sup_errors
    summary = {
        "nonincreasing": convergence.is_nonincreasing(),
        "initial_error": errors[0],
        "final_error": errors[-1],
        "shifts": convergence.shifts_used,
    }
    frame = pd.DataFrame({"X": convergence.Xs, "mean_sup_error": errors})
    return CommandOutcome(results, summary, _seeds(config), warnings, frame)


def _cmd_sample_q(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    S = _model_sample(config, L)
    moments = moment_check(S, L, config.m, config.prime_bound)
    results = {
        "lfunction": L.describe(),
        "m": config.m,
        "sample": _sample_summary(S),
        "moments": _records(moments),
    }
    summary = {"size": S.size, "max_mean_z": float(moments["mean_z"].max())}
    return CommandOutcome(results, summary, [config.seed], [], S.to_frame())


def _model_sample(config: ExperimentConfig, L: SelbergLFunction, m: Optional[int] = None):
    return sample_Q(
        L,
        config.m if m is None else m,
        config.point_list(),
        config.n,
        config.seed,
        config.prime_bound,
        threads=config.threads,
    )


def _sample_shifted(
    config: ExperimentConfig, evaluator: HmEvaluator, L: SelbergLFunction, warnings: List[str]
):
    points = config.point_list()
    K = _points_context(config, L, points)
    Z = _zeros(config, L, warnings)
    shifts = _shift_set(config, Z, K, L)
    S = sample_QT(
        L, config.m, points, shifts, config.n, config.scheme, config.seed, evaluator, config.threads
    )
    if S.dropped:
        warnings.append(f"dropped {S.dropped} shifts that could not be evaluated")
    return S, K


def _cmd_sample_qt(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    warnings: List[str] = []
    S, _ = _sample_shifted(config, evaluator, L, warnings)
    torus = torus_equidistribution(list(TORUS_PRIMES), S.labels)
    results = {
        "lfunction": L.describe(),
        "m": config.m,
        "sample": _sample_summary(S),
        "moments": _records(S.moments()),
        "torus_moments": _records(torus),
    }
    summary = {
        "size": S.size,
        "dropped": S.dropped,
        "max_torus_moment": float(torus["modulus"].max()),
    }
    return CommandOutcome(results, summary, _seeds(config), warnings, S.to_frame())


def _cmd_compare(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    warnings: List[str] = []
    shifted, K = _sample_shifted(config, evaluator, L, warnings)
    model = _model_sample(config, L)
    distance = energy_distance(shifted, model)
    test = energy_permutation_test(shifted, model, config.permutations, config.seed)
    results: Dict[str, Any] = {
        "lfunction": L.describe(),
        "m": config.m,
        "energy_distance": distance,
        "permutation_test": test.to_dict(),
        "shifted": {"sample": _sample_summary(shifted), "moments": _records(shifted.moments())},
        "random_model": {
            "sample": _sample_summary(model),
            "moments": _records(moment_check(model, L, config.m, config.prime_bound)),
        },
    }
    summary: Dict[str, Any] = {"energy_distance": distance, "p_value": test.p_value}
    samples = [
        shifted.to_frame().assign(sample="shifted"),
        model.to_frame().assign(sample="random_model"),
    ]
    if config.m_alt is not None:
        alternative = _model_sample(config, L, config.m_alt)
        alt_distance = energy_distance(shifted, alternative)
        alt_test = energy_permutation_test(shifted, alternative, config.permutations, config.seed)
        results["alternative"] = {
            "m": config.m_alt,
            "energy_distance": alt_distance,
            "permutation_test": alt_test.to_dict(),
            "sample": _sample_summary(alternative),
        }
        summary["energy_distance_alt"] = alt_distance
        summary["p_value_alt"] = alt_test.p_value
        summary["closer_to_own_order"] = distance < alt_distance
        samples.append(alternative.to_frame().assign(sample="random_model_alt"))
    if config.target is not None:
        P = _target(config, K)
        frequencies = {
            "shifted": ball_frequency(shifted, P, K, config.eps),
            "random_model": ball_frequency(model, P, K, config.eps),
        }
        results["ball_frequency"] = frequencies
        summary["ball_frequency"] = frequencies
    frame = pd.concat(samples, ignore_index=True)
    return CommandOutcome(results, summary, [config.seed], warnings, frame)


def _cmd_fit_phases(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    K = _compact_set(config, L)
    target = _target(config, K)
    initial = None
    if config.phases_in:
        try:
            initial = load_phases(config.phases_in)
        except OSError as e:
            message = f"cannot read {config.phases_in}: {e.strerror}"
            raise ConfigError(message, flag="--phases-in") from None
    fitter = PhaseFitter(L, config.m, K, config.prime_bound, config.circle_points)
    fit = fitter.fit(target, config.sweeps, initial)
    if config.phases_out:
        save_phases(fit.assignment, config.phases_out)
    results = {
        "lfunction": L.describe(),
        "m": config.m,
        "compact_set": K.describe(),
        "target": target.describe(),
        "fit": fit.to_dict(),
    }
    summary = {
        "sup_error": fit.error,
        "baseline_error": fit.baseline_error,
        "start_error": fit.start_error,
        "metric_d": fit.metric,
    }
    frame = pd.DataFrame(
        {
            "p": fit.assignment.primes,
            "phase_re": fit.assignment.phases.real,
            "phase_im": fit.assignment.phases.imag,
        }
    )
    return CommandOutcome(results, summary, [], [], frame)


def _cmd_witness(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    if len(config.y) > 1:
        raise ConfigError("witness takes a single prefilter length", flag="--y")
    L = _lfunction(config)
    K = _compact_set(config, L)
    target = _target(config, K)
    warnings: List[str] = []
    Z = _zeros(config, L, warnings)
    shifts = _shift_set(config, Z, K, L)
    report = witness_search(
        L,
        config.m,
        target,
        K,
        shifts,
        config.step,
        config.eps,
        config.y[0],
        config.slack,
        evaluator,
        config.threads,
    )
    if report.failed:
        warnings.append(f"{report.failed} candidate shifts could not be evaluated")
    results = report.to_dict()
    results["lfunction"] = L.describe()
    results["m"] = config.m
    results["shift_hull"] = list(shifts.hull)
    frame = pd.DataFrame(
        [hit.to_dict() for hit in report.hits],
        columns=["tau", "sup_error", "err_bound", "exp_sup_error"],
    )
    return CommandOutcome(results, report.summary(), [], warnings, frame)


def _cmd_zeros_report(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    L = _lfunction(config)
    K = _compact_set(config, L)
    warnings: List[str] = []
    Z = _zeros(config, L, warnings)
    T = config.T or DEFAULT_T
    y = max(config.y)
    pole = L.has_pole_at_one
    core = core_shift_set(Z, K, T, pole)
    poly = poly_shift_set(Z, K, T, y, pole)
    exceptional, _ = exceptional_set(Z, T, K.sigma0, y)

    def _describe(shifts: IntervalSet, length: float) -> Dict[str, Any]:
        return {
            "intervals": shifts.to_list(),
            "measure": shifts.total_measure,
            "excluded_measure": shifts.excluded_measure,
            "ratio": shifts.total_measure / length,
        }

    results = {
        "lfunction": L.describe(),
        "compact_set": K.describe(),
        "T": T,
        "y": y,
        "zeros": {
            "source": Z.source,
            "count": len(Z),
            "rh_verified": Z.rh_verified,
            "beyond_sigma0": count_zeros_N(Z, K.sigma0, 3.0 * T),
        },
        "core_shifts": _describe(core, T),
        "poly_shifts": _describe(poly, T),
        "exceptional_set": _describe(exceptional, 2.0 * T),
        "reference_Y": reference_Y(T, K.sigma0, K.sigma1),
    }
    summary = {
        "core_ratio": core.total_measure / T,
        "poly_ratio": poly.total_measure / T,
        "zeros": len(Z),
    }
    frame = pd.DataFrame(core.to_list(), columns=["lo", "hi"])
    return CommandOutcome(results, summary, [], warnings, frame)


def _cmd_mellin(config: ExperimentConfig, evaluator: HmEvaluator) -> CommandOutcome:
    residue_point = 1e-3
    residue = residue_point * mellin_hat(residue_point)
    sigma = -0.25 if config.sigma is None else config.sigma
    short = fit_decay_constant(sigma, np.linspace(1.0, 100.0, 100))
    long = fit_decay_constant(sigma, np.linspace(1.0, 200.0, 200))
    results: Dict[str, Any] = {
        "residue_check": {"s": residue_point, "s_times_phi_hat": residue},
        "decay": {"sigma": sigma, "power": 3.0, "constant_t100": short, "constant_t200": long},
    }
    summary: Dict[str, Any] = {"residue": residue, "decay_constant": long}
    if config.s is not None:
        s = config.eval_point()
        value = mellin_hat(s)
        results["value"] = {"s": s, "phi_hat": value}
        summary["phi_hat"] = value
    return CommandOutcome(results, summary)


COMMAND_HANDLERS: Dict[str, Callable[[ExperimentConfig, HmEvaluator], CommandOutcome]] = {
    "eval": _cmd_eval,
    "poly-check": _cmd_poly_check,
    "smooth-check": _cmd_smooth_check,
    "sample-q": _cmd_sample_q,
    "sample-qt": _cmd_sample_qt,
    "compare": _cmd_compare,
    "fit-phases": _cmd_fit_phases,
    "witness": _cmd_witness,
    "zeros-report": _cmd_zeros_report,
    "mellin": _cmd_mellin,
}


def execute(config: ExperimentConfig) -> Dict[str, Any]:
    """Run one validated experiment and return its report."""
    started = time.time()
    evaluator = HmEvaluator(EvaluatorSettings().with_tolerance(config.tolerance))
    logger.info(f"Running {config.command} (config {config.config_hash()[:12]})")
    outcome = COMMAND_HANDLERS[config.command](config, evaluator)
    for message in outcome.warnings:
        logger.warning(message)
    report = create_report(
        config,
        outcome.results,
        output_path=config.out,
        seeds=outcome.seeds,
        warnings=outcome.warnings,
        summary=outcome.summary,
        frame=outcome.frame,
        csv_path=config.csv,
    )
    logger.info(f"Finished {config.command} in {time.time() - started:.1f}s")
    return report


def _emit(line: Dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(line, sort_keys=True) + "\n")
    sys.stdout.flush()


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point.

    Returns:
        0 on success, 1 on a runtime error, 2 on a configuration error
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    configure_logging()
    command = next((arg for arg in argv if arg in COMMANDS), None)
    try:
        config = build_config(argv)
        configure_logging(config.log_level)
        report = execute(config)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        _emit(
            {"command": command, "status": "error", "exit_code": 2, "error": str(e), "flag": e.flag}
        )
        return 2
    except (SelbergLabError, OSError, ValueError) as e:
        logger.error(f"{command} failed: {e}")
        _emit({"command": command, "status": "error", "exit_code": 1, "error": str(e)})
        return 1
    line = {
        "command": report["command"],
        "status": "ok",
        "version": report["version"],
        "config_hash": report["config_hash"],
        "summary": report["summary"],
    }
    if "written" in report:
        line["written"] = report["written"]
    _emit(line)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
