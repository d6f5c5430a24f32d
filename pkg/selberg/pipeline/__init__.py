# selberg/pipeline/__init__.py
"""
Computations: arithmetic, evaluation, smoothing, the random model, shift sets,
sampling, witness search and report export.
"""

from .arithmetic import (
    RamanujanWarning,
    check_ramanujan,
    default_sigma_L,
    dirichlet_coefficient,
    prime_mean_square,
    primes_up_to,
    von_mangoldt,
    von_mangoldt_table,
)
from .evaluator import (
    EnvelopeCalibration,
    HmEvaluator,
    dirichlet_poly,
    eval_Hm,
    eval_Hm_series,
    eval_L,
    log_L_tracked,
    poly_error_envelope,
    reference_Y,
    sharp_error_envelope,
)
from .exporter import ReportExporter, create_report
from .random_model import (
    PhaseFitter,
    analytic_second_moment,
    eval_random_Hm,
    load_phases,
    local_factor_g,
    omega_at,
    phase_fit,
    sample_phases,
    save_phases,
)
from .sampling import (
    ball_frequency,
    energy_distance,
    energy_permutation_test,
    moment_check,
    sample_Q,
    sample_QT,
    torus_equidistribution,
)
from .shifts import (
    admissible_shifts,
    core_shift_set,
    count_zeros_N,
    exceptional_set,
    poly_shift_set,
)
from .smoothing import (
    bump,
    bump_derivative,
    fit_decay_constant,
    mellin_contour_sum,
    mellin_hat,
    mellin_hat_grid,
    smoothed_sum,
    smoothing_convergence,
    transition_remainder,
)
from .witness import WitnessSearcher, plant_target, witness_search

__all__ = [
    "admissible_shifts",
    "analytic_second_moment",
    "ball_frequency",
    "bump",
    "bump_derivative",
    "check_ramanujan",
    "core_shift_set",
    "count_zeros_N",
    "create_report",
    "default_sigma_L",
    "dirichlet_coefficient",
    "dirichlet_poly",
    "energy_distance",
    "energy_permutation_test",
    "EnvelopeCalibration",
    "eval_Hm",
    "eval_Hm_series",
    "eval_L",
    "eval_random_Hm",
    "exceptional_set",
    "fit_decay_constant",
    "HmEvaluator",
    "load_phases",
    "local_factor_g",
    "log_L_tracked",
    "mellin_contour_sum",
    "mellin_hat",
    "mellin_hat_grid",
    "moment_check",
    "omega_at",
    "phase_fit",
    "PhaseFitter",
    "plant_target",
    "poly_error_envelope",
    "poly_shift_set",
    "prime_mean_square",
    "primes_up_to",
    "RamanujanWarning",
    "reference_Y",
    "ReportExporter",
    "sample_phases",
    "sample_Q",
    "sample_QT",
    "save_phases",
    "sharp_error_envelope",
    "smoothed_sum",
    "smoothing_convergence",
    "torus_equidistribution",
    "transition_remainder",
    "von_mangoldt",
    "von_mangoldt_table",
    "witness_search",
    "WitnessSearcher",
]
