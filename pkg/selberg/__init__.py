# selberg/__init__.py
"""
Numerical lab for the iterated log-integrals H_m of Selberg-class L-functions.

Primary interfaces:
- HmEvaluator: L(s), branch-tracked log L(s) and H_m(s) with error bounds
- sample_QT / sample_Q: shifted values of H_m against the random model
- witness_search: shifts tau approximating a target on a compact set
- cli.run: batch command-line front end
"""

from .version import __version__

# Data models
from .models import (
    ApproxValue,
    CompactSetContext,
    Disk,
    EvaluatorSettings,
    ExperimentConfig,
    IntervalSet,
    PhaseAssignment,
    Polynomial,
    Rectangle,
    SampleSet,
    SelbergLFunction,
    WitnessReport,
    ZeroSet,
)

# Core computations
from .pipeline import (
    HmEvaluator,
    admissible_shifts,
    eval_Hm,
    eval_L,
    sample_Q,
    sample_QT,
    witness_search,
)

# L-function sources
from .sources import load_zeros, resolve_lfunction, zeta

__all__ = [
    "__version__",
    # Core data models
    "ApproxValue",
    "CompactSetContext",
    "Disk",
    "EvaluatorSettings",
    "ExperimentConfig",
    "IntervalSet",
    "PhaseAssignment",
    "Polynomial",
    "Rectangle",
    "SampleSet",
    "SelbergLFunction",
    "WitnessReport",
    "ZeroSet",

    # Main computations
    "HmEvaluator",
    "admissible_shifts",
    "eval_Hm",
    "eval_L",
    "sample_Q",
    "sample_QT",
    "witness_search",

    # Sources
    "load_zeros",
    "resolve_lfunction",
    "zeta",
]
