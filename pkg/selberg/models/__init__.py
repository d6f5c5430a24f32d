# selberg/models/__init__.py
"""
Data models for the lab.
"""

from .character import DirichletCharacter
from .config import EvaluatorSettings, ExperimentConfig, flag_name
from .lfunction import PrimeTable, SelbergLFunction, density_abscissa
from .measure import IntervalSet, WitnessHit, WitnessReport, ZeroSet, hit_neighborhood_measure
from .region import CompactSetContext, Disk, Rectangle
from .samples import PhaseAssignment, SampleSet
from .targets import GridTarget, LogTarget, Polynomial
from .values import ApproxValue

__all__ = [
    "ApproxValue",
    "CompactSetContext",
    "DirichletCharacter",
    "Disk",
    "EvaluatorSettings",
    "ExperimentConfig",
    "flag_name",
    "density_abscissa",
    "GridTarget",
    "hit_neighborhood_measure",
    "IntervalSet",
    "LogTarget",
    "PhaseAssignment",
    "Polynomial",
    "PrimeTable",
    "Rectangle",
    "SampleSet",
    "SelbergLFunction",
    "WitnessHit",
    "WitnessReport",
    "ZeroSet",
]
