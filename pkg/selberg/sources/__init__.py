"""
Sources of L-function data: built-in instances, characters, coefficient files, zero tables.
"""

from .builtin import dirichlet_l, lfunction_slug, resolve_lfunction, zeta
from .characters import conrey_character, kronecker_character, kronecker_symbol
from .coefficient_file import load_coefficient_file, parse_coefficient_file
from .zeros import ZERO_DIR_ENV, load_zeros, zeros_for

__all__ = [
    "conrey_character",
    "dirichlet_l",
    "kronecker_character",
    "kronecker_symbol",
    "lfunction_slug",
    "load_coefficient_file",
    "load_zeros",
    "parse_coefficient_file",
    "resolve_lfunction",
    "ZERO_DIR_ENV",
    "zeros_for",
    "zeta",
]
