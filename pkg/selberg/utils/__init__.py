"""
Utility functions for the lab.
"""

from .numbers import format_complex, parse_complex, parse_complex_list, parse_floats, parse_range
from .parallel import ordered_map
from .primes import (
    cached_primes,
    factorize,
    is_prime,
    prime_power,
    segmented_primes,
    sieve_primes,
)
from .quadrature import (
    QuadratureResult,
    adaptive_gauss,
    composite_gauss_nodes,
    gauss_legendre,
    tail_integral,
)

__all__ = [
    "adaptive_gauss",
    "cached_primes",
    "composite_gauss_nodes",
    "factorize",
    "format_complex",
    "gauss_legendre",
    "is_prime",
    "ordered_map",
    "parse_complex",
    "parse_complex_list",
    "parse_floats",
    "parse_range",
    "prime_power",
    "QuadratureResult",
    "segmented_primes",
    "sieve_primes",
    "tail_integral",
]
