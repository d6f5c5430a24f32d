# selberg/sources/builtin.py
"""
Built-in L-functions: the Riemann zeta function and primitive Dirichlet L-functions.
"""

import logging
import os
from typing import Optional

import numpy as np

from ..errors import DomainError
from ..models.character import DirichletCharacter
from ..models.lfunction import SelbergLFunction, density_abscissa
from .characters import conrey_character, kronecker_character
from .coefficient_file import load_coefficient_file

logger = logging.getLogger(__name__)


def zeta() -> SelbergLFunction:
    """zeta(s): b(p^k) = 1/k, degree 1, pole at s = 1, sigma_L = 1/2."""

    def b_coeff(primes: np.ndarray, k: int) -> np.ndarray:
        return np.full(np.shape(primes), 1.0 / k, dtype=complex)

    return SelbergLFunction(
        name="zeta",
        degree=1.0,
        has_pole_at_one=True,
        theta=0.0,
        b_coeff=b_coeff,
        sigma_L=0.5,
        kappa_hint=1.0,
        kind="zeta",
        functional_equation={"Q": 1 / np.sqrt(np.pi), "lambda": [0.5], "mu": [0.0], "omega": 1},
    )


def dirichlet_l(chi: DirichletCharacter, assume_gdh: bool = False) -> SelbergLFunction:
    """
    L(s, chi) for a primitive non-principal character: b(p^k) = chi(p)^k / k.

    Raises:
        DomainError: If chi is principal or imprimitive
    """
    if chi.is_principal:
        raise DomainError(f"character {chi.label} is principal")
    if not chi.is_primitive:
        raise DomainError(f"character {chi.label} is not primitive (conductor {chi.conductor})")

    def b_coeff(primes: np.ndarray, k: int) -> np.ndarray:
        return chi.power_values(primes, k) / k

    odd = chi(chi.modulus - 1) == -1
    return SelbergLFunction(
        name=f"dirichlet:{chi.label}",
        degree=1.0,
        has_pole_at_one=False,
        theta=0.0,
        b_coeff=b_coeff,
        sigma_L=density_abscissa(1.0, assume_gdh),
        kappa_hint=1.0,
        kind="dirichlet",
        character=chi,
        functional_equation={
            "Q": float(np.sqrt(chi.modulus / np.pi)),
            "lambda": [0.5],
            "mu": [0.5 if odd else 0.0],
        },
    )


def resolve_lfunction(name: str, assume_gdh: bool = False) -> SelbergLFunction:
    """
    Resolve a command-line name to an instance.

    Accepted forms: `zeta`, `dirichlet:<d>` (Kronecker symbol of a fundamental
    discriminant), `dirichlet:<q>:<n>` (Conrey label), or a coefficient-file path.
    """
    if name == "zeta":
        return zeta()
    if name.startswith("dirichlet:"):
        fields = name.split(":")[1:]
        try:
            numbers = [int(f) for f in fields]
        except ValueError:
            raise DomainError(f"malformed Dirichlet name {name!r}") from None
        if len(numbers) == 1:
            return dirichlet_l(kronecker_character(numbers[0]), assume_gdh)
        if len(numbers) == 2:
            return dirichlet_l(conrey_character(numbers[0], numbers[1]), assume_gdh)
        raise DomainError(f"malformed Dirichlet name {name!r}")
    if os.path.exists(name):
        return load_coefficient_file(name, assume_gdh=assume_gdh)
    raise DomainError(f"unknown L-function {name!r} (not a built-in name or an existing file)")


def lfunction_slug(L: SelbergLFunction) -> Optional[str]:
    """File stem used to look up zero tables: `zeta`, `dirichlet_5.2`, ..."""
    return L.name.replace(":", "_").replace("(", "").replace(")", "")
