# selberg/sources/coefficient_file.py
"""
Custom L-functions from a coefficient file.

Format (UTF-8): one record `p k re_b im_b` per line; lines starting with `#`
carry metadata `key=value` (degree, theta, pole=0|1, sigma_L, name, C).
Coefficients not listed are zero, so the Euler product is finite beyond the
largest listed prime.
"""

import logging
from pathlib import Path
from typing import Dict, Tuple

import numpy as np

from ..errors import CoefficientFileError
from ..models.lfunction import SelbergLFunction, density_abscissa
from ..utils.primes import is_prime

logger = logging.getLogger(__name__)

_META_KEYS = {"degree", "theta", "pole", "sigma_L", "name", "C"}


def parse_coefficient_file(path: str) -> Tuple[Dict[str, str], Dict[Tuple[int, int], complex]]:
    """Parse metadata and the b(p^k) table, reporting errors with their line number."""
    meta: Dict[str, str] = {}
    table: Dict[Tuple[int, int], complex] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                for token in line[1:].split():
                    if "=" not in token:
                        continue
                    key, value = token.split("=", 1)
                    if key not in _META_KEYS:
                        raise CoefficientFileError(path, lineno, f"unknown metadata key {key!r}")
                    meta[key] = value
                continue
            fields = line.split()
            if len(fields) != 4:
                raise CoefficientFileError(path, lineno, f"expected 'p k re im', got {line!r}")
            try:
                p, k = int(fields[0]), int(fields[1])
                value = complex(float(fields[2]), float(fields[3]))
            except ValueError:
                raise CoefficientFileError(path, lineno, f"malformed record {line!r}") from None
            if k < 1 or not is_prime(p):
                raise CoefficientFileError(
                    path, lineno, f"{p}^{k} is not a prime power with k >= 1"
                )
            if (p, k) in table:
                raise CoefficientFileError(path, lineno, f"duplicate record for {p}^{k}")
            table[(p, k)] = value
    return meta, table


def load_coefficient_file(path: str, assume_gdh: bool = False) -> SelbergLFunction:
    """
    Build a custom SelbergLFunction from a coefficient file.

    Args:
        path: File in the `p k re_b im_b` format
        assume_gdh: Default sigma_L to 1/2 when the file does not set it

    Returns:
        SelbergLFunction of kind "custom"
    """
    meta, table = parse_coefficient_file(path)
    if not table:
        raise CoefficientFileError(path, 0, "no coefficient records")
    try:
        degree = float(meta.get("degree", "1"))
        theta = float(meta.get("theta", "0"))
        pole = meta.get("pole", "0") == "1"
        if "sigma_L" in meta:
            sigma_L = float(meta["sigma_L"])
        else:
            sigma_L = density_abscissa(degree, assume_gdh)
        constant = float(meta.get("C", "1"))
    except ValueError as e:
        raise CoefficientFileError(path, 0, f"bad metadata: {e}") from None

    by_power: Dict[int, Dict[int, complex]] = {}
    for (p, k), value in table.items():
        by_power.setdefault(k, {})[p] = value

    def b_coeff(primes: np.ndarray, k: int) -> np.ndarray:
        lookup = by_power.get(k, {})
        values = [lookup.get(int(p), 0j) for p in np.ravel(primes)]
        return np.array(values, dtype=complex).reshape(np.shape(primes))

    bound = max(p for p, _ in table)
    name = meta.get("name", Path(path).stem)
    logger.info(f"Loaded {len(table)} coefficients for {name} from {path} (primes <= {bound})")
    return SelbergLFunction(
        name=name,
        degree=degree,
        has_pole_at_one=pole,
        theta=theta,
        b_coeff=b_coeff,
        sigma_L=sigma_L,
        ramanujan_constant=constant,
        kind="custom",
        coefficient_bound=bound,
    )
