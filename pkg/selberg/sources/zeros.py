# selberg/sources/zeros.py
"""
Zero-table ingestion.

Mode A: one ordinate per line (beta = 1/2 implied).
Mode B: `beta gamma` per line.
Lines starting with `#` and blank lines are ignored; modes cannot be mixed.
"""

import logging
import os
from pathlib import Path
from typing import List, Optional

import numpy as np

from ..errors import DomainError, ZeroFileError
from ..models.measure import ZeroSet

ZERO_DIR_ENV = "SELBERG_ZERO_DIR"

logger = logging.getLogger(__name__)


def load_zeros(path: str) -> ZeroSet:
    """
    Parse and validate a zero table.

    Raises:
        ZeroFileError: On a malformed line, mixed modes, beta outside (0, 1)
            or non-ascending ordinates; the message carries the line number
    """
    betas: List[float] = []
    gammas: List[float] = []
    mode: Optional[int] = None
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) not in (1, 2):
                raise ZeroFileError(path, lineno, f"expected 'gamma' or 'beta gamma', got {line!r}")
            if mode is None:
                mode = len(fields)
            elif len(fields) != mode:
                raise ZeroFileError(path, lineno, "ordinate-only and 'beta gamma' lines are mixed")
            try:
                values = [float(f) for f in fields]
            except ValueError:
                raise ZeroFileError(path, lineno, f"not a number: {line!r}") from None
            beta, gamma = (0.5, values[0]) if mode == 1 else (values[0], values[1])
            if not 0.0 < beta < 1.0:
                raise ZeroFileError(path, lineno, f"beta={beta} is outside (0, 1)")
            if gammas and gamma <= gammas[-1]:
                raise ZeroFileError(path, lineno, f"ordinate {gamma} does not exceed {gammas[-1]}")
            betas.append(beta)
            gammas.append(gamma)
    logger.info(f"Loaded {len(gammas)} zeros from {path}")
    return ZeroSet(np.array(betas), np.array(gammas), source=str(path))


def zero_directory() -> Optional[Path]:
    value = os.environ.get(ZERO_DIR_ENV)
    return Path(value) if value else None


def zeros_for(slug: str, path: Optional[str] = None) -> ZeroSet:
    """
    Zero table for an L-function.

    An explicit path wins; otherwise `<slug>.txt` is looked up in the directory
    named by SELBERG_ZERO_DIR. A missing table yields an empty ZeroSet (no
    exclusions) and a warning.
    """
    if path is not None:
        if not os.path.exists(path):
            raise DomainError(f"zero table {path} does not exist")
        return load_zeros(path)
    directory = zero_directory()
    if directory is not None:
        candidate = directory / f"{slug}.txt"
        if candidate.exists():
            return load_zeros(str(candidate))
    logger.warning(f"No zero table for {slug}; every shift is treated as admissible")
    return ZeroSet.empty(source="")
