# selberg/models/character.py
"""
Dirichlet characters stored as exact exponent tables.

chi(a) = exp(2 pi i * exponents[a mod q] / order), with exponent -1 marking
residues that share a factor with q.
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """A character mod `modulus`; `label` is how it was requested (Conrey index or discriminant)."""
    modulus: int
    order: int
    exponents: np.ndarray
    label: str
    conductor: int = field(default=0)

    def __post_init__(self):
        table = np.asarray(self.exponents, dtype=np.int64)
        if table.shape != (self.modulus,):
            raise ValueError(f"exponent table must have length {self.modulus}")
        table = table.copy()
        table.setflags(write=False)
        object.__setattr__(self, "exponents", table)

    @property
    def is_principal(self) -> bool:
        return bool(np.all(self.exponents[self.exponents >= 0] % self.order == 0))

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def values(self, residues: np.ndarray) -> np.ndarray:
        """Vectorized chi over an integer array."""
        return self.power_values(residues, 1)

    def power_values(self, residues: np.ndarray, k: int) -> np.ndarray:
        """chi(a)^k computed on exponents so roots of unity stay exact."""
        exps = self.exponents[np.asarray(residues, dtype=np.int64) % self.modulus]
        shifted = (exps * k) % self.order
        if self.is_real:
            out = np.where(shifted == 0, 1.0 + 0j, -1.0 + 0j)
        else:
            out = np.exp(2j * np.pi * shifted / self.order)
        return np.where(exps < 0, 0j, out)

    def __call__(self, a: int) -> complex:
        return complex(self.values(np.array([a]))[0])

    def period_list(self) -> List[complex]:
        """chi(0), ..., chi(q-1) as Python complexes."""
        return [complex(v) for v in self.values(np.arange(self.modulus))]
