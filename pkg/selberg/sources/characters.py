# selberg/sources/characters.py
"""
Dirichlet characters for moduli up to 10^4.

Characters are built as exact exponent tables: Conrey-labelled characters
chi_q(n, .) from discrete-log tables on each prime-power factor of q, and
Kronecker symbols (d/.) for fundamental discriminants d.
"""

import logging
import math
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from ..errors import DomainError
from ..models.character import DirichletCharacter
from ..utils.primes import factorize

MAX_MODULUS = 10_000

logger = logging.getLogger(__name__)


def _is_primitive_root(g: int, p: int) -> bool:
    phi = p - 1
    return all(pow(g, phi // r, p) != 1 for r in factorize(phi))


@lru_cache(maxsize=None)
def conrey_generator(p: int) -> int:
    """Least primitive root mod p that is also primitive mod p^2 (so mod every p^e)."""
    for g in range(2, p):
        if _is_primitive_root(g, p) and pow(g, p - 1, p * p) != 1:
            return g
    raise DomainError(f"no primitive root found mod {p}")


def _odd_prime_power_exponents(p: int, e: int, n: int) -> Tuple[np.ndarray, int]:
    """Exponents of chi_{p^e}(n, .) over the denominator phi(p^e)."""
    q = p**e
    phi = q - q // p
    g = conrey_generator(p)
    index = np.full(q, -1, dtype=np.int64)
    value = 1
    for j in range(phi):
        index[value] = j
        value = value * g % q
    ind_n = int(index[n % q])
    table = np.where(index >= 0, (ind_n * index) % phi, -1)
    return table, phi


def _two_power_exponents(e: int, n: int) -> Tuple[np.ndarray, int]:
    """Exponents of chi_{2^e}(n, .) over the denominator phi(2^e)."""
    q = 2**e
    if e == 1:
        return np.array([-1, 0], dtype=np.int64), 1
    phi = q // 2
    if e == 2:
        table = np.array([-1, 0, -1, 0], dtype=np.int64)
        if n % 4 == 3:
            table[3] = 1
        return table, phi
    eps = np.zeros(q, dtype=np.int64)
    ind = np.full(q, -1, dtype=np.int64)
    value = 1
    for a in range(q // 4):
        ind[value] = a
        ind[(-value) % q] = a
        eps[(-value) % q] = 1
        value = value * 5 % q
    n = n % q
    half_turn = phi // 2
    table = np.where(
        ind >= 0,
        (eps[n] * eps * half_turn + 2 * ind[n] * ind) % phi,
        -1,
    )
    return table, phi


def _combine(q: int, parts: List[Tuple[int, np.ndarray, int]]) -> Tuple[np.ndarray, int]:
    """CRT-combine prime-power exponent tables into one table mod q."""
    order = 1
    for _, _, den in parts:
        order = order * den // math.gcd(order, den)
    residues = np.arange(q)
    total = np.zeros(q, dtype=np.int64)
    coprime = np.ones(q, dtype=bool)
    for modulus, table, den in parts:
        local = table[residues % modulus]
        coprime &= local >= 0
        total = (total + np.where(local >= 0, local, 0) * (order // den)) % order
    total = np.where(coprime, total, -1)
    # reduce to the true order
    units = total[coprime]
    g = math.gcd(order, *[int(x) for x in np.unique(units)]) if units.size else order
    if g > 1 and order > 1:
        total = np.where(coprime, total // g, -1)
        order //= g
    return total, max(order, 1)


def conductor_of(modulus: int, exponents: np.ndarray, order: int) -> int:
    """Least d | q such that chi is trivial on units a = 1 mod d."""
    units = np.flatnonzero(exponents >= 0)
    for d in sorted(_divisors(modulus)):
        sel = units[units % d == 1 % d]
        if np.all(exponents[sel] % order == 0):
            return d
    return modulus


def _divisors(n: int) -> List[int]:
    divs = [1]
    for p, k in factorize(n).items() if n > 1 else []:
        divs = [d * p**j for d in divs for j in range(k + 1)]
    return divs


def conrey_character(q: int, n: int) -> DirichletCharacter:
    """
    The Conrey-labelled character chi_q(n, .).

    Raises:
        DomainError: If q is out of range or gcd(n, q) != 1
    """
    if not 1 <= q <= MAX_MODULUS:
        raise DomainError(f"modulus must lie in [1, {MAX_MODULUS}], got {q}")
    if math.gcd(n, q) != 1:
        raise DomainError(f"Conrey label {n} is not a unit mod {q}")
    parts: List[Tuple[int, np.ndarray, int]] = []
    for p, e in sorted(factorize(q).items()) if q > 1 else []:
        if p == 2:
            table, den = _two_power_exponents(e, n)
        else:
            table, den = _odd_prime_power_exponents(p, e, n)
        parts.append((p**e, table, den))
    if not parts:
        exponents, order = np.zeros(1, dtype=np.int64), 1
    else:
        exponents, order = _combine(q, parts)
    conductor = conductor_of(q, exponents, order)
    logger.debug(f"Built chi_{q}({n}, .) of order {order}, conductor {conductor}")
    return DirichletCharacter(q, order, exponents, f"{q}.{n % q}", conductor)


def kronecker_symbol(a: int, n: int) -> int:
    """(a/n) for n >= 0."""
    if n < 0:
        raise ValueError("kronecker_symbol expects n >= 0")
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    k = 1 if v % 2 == 0 or a % 8 in (1, 7) else -1
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def is_fundamental_discriminant(d: int) -> bool:
    def squarefree(x: int) -> bool:
        return all(k == 1 for k in factorize(abs(x)).values()) if abs(x) > 1 else True

    if d in (0, 1):
        return False
    if d % 4 == 1:
        return squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


def kronecker_character(d: int) -> DirichletCharacter:
    """
    The real primitive character (d/.) of modulus |d|.

    Raises:
        DomainError: If d is not a fundamental discriminant
    """
    if not is_fundamental_discriminant(d):
        raise DomainError(f"{d} is not a fundamental discriminant")
    q = abs(d)
    if q > MAX_MODULUS:
        raise DomainError(f"modulus must be at most {MAX_MODULUS}, got {q}")
    symbols = np.array([kronecker_symbol(d, r) for r in range(q)], dtype=np.int64)
    exponents = np.where(symbols == 0, -1, np.where(symbols == 1, 0, 1))
    return DirichletCharacter(q, 2, exponents, f"kronecker({d})", conductor=q)
