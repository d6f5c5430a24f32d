# selberg/utils/primes.py
"""
Prime sieves and small-integer factorization.

Two independent sieves are provided so tables can be cross-checked:
a plain Eratosthenes sieve over a boolean numpy array and a segmented
sieve that only ever holds one block in memory.
"""

import math
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np


def sieve_primes(n: int) -> np.ndarray:
    """Ascending int64 array of the primes <= n (empty for n < 2)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def segmented_primes(n: int, segment: int = 1 << 15) -> np.ndarray:
    """
    Primes <= n from a segmented sieve.

    Args:
        n: Upper bound (inclusive)
        segment: Block length

    Returns:
        Ascending int64 array, identical to sieve_primes(n)
    """
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    root = math.isqrt(n)
    base = sieve_primes(root)
    found = [base]
    lo = root + 1
    while lo <= n:
        hi = min(lo + segment - 1, n)
        block = np.ones(hi - lo + 1, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start > hi:
                continue
            block[start - lo :: p] = False
        found.append(np.flatnonzero(block).astype(np.int64) + lo)
        lo = hi + 1
    return np.concatenate(found)


@lru_cache(maxsize=8)
def _cached_primes(n: int) -> np.ndarray:
    primes = sieve_primes(n)
    primes.setflags(write=False)
    return primes


def cached_primes(n: int) -> np.ndarray:
    """Read-only cached sieve; repeated calls with the same bound share one array."""
    return _cached_primes(int(n))


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization {p: exponent} by trial division (n >= 1)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: Dict[int, int] = {}
    while n % 2 == 0:
        factors[2] = factors.get(2, 0) + 1
        n //= 2
    p = 3
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """(p, k) when n = p^k with k >= 1, otherwise None."""
    if n < 2:
        return None
    factors = factorize(n)
    if len(factors) != 1:
        return None
    (p, k), = factors.items()
    return p, k


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}
