import math

import mpmath
import numpy as np
import pytest

from selberg.errors import DomainError, EmptyTableError
from selberg.models import SelbergLFunction
from selberg.pipeline import (
    RamanujanWarning,
    check_ramanujan,
    default_sigma_L,
    dirichlet_coefficient,
    prime_mean_square,
    primes_up_to,
    von_mangoldt,
    von_mangoldt_table,
)
from selberg.utils import factorize


def test_von_mangoldt_zeta(zeta_L):
    assert von_mangoldt(zeta_L, 8) == pytest.approx(math.log(2))
    assert von_mangoldt(zeta_L, 7) == pytest.approx(math.log(7))
    assert von_mangoldt(zeta_L, 6) == 0
    assert von_mangoldt(zeta_L, 1) == 0
    with pytest.raises(DomainError):
        von_mangoldt(zeta_L, 0)


def test_von_mangoldt_character(dirichlet_L):
    assert von_mangoldt(dirichlet_L, 3) == pytest.approx(-math.log(3))
    assert von_mangoldt(dirichlet_L, 9) == pytest.approx(math.log(3))
    assert von_mangoldt(dirichlet_L, 5) == pytest.approx(math.log(5))
    assert von_mangoldt(dirichlet_L, 4) == 0


@pytest.mark.parametrize("n", [1, 2, 12, 30, 64, 97])
def test_zeta_coefficients_are_one(zeta_L, n):
    assert dirichlet_coefficient(zeta_L, n) == pytest.approx(1.0)


@pytest.mark.parametrize("n,expected", [(9, 1), (3, -1), (15, -1), (25, 1), (2, 0), (21, 1)])
def test_character_coefficients(dirichlet_L, n, expected):
    assert dirichlet_coefficient(dirichlet_L, n) == pytest.approx(expected, abs=1e-12)


def test_table_lists_prime_powers(zeta_L):
    table = von_mangoldt_table(zeta_L, 10)
    assert table.n.tolist() == [2, 3, 4, 5, 7, 8, 9]
    assert table.k.tolist() == [1, 1, 2, 1, 1, 3, 2]
    np.testing.assert_allclose(table.values.real, np.log(table.p))


def test_table_slicing(zeta_L):
    table = von_mangoldt_table(zeta_L, 1000)
    small = table.upto(10.5)
    assert small.bound == 10
    assert len(small) == 7
    assert small.n.tolist() == von_mangoldt_table(zeta_L, 10).n.tolist()


def test_table_reused_from_larger_bound(zeta_L):
    big = von_mangoldt_table(zeta_L, 2000)
    small = von_mangoldt_table(zeta_L, 500)
    assert np.shares_memory(small.n, big.n)


def test_primes_up_to():
    assert primes_up_to(20).primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(EmptyTableError):
        primes_up_to(1)


def test_prime_mean_square(zeta_L, dirichlet_L):
    assert prime_mean_square(zeta_L, 1000) == pytest.approx(1.0)
    # chi(2) = 0 and there are 25 primes below 100
    assert prime_mean_square(dirichlet_L, 100) == pytest.approx(24 / 25)
    with pytest.raises(DomainError):
        prime_mean_square(zeta_L, 1.5)


def test_default_sigma_L(zeta_L, dirichlet_L):
    assert default_sigma_L(zeta_L) == 0.5
    assert default_sigma_L(dirichlet_L) == pytest.approx(0.9375)
    assert default_sigma_L(dirichlet_L, assume_gdh=True) == 0.5


def test_check_ramanujan_reports_violations():
    def b(primes, k):
        return np.where(primes == 7, 3.0, 1.0) / k

    L = SelbergLFunction("loud", 1.0, False, 0.0, b, 0.9)
    with pytest.warns(RamanujanWarning):
        violations = check_ramanujan(L, limit=100)
    assert violations == [(7, 1, pytest.approx(3.0)), (7, 2, pytest.approx(1.5))]


def test_check_ramanujan_quiet_for_zeta(zeta_L, recwarn):
    assert check_ramanujan(zeta_L, limit=10_000) == []
    assert not [w for w in recwarn if issubclass(w.category, RamanujanWarning)]


def _chi_minus_4(n: int) -> int:
    return 0 if n % 2 == 0 else (1 if n % 4 == 1 else -1)


def _coprime_pairs(count: int, bound: int, seed: int):
    generator = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        m, n = (int(v) for v in generator.integers(2, bound, size=2))
        if math.gcd(m, n) == 1:
            pairs.append((m, n))
    return pairs


@pytest.mark.parametrize("name", ["zeta", "chi"])
def test_coefficients_are_multiplicative(zeta_L, dirichlet_L, name):
    L = zeta_L if name == "zeta" else dirichlet_L
    for m, n in _coprime_pairs(300, 10_000, seed=7):
        product = dirichlet_coefficient(L, m) * dirichlet_coefficient(L, n)
        assert dirichlet_coefficient(L, m * n) == pytest.approx(product, abs=1e-12)


def test_character_coefficients_match_kronecker_symbol(dirichlet_L):
    for n in range(1, 2000):
        assert dirichlet_coefficient(dirichlet_L, n) == pytest.approx(_chi_minus_4(n), abs=1e-12)


def test_zeta_squared_coefficients_count_divisors():
    # b(p^k) = 2/k exponentiates to the divisor function
    L = SelbergLFunction(
        "zeta-squared", 2.0, True, 0.0, lambda primes, k: 2.0 / k, 0.75, ramanujan_constant=2.0
    )
    for m, n in _coprime_pairs(200, 10_000, seed=11):
        for value in (m, n, m * n):
            divisors = math.prod(k + 1 for k in factorize(value).values())
            assert dirichlet_coefficient(L, value) == pytest.approx(divisors)


@pytest.mark.parametrize("name", ["zeta", "chi"])
def test_von_mangoldt_series_is_log_derivative_of_euler_product(zeta_L, dirichlet_L, name):
    L = zeta_L if name == "zeta" else dirichlet_L
    chi = (lambda p: 1) if name == "zeta" else _chi_minus_4
    s = 3.0
    table = von_mangoldt_table(L, 10_000)
    series = complex(np.sum(table.values * table.n.astype(float) ** -s))
    # -(log L)'(s) = sum_p chi(p) log p p^(-s) / (1 - chi(p) p^(-s))
    euler = math.fsum(
        chi(p) * math.log(p) * p**-s / (1.0 - chi(p) * p**-s)
        for p in primes_up_to(10_000).primes.tolist()
    )
    assert series.real == pytest.approx(euler, abs=1e-7)
    assert series.imag == pytest.approx(0.0, abs=1e-12)
    if name == "zeta":
        exact = -mpmath.zeta(s, derivative=1) / mpmath.zeta(s)
    else:
        exact = -mpmath.diff(lambda z: mpmath.log(mpmath.dirichlet(z, [0, 1, 0, -1])), s)
    assert euler == pytest.approx(float(exact), abs=1e-7)
