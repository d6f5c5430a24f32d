import numpy as np
import pytest

from selberg.errors import DomainError, OutOfRangeError, PoleError
from selberg.models import CompactSetContext, Disk, PhaseAssignment
from selberg.pipeline import (
    bump,
    bump_derivative,
    dirichlet_poly,
    fit_decay_constant,
    mellin_contour_sum,
    mellin_hat,
    mellin_hat_grid,
    sample_phases,
    smoothed_sum,
    smoothing_convergence,
    transition_remainder,
)
from selberg.pipeline.smoothing import smoothed_grid


def test_bump_values():
    assert bump(0.0) == 1.0
    assert bump(1.0) == 1.0
    assert bump(1.5) == pytest.approx(0.5)
    assert bump(2.0) == 0.0
    assert bump(7.0) == 0.0
    np.testing.assert_allclose(bump(np.array([0.5, 1.5, 2.5])), [1.0, 0.5, 0.0])


def test_bump_is_monotone_and_symmetric():
    x = np.linspace(1.01, 1.99, 99)
    values = bump(x)
    assert np.all(np.diff(values) < 0)
    np.testing.assert_allclose(values + bump(3.0 - x), 1.0, atol=1e-14)


def test_bump_rejects_negative():
    with pytest.raises(DomainError):
        bump(-0.1)
    with pytest.raises(DomainError):
        bump_derivative(np.array([1.5, -1.0]))


@pytest.mark.parametrize("x", [1.1, 1.3, 1.5, 1.8, 1.95])
def test_bump_derivative_matches_difference_quotient(x):
    h = 1e-6
    numeric = (bump(x + h) - bump(x - h)) / (2 * h)
    assert bump_derivative(x) == pytest.approx(numeric, rel=1e-5, abs=1e-8)
    assert bump_derivative(0.5) == 0.0


def test_mellin_hat_residue_at_zero():
    assert abs(1e-3 * mellin_hat(1e-3) - 1.0) < 1e-2
    with pytest.raises(PoleError):
        mellin_hat(0.0)


def test_mellin_hat_at_one_is_integral_of_bump():
    # phi(1 + x) + phi(2 - x) = 1, so int_1^2 phi = 1/2
    assert mellin_hat(1.0) == pytest.approx(1.5, rel=1e-12)


@pytest.mark.parametrize("s", [1.0 + 2j, 0.5 + 10j, -0.25 + 3j, -0.5 - 20j])
def test_mellin_hat_grid_agrees_with_quadrature(s):
    assert mellin_hat_grid(np.array([s]))[0] == pytest.approx(mellin_hat(s), rel=1e-8, abs=1e-14)


def test_mellin_hat_continuation_limit():
    with pytest.raises(DomainError):
        mellin_hat(-1.0 + 1j)
    with pytest.raises(PoleError):
        mellin_hat_grid(np.array([1.0, 0.0]))


def test_decay_constant_is_stable_in_range():
    narrow = fit_decay_constant(-0.25, np.linspace(1.0, 100.0, 400))
    wide = fit_decay_constant(-0.25, np.linspace(1.0, 200.0, 800))
    assert 0 < narrow < np.inf
    assert wide <= narrow * (1 + 1e-6)


def test_smoothed_sum_small_cutoff(zeta_L):
    # n = 2 has weight 1, n = 3 sits at phi(1.5) = 1/2, n = 4 at phi(2) = 0
    assert smoothed_sum(zeta_L, 0, 2.0, 2.0) == pytest.approx(1 / 4 + 0.5 / 9)
    with pytest.raises(DomainError):
        smoothed_sum(zeta_L, 0, 2.0, 1.5)


def test_smoothed_sum_with_phases(zeta_L):
    flipped = PhaseAssignment.constant(np.array([2, 3, 5, 7]), 7, value=-1.0)
    assert smoothed_sum(zeta_L, 0, 2.0, 2.0, flipped) == pytest.approx(-(1 / 4 + 0.5 / 9))
    ones = PhaseAssignment.constant(np.array([2, 3, 5, 7]), 7)
    expected = smoothed_sum(zeta_L, 1, 0.8 + 5j, 3.0)
    assert smoothed_sum(zeta_L, 1, 0.8 + 5j, 3.0, ones) == pytest.approx(expected)
    with pytest.raises(OutOfRangeError):
        smoothed_sum(zeta_L, 0, 2.0, 10.0, sample_phases(1, 7))


def test_smoothed_grid_matches_pointwise(zeta_L):
    points = np.array([0.8 + 10j, 0.9 - 3j, 1.5 + 0j])
    grid = smoothed_grid(zeta_L, 2, points, 40.0)
    expected = [smoothed_sum(zeta_L, 2, z, 40.0) for z in points]
    np.testing.assert_allclose(grid, expected, rtol=1e-12)


@pytest.mark.parametrize("X", [10.0, 50.0, 73.5])
def test_transition_remainder(zeta_L, X):
    s = 0.8 + 20j
    expected = smoothed_sum(zeta_L, 1, s, X) - dirichlet_poly(zeta_L, 1, s, X)
    assert transition_remainder(zeta_L, 1, s, X) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("m,s", [(1, 0.8 + 10j), (0, 0.7 - 4j), (2, 1.2 + 30j)])
def test_contour_integral_reproduces_smoothed_sum(zeta_L, m, s):
    contour = mellin_contour_sum(zeta_L, m, s, 4.0, c=1.0, height=400.0, panel_length=2.0)
    assert contour.value == pytest.approx(smoothed_sum(zeta_L, m, s, 4.0), abs=1e-7)
    assert contour.method == "smoothed"


def test_contour_must_lie_right_of_one(zeta_L):
    with pytest.raises(DomainError):
        mellin_contour_sum(zeta_L, 1, 0.5 + 1j, 4.0, c=0.4)


def test_smoothing_converges(zeta_L, evaluator):
    K = CompactSetContext.build(Disk(0.85 + 0j, 0.02), zeta_L.sigma_L, grid_size=4)
    result = smoothing_convergence(zeta_L, 1, K, [100.0, 150.0], [10.0, 100.0, 1000.0], evaluator)
    assert result.shifts_used == 2
    assert result.dropped == 0
    assert len(result.mean_sup_errors) == 3
    assert result.mean_sup_errors[-1] < result.mean_sup_errors[0]
    assert result.to_dict()["X"] == [10.0, 100.0, 1000.0]


def test_smoothing_convergence_without_admissible_shift(zeta_L, evaluator):
    K = CompactSetContext.build(Disk(0.85 + 0j, 0.02), zeta_L.sigma_L, grid_size=4)
    with pytest.raises(DomainError):
        smoothing_convergence(zeta_L, 1, K, [0.0], [10.0], evaluator)
