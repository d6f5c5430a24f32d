import numpy as np
import pytest

from selberg.errors import DomainError, EmptySampleError
from selberg.models import CompactSetContext, Disk, IntervalSet, SampleSet
from selberg.pipeline import (
    ball_frequency,
    energy_distance,
    energy_permutation_test,
    eval_random_Hm,
    moment_check,
    sample_phases,
    sample_Q,
    sample_QT,
    torus_equidistribution,
)
from selberg.pipeline.sampling import shift_positions


def _gaussian_sample(seed, n, points, shift=0.0):
    rng = np.random.default_rng(seed)
    obs = rng.normal(size=(n, len(points))) + 1j * rng.normal(size=(n, len(points))) + shift
    return SampleSet(np.asarray(points), obs, "montecarlo-Q", labels=np.arange(n))


def test_shift_positions_equispaced():
    shifts = IntervalSet(((0.0, 1.0), (3.0, 4.0)))
    np.testing.assert_allclose(shift_positions(shifts, 4), [0.25, 0.75, 3.25, 3.75])


def test_shift_positions_random_is_seeded():
    shifts = IntervalSet(((0.0, 1.0), (3.0, 4.0)))
    first = shift_positions(shifts, 50, "random", seed=9)
    np.testing.assert_array_equal(first, shift_positions(shifts, 50, "random", seed=9))
    assert np.all(shifts.contains(first))


def test_shift_positions_rejects():
    with pytest.raises(EmptySampleError):
        shift_positions(IntervalSet(()), 3)
    with pytest.raises(DomainError):
        shift_positions(IntervalSet(((0.0, 1.0),)), 3, "sobol")
    with pytest.raises(DomainError):
        shift_positions(IntervalSet(((0.0, 1.0),)), 0)


def test_sample_QT_rows(zeta_L, evaluator):
    points = [0.85 + 0j, 0.8 + 0.05j]
    sample = sample_QT(zeta_L, 1, points, IntervalSet(((100.0, 110.0),)), 3, evaluator=evaluator)
    assert sample.provenance == "shift-QT"
    np.testing.assert_allclose(sample.labels, [100.0 + 10 / 6, 105.0, 110.0 - 10 / 6])
    expected = evaluator.eval_Hm(zeta_L, 1, points[1] + 1j * sample.labels[2]).value
    assert sample.observations[2, 1] == pytest.approx(expected)
    assert list(sample.to_frame().columns) == ["tau", "h0_re", "h0_im", "h1_re", "h1_im"]


def test_sample_QT_drops_pole_rows(zeta_L, evaluator):
    # the middle shift lands on the pole ray
    sample = sample_QT(zeta_L, 1, [0.85 + 0j], IntervalSet(((-1.0, 1.0),)), 3, evaluator=evaluator)
    assert sample.size == 2
    assert sample.dropped == 1
    with pytest.raises(EmptySampleError):
        sample_QT(zeta_L, 1, [0.85 + 0j], IntervalSet(((-1.0, 1.0),)), 1, evaluator=evaluator)


def test_sample_Q_rows_are_seeded(zeta_L):
    sample = sample_Q(zeta_L, 1, [0.8 + 7j], 300, seed=0, prime_bound=1000)
    assert sample.size == 300
    assert sample.labels[257] == 257
    expected = eval_random_Hm(zeta_L, 1, 0.8 + 7j, sample_phases(257, 1000)).value
    assert sample.observations[257, 0] == pytest.approx(expected)
    threaded = sample_Q(zeta_L, 1, [0.8 + 7j], 300, seed=0, prime_bound=1000, threads=3)
    np.testing.assert_allclose(threaded.observations, sample.observations, rtol=1e-14)


def test_sample_Q_constant_phase(zeta_L):
    sample = sample_Q(zeta_L, 0, [1.5 + 2j], 4, seed=0, prime_bound=500, constant_phase=1.0)
    np.testing.assert_allclose(sample.observations[:, 0], sample.observations[0, 0])
    assert sample.params["constant_phase"] == 1 + 0j


def test_moment_check(zeta_L):
    sample = sample_Q(zeta_L, 1, [0.8 + 7j, 0.9 - 3j], 1000, seed=100, prime_bound=1000)
    frame = moment_check(sample, zeta_L, 1, prime_bound=1000)
    assert np.all(frame["mean_z"] < 4.5)
    deviation = np.abs(frame["second_moment"] - frame["analytic_second_moment"])
    assert np.all(deviation < 4.5 * frame["second_moment_se"])


def test_energy_distance_of_shuffled_copy_is_zero():
    A = _gaussian_sample(1, 80, [0.8 + 1j, 0.9 + 1j])
    order = np.random.default_rng(2).permutation(80)
    B = SampleSet(A.eval_points, A.observations[order], "montecarlo-Q")
    assert energy_distance(A, B) == pytest.approx(0.0, abs=1e-12)
    test = energy_permutation_test(A, B, permutations=49, seed=3)
    assert test.p_value == 1.0
    assert test.permutations == 49


def test_energy_detects_shift():
    A = _gaussian_sample(4, 100, [0.8 + 1j, 0.9 + 1j])
    B = _gaussian_sample(5, 100, [0.8 + 1j, 0.9 + 1j], shift=1.0)
    assert energy_distance(A, B) > 0.1
    test = energy_permutation_test(A, B, permutations=199, seed=0)
    assert test.p_value <= 0.01
    assert test.statistic > test.null_quantile_95


@pytest.mark.slow
def test_shifts_are_closer_to_random_model_of_same_order(zeta_L, evaluator):
    points = [0.8 + 0j, 0.85 + 0.5j]
    shifts = IntervalSet(((1e4, 2e4),))
    shifted = sample_QT(zeta_L, 0, points, shifts, 300, evaluator=evaluator, threads=4)
    same = sample_Q(zeta_L, 0, points, 300, seed=1, prime_bound=10_000)
    other = sample_Q(zeta_L, 1, points, 300, seed=1, prime_bound=10_000)
    assert energy_distance(shifted, same) < energy_distance(shifted, other)
    against_other = energy_permutation_test(shifted, other, permutations=99, seed=0)
    assert against_other.p_value <= 0.05
    assert against_other.statistic > against_other.null_quantile_95


def test_energy_needs_matching_points():
    A = _gaussian_sample(1, 10, [0.8 + 1j])
    B = _gaussian_sample(1, 10, [0.7 + 1j])
    with pytest.raises(DomainError):
        energy_distance(A, B)


def test_ball_frequency(zeta_L):
    K = CompactSetContext.build(Disk(0.85 + 0j, 0.05), zeta_L.sigma_L)
    points = np.array([0.85 + 0j, 0.87 + 0.01j, 0.6 + 0j])
    obs = np.array([[0.01, 0.02, 5.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.0], [0.03, 0.03j, 9.0]])
    sample = SampleSet(points, obs, "shift-QT", labels=np.arange(4.0))
    # the third point lies outside K and is ignored
    assert ball_frequency(sample, lambda z: np.zeros(z.shape), K, 0.05) == 0.75
    outside = SampleSet(points[2:], obs[:, 2:], "shift-QT")
    with pytest.raises(DomainError):
        ball_frequency(outside, lambda z: np.zeros(z.shape), K, 0.05)


def test_torus_equidistribution():
    primes = [2, 3, 5, 7, 11, 13]
    spread = torus_equidistribution(primes, np.linspace(1000.0, 2000.0, 20_001))
    assert len(spread) == 2 * len(primes) + len(primes) - 1
    assert spread["modulus"].max() < 0.05
    frozen = torus_equidistribution(primes, [0.0])
    np.testing.assert_allclose(frozen["modulus"], 1.0)
    with pytest.raises(DomainError):
        torus_equidistribution([], [1.0])
