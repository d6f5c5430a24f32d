import numpy as np
import pytest

from selberg.errors import DomainError, OutOfRangeError
from selberg.models import PhaseAssignment, SampleSet


def test_phase_assignment_lookup():
    primes = np.array([2, 3, 5, 7])
    w = PhaseAssignment(7, primes, np.exp(1j * np.array([0.1, 0.2, 0.3, 0.4])), seed=3)
    assert w[5] == pytest.approx(np.exp(0.3j))
    assert np.allclose(w.phase_of(np.array([7, 2])), np.exp(1j * np.array([0.4, 0.1])))
    with pytest.raises(OutOfRangeError):
        w[11]


def test_phase_assignment_requires_unit_modulus():
    with pytest.raises(DomainError):
        PhaseAssignment(3, np.array([2, 3]), np.array([1.0, 0.5]), seed=0)


def test_constant_assignment():
    w = PhaseAssignment.constant(np.array([2, 3, 5]), 5)
    assert w.counter_scheme == "constant"
    assert np.all(w.phases == 1)


def test_sample_set_moments_and_frame():
    obs = np.array([[1 + 1j, 2], [-1 - 1j, 0], [1 - 1j, 1]])
    S = SampleSet(np.array([0.8, 0.9 + 1j]), obs, "montecarlo-Q", labels=np.array([0, 1, 2]))
    moments = S.moments()
    assert moments["mean_re"].tolist() == pytest.approx([1 / 3, 1.0])
    assert moments["second_moment"].tolist() == pytest.approx([2.0, 5 / 3])
    frame = S.to_frame()
    assert list(frame.columns) == ["seed", "h0_re", "h0_im", "h1_re", "h1_im"]
    assert S.as_real_matrix().shape == (3, 4)


def test_sample_set_validation():
    with pytest.raises(DomainError):
        SampleSet(np.array([0.8]), np.array([[1.0, 2.0]]), "shift-QT")
    with pytest.raises(DomainError):
        SampleSet(np.array([0.8]), np.array([[np.nan]]), "shift-QT")
    with pytest.raises(DomainError):
        SampleSet(np.array([0.8]), np.array([[1.0]]), "elsewhere")
