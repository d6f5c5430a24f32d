import numpy as np
import pytest

from selberg.errors import DomainError
from selberg.models import CompactSetContext, Disk, IntervalSet
from selberg.pipeline import HmEvaluator, WitnessSearcher, plant_target, witness_search


@pytest.fixture(scope="module")
def witness_K(zeta_L):
    return CompactSetContext.build(Disk(0.85 + 0j, 0.02), zeta_L.sigma_L, grid_size=4)


@pytest.fixture(scope="module")
def planted(zeta_L, witness_K, evaluator):
    return plant_target(zeta_L, 1, witness_K, 100.0, evaluator)


def test_planted_target_holds_shifted_values(zeta_L, witness_K, evaluator, planted):
    z = witness_K.grid_points()[0]
    assert planted(np.array([z]))[0] == pytest.approx(evaluator.eval_Hm(zeta_L, 1, z + 100j).value)
    assert planted.describe()["label"] == "planted@100"


def test_search_recovers_planted_witness(zeta_L, witness_K, evaluator, planted):
    shifts = IntervalSet(((95.0, 105.0),))
    report = witness_search(
        zeta_L, 1, planted, witness_K, shifts, 0.5, 0.05, y=1000.0, slack=0.3, evaluator=evaluator
    )
    assert 100.0 in report.taus
    assert report.scanned_points == 21
    assert report.candidates >= len(report.hits)
    hit = report.hits[report.taus.index(100.0)]
    assert hit.sup_error < 1e-9
    assert hit.exp_sup_error is None
    assert report.density_estimate == pytest.approx(0.5 * len(report.hits) / 10.0)
    assert report.to_dict()["summary"]["hits"] == len(report.hits)


@pytest.mark.slow
def test_hits_are_nested_in_epsilon(zeta_L, witness_K, evaluator, planted):
    shifts = IntervalSet(((95.0, 105.0),))
    searcher = WitnessSearcher(
        zeta_L, 1, planted, witness_K, y=1000.0, slack=0.3, evaluator=evaluator, threads=2
    )
    tight = searcher.search(shifts, 0.5, 0.05)
    loose = searcher.search(shifts, 0.5, 0.3)
    assert set(tight.taus) <= set(loose.taus)
    assert tight.taus == sorted(tight.taus)


def test_prefilter_is_small_at_the_planted_shift(zeta_L, witness_K, evaluator, planted):
    searcher = WitnessSearcher(zeta_L, 1, planted, witness_K, y=1000.0, evaluator=evaluator)
    errors = searcher.prefilter_errors(np.array([100.0, 100.0]))
    assert errors[0] == errors[1]
    assert errors[0] < 0.3


def test_confirm_skips_inadmissible_shift(zeta_L, witness_K, evaluator, planted):
    searcher = WitnessSearcher(zeta_L, 1, planted, witness_K, evaluator=evaluator)
    assert searcher.confirm(0.0) is None


def test_search_rejects_bad_arguments(zeta_L, witness_K, evaluator, planted):
    searcher = WitnessSearcher(zeta_L, 1, planted, witness_K, evaluator=evaluator)
    shifts = IntervalSet(((95.0, 105.0),))
    with pytest.raises(DomainError):
        searcher.search(shifts, 0.0, 0.1)
    with pytest.raises(DomainError):
        searcher.search(shifts, 0.5, -0.1)
    with pytest.raises(DomainError):
        WitnessSearcher(zeta_L, 1, planted, witness_K, slack=-1.0, evaluator=evaluator)


@pytest.mark.slow
def test_hits_survive_reevaluation_at_half_tolerance(zeta_L, witness_K, evaluator, planted):
    shifts = IntervalSet(((95.0, 105.0),))
    eps = 0.3
    report = witness_search(
        zeta_L, 1, planted, witness_K, shifts, 0.5, eps, y=1000.0, slack=0.3, evaluator=evaluator
    )
    assert report.hits
    finer = HmEvaluator(evaluator.settings.with_tolerance(evaluator.settings.tolerance / 2))
    grid = witness_K.grid_points()
    goal = planted(grid)
    for hit in report.hits:
        values = np.array([finer.eval_Hm(zeta_L, 1, z + 1j * hit.tau).value for z in grid])
        assert np.max(np.abs(values - goal)) < eps
        assert np.max(np.abs(values - goal)) == pytest.approx(hit.sup_error, abs=1e-7)


@pytest.mark.slow
@pytest.mark.parametrize("tau", [1500.0, 4321.0])
def test_default_prefilter_recovers_planted_log_zeta(zeta_L, evaluator, tau):
    K = CompactSetContext.build(Disk(0.85 + 0j, 0.02), zeta_L.sigma_L)
    target = plant_target(zeta_L, 0, K, tau, evaluator)
    step = 0.25
    shifts = IntervalSet(((tau - 1.0, tau + 1.0),))
    report = WitnessSearcher(zeta_L, 0, target, K, evaluator=evaluator).search(shifts, step, 0.01)
    assert any(abs(t - tau) <= step for t in report.taus)
    assert all(hit.sup_error < 0.01 for hit in report.hits)
