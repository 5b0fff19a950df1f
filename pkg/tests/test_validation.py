import numpy as np
import pytest

from cpt_shift import validation
from cpt_shift.validation import FAIL, KNOWN, PASS, Check, run_suite, suite_failed

EXPECTED = {"appendix": KNOWN, "fig5": KNOWN}


@pytest.fixture(scope="module")
def results():
    return {r.key: r for r in run_suite()}


def test_suite_covers_every_check(results):
    assert list(results) == [c.key for c in validation.CHECKS]


@pytest.mark.parametrize("key", [c.key for c in validation.CHECKS])
def test_check_status(results, key):
    r = results[key]
    assert r.status == EXPECTED.get(key, PASS), r.detail
    if r.status == PASS:
        assert r.value <= r.limit


def test_suite_passes_overall(results):
    assert not suite_failed(list(results.values()))


def test_mutation_is_caught():
    [r] = run_suite(["cancellation"], mutate=True)
    assert r.status == FAIL


def test_a_crashing_check_is_a_failure(monkeypatch):
    def boom():
        raise RuntimeError("broken")
    monkeypatch.setattr(validation, "CHECKS", (Check("boom", "always crashes", boom),))
    [r] = run_suite()
    assert r.status == FAIL and "RuntimeError" in r.detail and np.isnan(r.value)


def test_unknown_keys_are_rejected():
    with pytest.raises(KeyError):
        run_suite(["oracle", "nope"])


def test_parallel_run_matches_sequential_statuses(results):
    par = run_suite(["fig2", "cancellation", "fig7-null"], workers=3)
    assert [(r.key, r.status, r.value) for r in par] == \
        [(k, results[k].status, results[k].value) for k in ("fig2", "cancellation", "fig7-null")]


def test_appendix_discrepancy_names_the_misprinted_coefficients():
    names, worst = validation.table_mismatches(
        validation.random_rational_params(np.random.default_rng(validation.SEED)), "printed")
    assert {"A2", "B2"} <= set(names) and worst > 1e-3
    names, _ = validation.table_mismatches(
        validation.random_rational_params(np.random.default_rng(validation.SEED)), "corrected")
    assert names == []
