import json

import pytest

from jetwronsk.suites import SUITES, SuiteResult, run_suite

SMALL = {"oracle": 24, "bounds": 1}


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_small_run_passes(name):
    res = run_suite(name, seed=1, trials=SMALL.get(name, 4))
    assert res.ok, json.dumps(res.to_json(), indent=1)
    assert sum(t.passed for t in res.checks.values()) > 0


def test_trials_are_independent_of_start():
    whole = run_suite("invariance", seed=5, trials=4)
    tail = run_suite("invariance", seed=5, trials=2, start=2)
    head = run_suite("invariance", seed=5, trials=2)
    for name, tally in whole.checks.items():
        assert tally.passed == head.checks[name].passed + tail.checks[name].passed


def test_deterministic_json():
    a = run_suite("plucker", seed=9, trials=10).to_json()
    b = run_suite("plucker", seed=9, trials=10).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_failure_records_witness():
    res = SuiteResult("demo", 0, 1)
    res.record("always", False, lambda: {"x": 1})
    assert not res.ok
    assert res.to_json()["always"]["witnesses"] == [{"x": 1}]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
