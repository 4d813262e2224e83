"""End-to-end acceptance sweep.

Runs the full self-test battery once (both passes, for the determinism
check) and then asserts each criterion individually so a failure pinpoints
the broken guarantee.  Each test prints its own pass/fail line.
"""

import json

import pytest

from cmhodge.acceptance import DEFAULT_SEED, RUNTIME_BUDGETS, run_all

LABELS = [
    (1, "circulant-rank-equivalence"),
    (2, "desk-scale-orbit-ranks"),
    (3, "odd-circulant-dichotomy"),
    (4, "reynolds-block-systems"),
    (5, "nilpotent-component-bounds"),
    (6, "bracket-chain-lemma"),
    (7, "nilpotent-escape-closure"),
    (8, "weight-five-rigidity-sweep"),
    (9, "selftest-determinism"),
]


@pytest.fixture(scope="module")
def timings():
    return {}


@pytest.fixture(scope="module")
def battery(timings):
    return run_all(DEFAULT_SEED, timings_out=timings)


def test_report_shape(battery):
    assert battery["schema_version"] == "1"
    assert battery["seed"] == DEFAULT_SEED
    assert [c["criterion"] for c in battery["criteria"]] == list(range(1, 10))
    json.dumps(battery)  # must be serializable as-is


@pytest.mark.parametrize("number,label", LABELS)
def test_criterion(battery, timings, number, label):
    record = battery["criteria"][number - 1]
    assert record["label"] == label
    status = "PASS" if record["pass"] else "FAIL"
    print(f"criterion {number} {label}: {status}")
    assert record["pass"], record["details"]
    budget = RUNTIME_BUDGETS.get(number)
    if budget is not None:
        assert timings[number] < budget, (
            f"criterion {number} took {timings[number]:.1f}s, budget {budget}s"
        )


def test_overall_flag(battery):
    assert battery["passed"] is True
