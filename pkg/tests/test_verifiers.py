import random

import pytest

from cmhodge import (
    CirculantSpec,
    NotNilpotentError,
    Orientation,
    PreconditionError,
    TheoremViolationError,
    UsageError,
    build_cyclotomic_cm,
    circulant_matrix,
    circulant_rank,
    default_polarization,
    enumerate_orientations,
    escape_verdict,
    nondegeneracy_verdict,
    orbit_rank,
    reynolds_average,
    ribet_dichotomy,
    rigidity_verdict,
    root_vector,
    validate_orientation,
)
from cmhodge.acceptance import rational_nilpotent_examples, rational_nilpotent_witness
from cmhodge.linalg import rank_rational
from conftest import abstract_z6, first_oriented

BALANCED_ABSTRACT = {
    "a": (3, 0), "b": (2, 1), "c": (2, 1),
    "A": (0, 3), "B": (1, 2), "C": (1, 2),
}
EXTREME_ABSTRACT = {
    "a": (3, 0), "b": (3, 0), "c": (3, 0),
    "A": (0, 3), "B": (0, 3), "C": (0, 3),
}


def test_circulant_spec_validation():
    CirculantSpec((1, 1, 1))  # fine
    with pytest.raises(UsageError):
        CirculantSpec((1, 1, 1, 1))  # even length
    with pytest.raises(UsageError):
        CirculantSpec((1,) * 9)  # odd but composite
    with pytest.raises(UsageError):
        CirculantSpec((1,))


def test_circulant_matrix_shape():
    spec = CirculantSpec((7, 1, 3))
    assert circulant_matrix(spec) == [[7, 1, 3], [1, 3, 7], [3, 7, 1]]


@pytest.mark.parametrize(
    "entries,rank",
    [
        ((1, 1, 1), 1),
        ((3, 1, 1), 3),
        ((1, -1, 1), 3),
        ((0, 0, 0), 0),
        ((1, 1, 1, 1, 1), 1),
        ((2, -1, -1, 0, 0), 4),  # symbol divisible by x - 1 only
    ],
)
def test_circulant_rank_known_values(entries, rank):
    assert circulant_rank(CirculantSpec(entries)) == rank


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_circulant_rank_matches_elimination(p):
    rng = random.Random(f"circ-{p}")
    for _ in range(25):
        entries = tuple(rng.randrange(-6, 7) for _ in range(p))
        spec = CirculantSpec(entries)
        assert circulant_rank(spec) == rank_rational(circulant_matrix(spec))


def test_dichotomy_branches():
    assert ribet_dichotomy(CirculantSpec((3, 1, 1))) == "rank_p"
    assert ribet_dichotomy(CirculantSpec((5, 5, 5, 5, 5))) == "all_equal"
    with pytest.raises(UsageError):
        ribet_dichotomy(CirculantSpec((1, 2, 1)))


def test_orbit_rank_desk_values(oriented7):
    assert orbit_rank(oriented7) == 3
    galois = build_cyclotomic_cm(7)
    ranks = {}
    for o in enumerate_orientations(galois, 3, (3, 0, 0, 3)):
        pos = tuple(sorted(l for l, (p, _) in o.assignment.items() if p == 3))
        ranks[pos] = orbit_rank(validate_orientation(galois, o))
    assert ranks[(1, 2, 4)] == 1
    assert ranks[(3, 5, 6)] == 1
    assert sorted(ranks.values()) == [1, 1, 3, 3, 3, 3, 3, 3]


def test_nondegeneracy_report_balanced(oriented7):
    report = nondegeneracy_verdict(oriented7)
    assert report.verdict == "nondegenerate"
    assert report.orbit_rank == 3 and report.cartan_bound == 3
    assert report.grading == (3, 1, 1)
    # every group element mixes signs at conductor 7, so no circulant route
    assert report.circulant_rank is None
    assert report.dichotomy_branch is None
    assert report.circulant_entries is None
    assert len(report.orbit_vectors) == 6
    js = report.to_json()
    assert js["verdict"] == "nondegenerate" and js["circulant_entries"] is None


def test_nondegeneracy_report_quadratic_residue_pattern():
    galois = build_cyclotomic_cm(7)
    found = None
    for o in enumerate_orientations(galois, 3, (3, 0, 0, 3)):
        pos = {l for l, (p, _) in o.assignment.items() if p == 3}
        if pos == {1, 2, 4}:
            found = validate_orientation(galois, o)
    report = nondegeneracy_verdict(found)
    assert report.verdict == "degenerate_under_span_assumption"
    assert report.orbit_rank == 1
    assert report.grading == (3, 3, -3)


def test_abstract_field_takes_the_circulant_route():
    galois = abstract_z6()
    balanced = validate_orientation(galois, Orientation(3, BALANCED_ABSTRACT))
    report = nondegeneracy_verdict(balanced)
    assert report.circulant_entries == (3, 1, 1)
    assert report.circulant_rank == 3
    assert report.dichotomy_branch == "rank_p"
    assert report.verdict == "nondegenerate"

    extreme = validate_orientation(galois, Orientation(3, EXTREME_ABSTRACT))
    report = nondegeneracy_verdict(extreme)
    assert report.circulant_entries == (3, 3, 3)
    assert report.circulant_rank == 1
    assert report.dichotomy_branch == "all_equal"
    assert report.verdict == "degenerate_under_span_assumption"
    assert report.orbit_rank == 1


def test_escape_requires_nondegenerate_field():
    galois = abstract_z6()
    extreme = validate_orientation(galois, Orientation(3, EXTREME_ABSTRACT))
    pol = default_polarization(extreme)
    with pytest.raises(PreconditionError) as err:
        escape_verdict(extreme, pol, root_vector(extreme, pol, 1, 2))
    assert err.value.reason == "field-not-nondegenerate"


def test_escape_requires_rational_nilpotent_input(oriented7, pol7):
    with pytest.raises(UsageError):
        escape_verdict(oriented7, pol7, root_vector(oriented7, pol7, 1, 2))
    avg = reynolds_average(oriented7, root_vector(oriented7, pol7, 1, 2))
    with pytest.raises(NotNilpotentError):
        escape_verdict(oriented7, pol7, avg)


def test_escape_below_threshold_reports_not_applicable(oriented7, pol7):
    examples = dict(rational_nilpotent_examples(oriented7, pol7))
    out = escape_verdict(oriented7, pol7, examples["square-zero"])
    assert out["nilpotency_degree"] == 2
    assert out["applicable"] is False
    assert out["closure_dimension"] is None
    out = escape_verdict(oriented7, pol7, examples["half-chain"])
    assert out["nilpotency_degree"] == 3  # equal to n still does not trigger
    assert out["applicable"] is False


def test_escape_deep_nilpotent_forces_everything(oriented7, pol7):
    witness = rational_nilpotent_witness(oriented7, pol7)
    out = escape_verdict(oriented7, pol7, witness)
    assert out["applicable"] is True
    assert out["nilpotency_degree"] == 6
    assert out["partition_trivial"] is True
    assert out["closure_dimension"] == out["ambient_dimension"] == 21
    assert out["nondegeneracy"]["verdict"] == "nondegenerate"


def test_rigidity_weight_five(oriented7):
    field = first_oriented(7, 5, (1, 1, 1, 1, 1, 1))
    out = rigidity_verdict(field)
    assert out["hypotheses_met"] is True
    assert out["hypotheses"] == {
        "weight_odd_gt_1": True,
        "h_top_is_1": True,
        "h_next_is_1": True,
        "dim_not_divisible_by_4": True,
    }
    assert out["verdict"] == "rigid"
    assert out["offending_orbits"] == []


def test_rigidity_weight_three_hypotheses_fail_quietly(oriented7):
    out = rigidity_verdict(oriented7)
    assert out["hypotheses_met"] is False
    assert out["hypotheses"]["h_next_is_1"] is False
    assert out["verdict"] == "rigid"  # still rigid here, just not by the theorem


def test_rigidity_never_raises_without_hypotheses():
    galois = build_cyclotomic_cm(9)
    for o in enumerate_orientations(galois, 3, (2, 1, 1, 2)):
        out = rigidity_verdict(validate_orientation(galois, o))
        assert out["verdict"] in ("rigid", "not-rigid")
