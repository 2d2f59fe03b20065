import random

import pytest
from hypothesis import given, strategies as st

import oracles
from shintani.errors import EmptySubset, SubsetCapExceeded
from shintani.matrix_core import SupportVector, column_supports, validate_matrix
from shintani.polyhedra import (
    Constraint,
    halfspace_description,
    halfspace_from_sets,
    interior_margin,
    membership_flow,
    membership_sets,
    verify_polyhedron_equality,
)

EXAMPLE_A = validate_matrix([[1, 0, 0], [1, 1, 1], [0, 1, 0]])


def support_rows(system):
    return [(c.normal.vector, c.rhs) for c in system.support_constraints]


def test_example_a_full_description():
    system = halfspace_description(EXAMPLE_A, [0, 1, 2])
    assert support_rows(system) == [((0, 1, 0), 1), ((0, 1, 1), 2), ((1, 1, 0), 2), ((1, 1, 1), 3)]
    assert [c.describe() for c in system.support_constraints] == ["σ₂>1", "σ₂+σ₃>2", "σ₁+σ₂>2", "σ₁+σ₂+σ₃>3"]
    assert len(system.constraints) == 4 + 3


def test_example_a_membership():
    full = [0, 1, 2]
    assert membership_flow(EXAMPLE_A, full, [1.0, 1.5, 1.0])
    assert membership_flow(EXAMPLE_A, full, [2.0, 2.0, 2.0])
    assert not membership_flow(EXAMPLE_A, full, [3.0, 0.9, 3.0])


def test_strict_boundary():
    # exactly on sigma_2 = 1: closed yes, open no
    assert membership_flow(EXAMPLE_A, [2], [0.5, 1.0, 0.5], strict=False)
    assert not membership_flow(EXAMPLE_A, [2], [0.5, 1.0, 0.5], strict=True)
    assert not membership_sets([[0]], [0.0, 5.0], strict=True)


def test_subset_errors(monkeypatch):
    with pytest.raises(EmptySubset):
        halfspace_description(EXAMPLE_A, [])
    with pytest.raises(SubsetCapExceeded):
        halfspace_description(EXAMPLE_A, [0, 1, 2], cap=2)
    monkeypatch.setenv("SHINTANI_SUBSET_CAP", "1")
    with pytest.raises(SubsetCapExceeded):
        halfspace_description(EXAMPLE_A, [0, 1])


def test_constraint_describe_and_json():
    c = Constraint(SupportVector.from_vector([1, 0, 1]), 2)
    assert c.describe() == "σ₁+σ₃>2"
    assert c.to_json() == {"mu": [1, 0, 1], "rhs": 2}
    assert c.holds([1.5, 0, 1.0]) and not c.holds([1.0, 0, 1.0])


def test_interior_margin():
    # sets {0},{0}: need sigma_0 >= 2; margin of (3, x) is 1
    assert interior_margin([[0], [0]], [3.0, 5.0]) == pytest.approx(1.0, abs=1e-8)
    assert interior_margin([[0], [0]], [1.0, 5.0]) == 0.0


@st.composite
def families(draw):
    n = draw(st.integers(1, 4))
    m = draw(st.integers(1, 4))
    sets = [sorted(draw(st.sets(st.integers(0, n - 1), min_size=1))) for _ in range(m)]
    return n, sets


@given(families())
def test_description_matches_brute_force(fam):
    n, sets = fam
    system = halfspace_from_sets(sets, n)
    got = {c.normal.vector: c.rhs for c in system.support_constraints}
    assert got == oracles.brute_constraints([set(s) for s in sets], n)


@given(families(), st.lists(st.floats(0, 5), min_size=4, max_size=4))
def test_closed_membership_matches_lp(fam, raw):
    n, sets = fam
    sigma = raw[:n]
    assert membership_sets(sets, sigma, strict=False) == oracles.lp_closed_membership(sets, sigma)


@given(families(), st.lists(st.floats(0, 5), min_size=4, max_size=4))
def test_flow_matches_halfspaces_off_boundary(fam, raw):
    n, sets = fam
    sigma = raw[:n]
    system = halfspace_from_sets(sets, n)
    if any(c.distance(sigma) < 1e-9 for c in system.constraints):
        return
    assert membership_sets(sets, sigma) == system.contains(sigma)


def test_verify_report_counts():
    rep = verify_polyhedron_equality(EXAMPLE_A, [0, 1, 2], sample_count=400, seed=5)
    assert rep.passed and rep.agree + rep.discarded == 400
    again = verify_polyhedron_equality(EXAMPLE_A, [0, 1, 2], sample_count=400, seed=5)
    assert again.to_json() == rep.to_json()
    assert rep.to_json()["J"] == [1, 2, 3]


def test_verify_random_matrices():
    rng = random.Random(11)
    for _ in range(20):
        n, r = rng.randint(1, 4), rng.randint(1, 4)
        grid = [[rng.choice([0, 1]) for _ in range(r)] for _ in range(n)]
        for i in range(n):
            grid[i][rng.randrange(r)] = 1
        for j in range(r):
            grid[rng.randrange(n)][j] = 1
        a = validate_matrix(grid)
        J = sorted(rng.sample(range(r), rng.randint(1, r)))
        assert verify_polyhedron_equality(a, J, 200, rng.randrange(1000)).passed
        assert len(column_supports(a)) == r
