import json

import numpy as np
import pytest
from hypothesis import given

import oracles
from shintani.errors import DimensionMismatch, EmptySubset
from shintani.matrix_core import skeleton, validate_matrix
from shintani.poles import (
    convergence_check,
    enumerate_pole_families,
    first_violated_constraint,
    mu_vector,
    sufficient_box_check,
    transform_pole_families,
)
from test_matrix_core import sigma_matrices

B = validate_matrix([[1, 1], [1, 1]])
A = validate_matrix([[1, 0, 0], [1, 1, 1], [0, 1, 0]])


def summary(report):
    return {f.mu.vector: (f.nu, f.l_range) for f in report.families}


def test_example_b_single_family():
    rep = enumerate_pole_families(B)
    assert summary(rep) == {(1, 1): (2, "all")}
    assert rep.families[0].hyperplane(0) == "s1+s2 = 2"
    assert rep.families[0].hyperplane(3) == "s1+s2 = -1"


def test_example_a_four_families():
    rep = enumerate_pole_families(A)
    assert summary(rep) == {
        (0, 1, 0): (1, (0,)),
        (0, 1, 1): (2, "all"),
        (1, 1, 0): (2, "all"),
        (1, 1, 1): (3, "all"),
    }
    fam = rep.family([1, 1, 1])
    assert fam.witnesses == ((0, 1), (0, 1, 2))


def test_riemann_pole_needs_l_zero():
    rep = enumerate_pole_families(validate_matrix([[1]]))
    assert summary(rep) == {(1,): (1, (0,))}


def test_json_schema():
    out = enumerate_pole_families(A).to_json()
    assert set(out) == {"n", "r", "families", "convergence", "l_range_convention", "note"}
    assert out["families"][0] == {"mu": [0, 1, 0], "nu": 1, "l_range": [0], "witnesses": [[3]]}
    assert out["convergence"][:4] == [
        {"mu": [0, 1, 0], "rhs": 1},
        {"mu": [0, 1, 1], "rhs": 2},
        {"mu": [1, 1, 0], "rhs": 2},
        {"mu": [1, 1, 1], "rhs": 3},
    ]
    assert json.loads(json.dumps(out)) == out


def test_convergence_examples():
    assert convergence_check(B, [1.5, 1.0])
    assert not convergence_check(B, [1.0, 1.0])
    assert not convergence_check(B, [2.5, 0.0])
    assert first_violated_constraint(B, [0.5, 1.0]).describe() == "σ₁+σ₂>2"
    assert first_violated_constraint(B, [3.0, 3.0]) is None
    with pytest.raises(DimensionMismatch):
        convergence_check(B, [1.0])


def test_mu_vector():
    assert mu_vector(A, [0, 2]).vector == (1, 1, 0)
    with pytest.raises(EmptySubset):
        mu_vector(A, [])


def test_transformed_normals():
    rep = enumerate_pole_families(B)
    fams = transform_pole_families(rep, [[2, 0], [1, 1]])
    assert fams[0].normal == (3.0, 1.0)
    with pytest.raises(DimensionMismatch):
        transform_pole_families(rep, np.eye(3))


@given(sigma_matrices())
def test_families_match_brute_force(a):
    got = summary(enumerate_pole_families(a))
    assert got == oracles.brute_pole_families(a.entries)


@given(sigma_matrices())
def test_skeleton_gives_identical_report(a):
    one = json.dumps(enumerate_pole_families(a).to_json())
    two = json.dumps(enumerate_pole_families(skeleton(a)).to_json())
    assert one == two


@given(sigma_matrices())
def test_box_check_is_sufficient(a):
    sigma = [a.cols + 0.01] * a.rows
    assert sufficient_box_check(a, sigma)
    assert convergence_check(a, sigma)
