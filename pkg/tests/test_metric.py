import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from bestprox import (ConvergenceCriterion, DimensionMismatchError, EuclideanSpace,
                      FiniteSpace, InvalidInputError, MetricError, distance, is_cauchy_tail,
                      validate_metric)

coords = arrays(np.float64, 3, elements=st.floats(-1e3, 1e3))


def test_pythagorean():
    assert distance(EuclideanSpace(2), [0, 0], [3, 4]) == 5.0


@pytest.mark.parametrize("p", [1, 2, 3.5, np.inf])
def test_self_distance_zero(p):
    x = np.array([0.3, -2.0, 7.0])
    assert distance(EuclideanSpace(3, p), x, x) == 0.0


def test_finite_lookup():
    M = np.array([[0, 2, 3], [2, 0, 4], [3, 4, 0]], float)
    sp = FiniteSpace(M)
    assert distance(sp, 1, 2) == 4.0
    assert distance(sp, 2, 2) == 0.0


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        distance(EuclideanSpace(2), [0, 0], [1, 2, 3])
    with pytest.raises(DimensionMismatchError):
        FiniteSpace(np.zeros((2, 2))).distance(0, 5)
    with pytest.raises(DimensionMismatchError):
        FiniteSpace(np.zeros((2, 2))).distance(0, [1.0])


def test_nonfinite_point_rejected():
    with pytest.raises(InvalidInputError):
        EuclideanSpace(2).point([np.nan, 0])


def test_bad_p():
    with pytest.raises(InvalidInputError):
        EuclideanSpace(2, 0.5)


def test_validate_ok():
    assert validate_metric([[0, 1], [1, 0]]).ok


def test_validate_triangle_names_triple():
    M = [[0, 5, 1], [5, 0, 1], [1, 1, 0]]
    rep = validate_metric(M)
    assert not rep.ok and rep.violation == "triangle"
    assert rep.indices == (0, 2, 1)
    with pytest.raises(MetricError):
        FiniteSpace(M)


@pytest.mark.parametrize("M, kind", [
    ([[0, 1], [2, 0]], "asymmetry"),
    ([[1, 1], [1, 0]], "diagonal"),
    ([[0, -1], [-1, 0]], "negative"),
    ([[0, 1, 2]], "shape"),
])
def test_validate_other_violations(M, kind):
    assert validate_metric(M).violation == kind


def test_validate_matches_brute_force_on_random_matrices():
    rng = np.random.default_rng(1)
    for _ in range(200):
        n = int(rng.integers(2, 7))
        W = rng.uniform(0.1, 3, size=(n, n))
        W = (W + W.T) / 2
        np.fill_diagonal(W, 0)
        brute = all(W[i, k] <= W[i, j] + W[j, k] + 1e-12
                    for i in range(n) for j in range(n) for k in range(n))
        assert validate_metric(W).ok == brute


def test_from_file(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("0 1 2\n1 0 1\n2 1 0\n")
    assert FiniteSpace.from_file(f).distance(0, 2) == 2.0


def test_cauchy_constant():
    assert is_cauchy_tail([[1.0, 2.0]] * 5, 4, 1e-12)


def test_cauchy_geometric_tail():
    seq = [0.5**n for n in range(40)]
    # tail entries are within 0.5**37 of each other
    assert is_cauchy_tail(seq, 3, 0.5)
    assert is_cauchy_tail(seq, 3, 0.5**37)
    assert not is_cauchy_tail(seq, 3, 0.5**39)


def test_cauchy_divergent():
    assert not is_cauchy_tail(list(range(10)), 2, 0.5)


def test_cauchy_window_errors():
    with pytest.raises(InvalidInputError):
        is_cauchy_tail([0, 1], 3, 0.5)
    with pytest.raises(InvalidInputError):
        is_cauchy_tail([0, 1], 1, 0.5)


def test_cauchy_with_finite_space():
    sp = FiniteSpace([[0, 1], [1, 0]])
    assert is_cauchy_tail([0, 1, 1, 1], 3, 0.0, space=sp)
    assert not is_cauchy_tail([0, 1, 0, 1], 3, 0.5, space=sp)


def test_criterion_validation():
    with pytest.raises(InvalidInputError):
        ConvergenceCriterion(eps_stop=0)
    with pytest.raises(InvalidInputError):
        ConvergenceCriterion(max_iter=0)


@given(coords, coords)
def test_symmetry(x, y):
    for p in (1, 2, np.inf):
        sp = EuclideanSpace(3, p)
        assert sp.distance(x, y) == sp.distance(y, x)


@given(coords, coords, coords)
def test_triangle(x, y, z):
    sp = EuclideanSpace(3)
    assert sp.distance(x, z) <= sp.distance(x, y) + sp.distance(y, z) + 1e-12 * (
        1 + np.abs(x).max() + np.abs(y).max() + np.abs(z).max())


@settings(max_examples=200)
@given(coords, coords)
def test_p_norm_monotone(x, y):
    d1, d2, dinf = (EuclideanSpace(3, p).distance(x, y) for p in (1, 2, np.inf))
    tol = 1e-12 * (1 + d1)
    assert d1 + tol >= d2 and d2 + tol >= dinf
