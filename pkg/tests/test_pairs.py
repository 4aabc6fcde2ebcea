import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bestprox import (Ball, Box, EuclideanSpace, FinitePointSet, FiniteSpace, Halfspace,
                      Hyperplane, NonConvergenceError, ResolutionFailure,
                      UnsupportedConfigurationError, enumerate_A0_finite, enumerate_B0_finite,
                      in_A0, in_B0, pair_separation, point_set_distance, proximal_resolve,
                      self_pair)
from bestprox.pairs import alternating_separation

from oracles import finite_A0, finite_separation, random_finite_instance


def test_point_to_line(plane):
    d, w = point_set_distance(plane, [0, 2], Hyperplane([0, 1], 0))
    assert d == pytest.approx(2.0)
    np.testing.assert_allclose(w, [0, 0])


def test_point_in_set_has_zero_distance(plane):
    d, w = point_set_distance(plane, [0.3, 0.2], Ball([0, 0], 1))
    assert d == 0.0
    np.testing.assert_array_equal(w, [0.3, 0.2])


def test_finite_point_set_distance_is_row_minimum():
    M = np.array([[0, 3, 1, 4], [3, 0, 2, 2], [1, 2, 0, 3], [4, 2, 3, 0]], float)
    d, j = point_set_distance(FiniteSpace(M), 0, [1, 3])
    assert (d, j) == (3.0, 1)


def test_parallel_lines_separation(lines_pair):
    assert lines_pair.separation == pytest.approx(1.0)
    assert lines_pair.method == "closed-form"


def test_scaled_parallel_normals(plane):
    pair = pair_separation(plane, Hyperplane([0, 1], 0), Hyperplane([0, -3], -6))
    assert pair.separation == pytest.approx(2.0)


def test_crossing_lines_meet(plane):
    pair = pair_separation(plane, Hyperplane([1, 0], 1), Hyperplane([1, 1], 5))
    assert pair.separation == 0.0
    a, b = pair.witness
    np.testing.assert_allclose(a, [1, 4])


def test_two_balls(plane):
    pair = pair_separation(plane, Ball([0, 0], 1), Ball([5, 0], 1))
    assert pair.separation == pytest.approx(3.0)


def test_two_boxes_against_alternating(plane):
    A, B = Box([0, 0], [1, 1]), Box([2, 4], [3, 5])
    pair = pair_separation(plane, A, B)
    assert pair.separation == pytest.approx(np.sqrt(10), abs=1e-12)
    gap, _, _ = alternating_separation(A, B)
    assert abs(gap - np.sqrt(10)) <= 1e-6
    # dense sampling never beats the formula
    pa, pb = np.array(A.sample(400, 1)), np.array(B.sample(400, 2))
    assert np.min(np.linalg.norm(pa[:, None] - pb[None], axis=2)) >= pair.separation - 1e-12


def test_alternating_used_without_formula(plane):
    pair = pair_separation(plane, Ball([0, 0], 1), Halfspace([1, 0], -3))
    assert pair.method == "alternating-projections"
    assert pair.separation == pytest.approx(2.0, abs=1e-6)


def test_alternating_nonconvergence_brackets():
    with pytest.raises(NonConvergenceError) as info:
        alternating_separation(Ball([0, 0], 1), Halfspace([1, 1], -10), max_iter=0)
    lo, hi = info.value.bracket
    assert lo == 0.0 and hi > 0


def test_point_sets_use_enumeration(plane):
    P = FinitePointSet([[0, 3], [2, 2], [5, 5]])
    pair = pair_separation(plane, P, Ball([0, 0], 1))
    assert pair.method == "exhaustive"
    assert pair.separation == pytest.approx(np.sqrt(8) - 1)


def test_p_not_two_is_unsupported():
    with pytest.raises(UnsupportedConfigurationError):
        pair_separation(EuclideanSpace(2, p=1), Ball([0, 0], 1), Ball([5, 0], 1))
    # point sets are fine in any p-norm
    pair = pair_separation(EuclideanSpace(2, p=1), FinitePointSet([[0, 0]]),
                           FinitePointSet([[1, 1]]))
    assert pair.separation == pytest.approx(2.0)


def test_lines_membership(lines_pair):
    for t in (-3.0, 0.0, 7.5):
        assert in_A0(lines_pair, [t, 0])
        assert in_B0(lines_pair, [t, 1])
    assert not in_A0(lines_pair, [0, 1])


def test_balls_membership(plane):
    pair = pair_separation(plane, Ball([0, 0], 1), Ball([5, 0], 1))
    assert in_A0(pair, [1, 0])
    assert not in_A0(pair, [-1, 0])
    # the only proximal point on a fine boundary grid is the one facing B
    th = np.linspace(0, 2 * np.pi, 3601)[:-1]
    hits = [t for t in th if in_A0(pair, [np.cos(t), np.sin(t)])]
    assert hits == [0.0]


def test_same_set_is_all_proximal(plane):
    K = Box([0, 0], [1, 1])
    pair = pair_separation(plane, K, K)
    assert pair.separation == 0.0
    assert in_A0(pair, [0.2, 0.9]) and in_B0(pair, [0.2, 0.9])
    np.testing.assert_array_equal(proximal_resolve(pair, [0.2, 0.9]), [0.2, 0.9])


def test_resolve_on_lines(lines_pair):
    np.testing.assert_allclose(proximal_resolve(lines_pair, [3.5, 1]), [3.5, 0])


def test_resolve_failure_off_b0(plane):
    pair = pair_separation(plane, Ball([0, 0], 1), Ball([5, 0], 1))
    with pytest.raises(ResolutionFailure):
        proximal_resolve(pair, [5, 1])
    with pytest.raises(ResolutionFailure):
        proximal_resolve(pair, [9, 9])      # not even in B


def test_finite_resolver_hand_enumeration():
    #   0 --1-- 2,  1 --1-- 3,  0 --2-- 3,  1 --2-- 2
    M = np.array([[0, 1, 1, 2], [1, 0, 2, 1], [1, 2, 0, 2], [2, 1, 2, 0]], float)
    pair = pair_separation(FiniteSpace(M), [0, 1], [2, 3])
    assert pair.separation == 1.0
    assert proximal_resolve(pair, 2) == 0
    assert proximal_resolve(pair, 3) == 1


def test_finite_resolver_lowest_index_tie():
    M = np.array([[0, 2, 1], [2, 0, 1], [1, 1, 0]], float)
    pair = pair_separation(FiniteSpace(M), [0, 1], [2])
    assert proximal_resolve(pair, 2) == 0


def test_enumeration_needs_finite_space(lines_pair):
    with pytest.raises(UnsupportedConfigurationError):
        enumerate_A0_finite(lines_pair)


def test_intersecting_finite_sets():
    rng = np.random.default_rng(4)
    P = rng.normal(size=(6, 2))
    space = FiniteSpace(np.linalg.norm(P[:, None] - P[None], axis=2))
    pair = pair_separation(space, [0, 1, 2, 3], [2, 3, 4, 5])
    assert set(enumerate_A0_finite(pair)) >= {2, 3}


def test_self_pair_finite():
    space = FiniteSpace(np.array([[0, 1], [1, 0]], float))
    pair = self_pair(space, [1, 0])
    assert pair.A == (0, 1) and pair.separation == 0.0


@pytest.mark.parametrize("seed", range(40))
def test_finite_enumeration_matches_double_loop(seed):
    M, A, B, _ = random_finite_instance(np.random.default_rng(seed), max_size=8)
    pair = pair_separation(FiniteSpace(M), A, B)
    assert pair.separation == finite_separation(M, A, B)
    assert enumerate_A0_finite(pair) == finite_A0(M, A, B)
    assert enumerate_B0_finite(pair) == finite_A0(M, B, A)
    assert bool(enumerate_A0_finite(pair)) == bool(enumerate_B0_finite(pair))


def _random_pair(rng):
    kind = rng.choice(["balls", "boxes", "halfspace-ball", "lines"])
    if kind == "balls":
        return Ball(rng.normal(size=2), rng.uniform(0.1, 2)), Ball(rng.normal(size=2) * 4,
                                                                   rng.uniform(0.1, 2))
    if kind == "boxes":
        lo1, lo2 = rng.uniform(-4, 4, (2, 2))
        return Box(lo1, lo1 + rng.uniform(0.1, 2, 2)), Box(lo2, lo2 + rng.uniform(0.1, 2, 2))
    if kind == "lines":
        a = rng.normal(size=2)
        return Hyperplane(a, rng.normal()), Hyperplane(a * rng.uniform(0.5, 2), rng.normal())
    return Halfspace(rng.normal(size=2), rng.normal()), Ball(rng.normal(size=2) * 4, 1.0)


@pytest.mark.parametrize("seed", range(25))
def test_symmetry_and_witnesses(plane, seed):
    rng = np.random.default_rng(seed)
    A, B = _random_pair(rng)
    ab, ba = pair_separation(plane, A, B), pair_separation(plane, B, A)
    assert abs(ab.separation - ba.separation) <= 1e-10
    a, b = ab.witness
    assert A.contains(a, ab.eps) and B.contains(b, ab.eps)
    assert np.linalg.norm(a - b) - ab.separation <= ab.eps
    assert in_A0(ab, a) and in_B0(ab, b)
    # no sampled pair beats the separation
    pa, pb = np.array(A.sample(100, 1)), np.array(B.sample(100, 2))
    assert np.min(np.linalg.norm(pa[:, None] - pb[None], axis=2)) >= ab.separation - ab.eps


@pytest.mark.parametrize("seed", range(15))
def test_resolver_optimality(plane, seed):
    rng = np.random.default_rng(100 + seed)
    A, B = _random_pair(rng)
    pair = pair_separation(plane, A, B)
    _, b = pair.witness
    u = proximal_resolve(pair, b)
    for a in A.sample(200, seed):
        assert np.linalg.norm(u - b) <= np.linalg.norm(a - b) + pair.eps


@settings(max_examples=100, deadline=None)
@given(c=st.lists(st.floats(-20, 20), min_size=2, max_size=2),
       r1=st.floats(0, 5), r2=st.floats(0, 5))
def test_ball_formula_never_beaten(c, r1, r2):
    plane = EuclideanSpace(2)
    A, B = Ball([0, 0], r1), Ball(c, r2)
    pair = pair_separation(plane, A, B)
    a, b = pair.witness
    assert abs(np.linalg.norm(a - b) - pair.separation) <= 1e-9
    assert A.contains(a, 1e-9) and B.contains(b, 1e-9)
