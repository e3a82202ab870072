import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momap.linalg import (
    DegenerateRankError,
    InputError,
    column_space,
    complement_within,
    intersect_subspaces,
    kernel,
    numerical_rank,
    principal_angle_distance,
    solve_in_span,
    subspaces_equal,
)


def test_rank_basic():
    assert numerical_rank(np.eye(4)) == 4
    assert numerical_rank(np.zeros((3, 5))) == 0
    a = np.array([[1.0, 2.0], [2.0, 4.0]])
    assert numerical_rank(a) == 1


def test_rank_ambiguity_guard():
    # kept value 1e-15 and dropped value 3e-16 straddle the cutoff within 10x
    b = np.diag([1.0, 1e-15, 3e-16])
    with pytest.raises(DegenerateRankError):
        numerical_rank(b)
    a = np.diag([1.0, 1e-14, 0.0])
    assert numerical_rank(a, rtol=1e-8) == 1


def test_kernel_and_column_space():
    a = np.array([[1.0, 0.0, -1.0], [0.0, 1.0, 1.0]])
    k = kernel(a)
    assert k.shape == (3, 1)
    assert np.allclose(a @ k, 0.0, atol=1e-12)
    c = column_space(a.T)
    assert c.shape[1] == 2


def test_intersection_and_complement():
    e = np.eye(4)
    u = e[:, :3]
    v = e[:, 1:]
    inter = intersect_subspaces(u, v)
    assert inter.shape[1] == 2
    assert subspaces_equal(inter, e[:, 1:3])
    comp = complement_within(e[:, :1], u)
    assert subspaces_equal(comp, e[:, 1:3])


def test_principal_angles_unequal_dims():
    e = np.eye(3)
    assert principal_angle_distance(e[:, :1], e[:, :2]) == pytest.approx(np.pi / 2)
    assert principal_angle_distance(e[:, :2], e[:, :2]) == 0.0


def test_solve_in_span_rejects_outside():
    basis = np.eye(3)[:, :2]
    with pytest.raises(InputError):
        solve_in_span(basis, np.array([0.0, 0.0, 1.0]))
    coords = solve_in_span(basis, np.array([2.0, -1.0, 0.0]))
    assert np.allclose(coords, [2.0, -1.0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 6))
def test_orthogonal_decomposition_property(d1, d2, n):
    # span + complement always reassembles the ambient space
    rng = np.random.default_rng(d1 * 31 + d2 * 7 + n)
    sub = column_space(rng.standard_normal((n, min(d1, n))))
    amb = np.eye(n)
    comp = complement_within(sub, amb)
    assert sub.shape[1] + comp.shape[1] == n
    if sub.shape[1] and comp.shape[1]:
        assert np.max(np.abs(sub.T @ comp)) < 1e-10
