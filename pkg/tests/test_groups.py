import numpy as np
import pytest

from momap.groups import (
    GroupElement,
    Subgroup,
    fixed_point_complement,
    fixed_point_subspace,
    torus_su2_group,
)
from momap.linalg import InputError

SU2 = torus_su2_group(0, 1)
T2 = torus_su2_group(2, 0)


def test_su2_bracket_matches_commutator():
    # [e1, e2] = 2 e3 in the i*sigma basis, frozen from the matrix commutator
    out = SU2.bracket(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]))
    assert np.allclose(out, [0, 0, 2.0])
    # generic coefficient vectors against the matrix commutator
    rng = np.random.default_rng(0)
    for _ in range(10):
        x, y = rng.standard_normal(3), rng.standard_normal(3)
        lhs = SU2.algebra.realize(SU2.bracket(x, y))
        xm, ym = SU2.algebra.realize(x), SU2.algebra.realize(y)
        assert np.max(np.abs(lhs - (xm @ ym - ym @ xm))) < 1e-12


def test_bracket_antisymmetry_and_torus():
    rng = np.random.default_rng(1)
    x = rng.standard_normal(3)
    assert np.allclose(SU2.bracket(x, x), 0.0)
    a, b = rng.standard_normal(2), rng.standard_normal(2)
    assert np.allclose(T2.bracket(a, b), 0.0)


def test_bracket_dimension_mismatch():
    with pytest.raises(InputError):
        SU2.bracket(np.ones(2), np.ones(3))


def test_exp_zero_and_rotation_by_pi():
    assert np.allclose(SU2.exp_algebra(np.zeros(3)), np.eye(2))
    t1 = torus_su2_group(1, 0)
    half_turn = t1.exp_algebra(np.array([1.0]), t=np.pi)
    assert np.allclose(half_turn, -np.eye(2), atol=1e-12)


def test_exp_group_law(rng):
    for _ in range(20):
        x = rng.standard_normal(3)
        s, t = rng.uniform(-2, 2, size=2)
        lhs = SU2.exp_algebra(x, s) @ SU2.exp_algebra(x, t)
        rhs = SU2.exp_algebra(x, s + t)
        assert np.max(np.abs(lhs - rhs)) < 1e-10
        inv = SU2.exp_algebra(x, s) @ SU2.exp_algebra(x, -s)
        assert np.max(np.abs(inv - np.eye(2))) < 1e-12


def test_exp_unitarity(rng):
    for _ in range(10):
        u = SU2.exp_algebra(rng.standard_normal(3))
        assert np.max(np.abs(u.conj().T @ u - np.eye(2))) < 1e-10


def test_exp_rejects_nonfinite():
    with pytest.raises(InputError):
        SU2.exp_algebra(np.array([np.nan, 0, 0]))


def test_coadjoint_identity_and_torus_trivial(rng):
    xi = rng.standard_normal(3)
    assert np.allclose(SU2.coadjoint_action(SU2.identity(), xi), xi)
    mu = rng.standard_normal(2)
    g = GroupElement(0, rng.standard_normal(2))
    assert np.allclose(T2.coadjoint_action(g, mu), mu, atol=1e-12)


def test_su2_coadjoint_preserves_norm(rng):
    # the invariant inner product is a multiple of the identity on su(2),
    # so Ad* preserves the Euclidean coefficient norm
    for _ in range(100):
        g = GroupElement(0, rng.standard_normal(3))
        xi = rng.standard_normal(3)
        out = SU2.coadjoint_action(g, xi)
        assert np.linalg.norm(out) == pytest.approx(np.linalg.norm(xi), rel=1e-10)


def test_coadjoint_is_a_left_action(rng):
    for _ in range(25):
        g1 = GroupElement(0, rng.standard_normal(3))
        g2 = GroupElement(0, rng.standard_normal(3))
        xi = rng.standard_normal(3)
        u = SU2.element_matrix(g1) @ SU2.element_matrix(g2)
        lhs = SU2.coadjoint_of_matrix(u) @ xi
        rhs = SU2.coadjoint_action(g1, SU2.coadjoint_action(g2, xi))
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_inner_product_invariance(rng):
    assert SU2.check_inner_product_invariance(rng, samples=20) < 1e-10


def test_fixed_point_complement_cases():
    # torus adjoint: action trivial, complement is zero
    ad_t = [T2.algebra.ad_matrix(e) for e in np.eye(2)]
    comp = fixed_point_complement(ad_t, [], 2)
    assert comp.shape[1] == 0
    # su(2) adjoint: no fixed vectors, complement is everything
    ad_s = [SU2.algebra.ad_matrix(e) for e in np.eye(3)]
    comp = fixed_point_complement(ad_s, [], 3)
    assert comp.shape[1] == 3
    # Z2 reflection on R: fixed set {0}, complement R
    comp_r = fixed_point_complement([], [np.array([[-1.0]])], 1)
    assert comp_r.shape[1] == 1
    # dim(fixed) + dim(complement) equals the ambient dimension exactly
    for actions, comps, dim in [(ad_t, [], 2), (ad_s, [], 3), ([], [np.array([[-1.0]])], 1)]:
        fixed = fixed_point_subspace(actions, comps, dim)
        complement = fixed_point_complement(actions, comps, dim)
        assert fixed.shape[1] + complement.shape[1] == dim


def test_fixed_point_complement_rejects_bad_inner():
    with pytest.raises(InputError):
        fixed_point_complement([], [np.array([[-1.0]])], 1, inner_product=np.array([[0.0]]))


def test_z2_extension_group_adjoint_flips():
    flip = np.diag([1.0, -1.0]).astype(complex)
    g = torus_su2_group(1, 0, [flip])
    ad = g.adjoint(GroupElement(1, np.zeros(1)))
    assert np.allclose(ad, [[-1.0]])


def test_subgroup_structure_and_splitting():
    group = torus_su2_group(0, 2)
    inclusion = np.array([[1.0, 0, 0, 1.0, 0, 0]]).T
    sub = Subgroup(group, inclusion)
    assert sub.dim == 1
    assert np.allclose(sub.structure_constants(), 0.0)
    h0 = sub.annihilator_basis()
    assert h0.shape == (6, 5)
    assert np.max(np.abs(sub.restriction_matrix() @ h0)) < 1e-12
    p = sub.orthogonal_splitting()
    assert np.allclose(sub.restriction_matrix() @ p, np.eye(1))


def test_subgroup_rejects_non_subalgebra():
    group = torus_su2_group(0, 1)
    bad = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])  # span{e1,e2} not closed
    with pytest.raises(InputError):
        Subgroup(group, bad)
