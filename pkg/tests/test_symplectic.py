import numpy as np
import pytest

from momap.linalg import InputError, principal_angle_distance, subspaces_equal
from momap.momentum import QuadraticMomentumMap
from momap.symplectic import (
    SymplecticRep,
    darboux_omega,
    orbit_tangent,
    standard_omega,
    symplectic_normal_space,
    symplectic_orthogonal,
)


def weight_rep(*weights):
    from momap.models import torus_weight_generators

    n = len(weights)
    return SymplecticRep(standard_omega(n), torus_weight_generators([list(weights)]), [np.eye(2 * n)])


def test_symplectic_orthogonal_trivial_cases():
    omega = darboux_omega(2)
    full = np.eye(4)
    assert symplectic_orthogonal(full, omega).shape[1] == 0
    assert symplectic_orthogonal(np.zeros((4, 0)), omega).shape[1] == 4


def test_symplectic_orthogonal_hand_solved():
    # R^4, omega pairing e1<->e2 and e3<->e4: span{e1}^omega = span{e1,e3,e4}
    omega = standard_omega(2)
    w = np.eye(4)[:, :1]
    result = symplectic_orthogonal(w, omega)
    expected = np.eye(4)[:, [0, 2, 3]]
    assert subspaces_equal(result, expected)


def test_symplectic_orthogonal_rank_deficient_input():
    omega = standard_omega(1)
    bad = np.array([[1.0, 2.0], [0.0, 0.0]])
    with pytest.raises(InputError):
        symplectic_orthogonal(bad, omega)


def test_double_orthogonal_is_identity(rng):
    for n in (1, 2, 3):
        omega = standard_omega(n)
        for _ in range(100):
            k = int(rng.integers(1, 2 * n + 1))
            w = rng.standard_normal((2 * n, k))
            if np.linalg.matrix_rank(w) < k:
                continue
            w_orth = symplectic_orthogonal(w, omega)
            back = symplectic_orthogonal(w_orth, omega) if w_orth.shape[1] else np.eye(2 * n)
            from momap.linalg import column_space

            assert principal_angle_distance(back, column_space(w)) < 1e-8


def test_orbit_tangent_weight1():
    rep = weight_rep(1)
    assert orbit_tangent(rep, np.zeros(2)).shape[1] == 0
    t = orbit_tangent(rep, np.array([1.0, 0.0]))
    assert subspaces_equal(t, np.array([[0.0], [1.0]]))


def test_orbit_tangent_weight11():
    rep = weight_rep(1, 1)
    t = orbit_tangent(rep, np.array([1.0, 0.0, 0.0, 0.0]))
    assert subspaces_equal(t, np.array([[0.0], [1.0], [0.0], [0.0]]))


def test_normal_space_at_origin_is_everything():
    rep = weight_rep(1, 1)
    momentum = QuadraticMomentumMap.from_rep(rep)
    data = symplectic_normal_space(rep, momentum, np.zeros(4))
    assert data.dim == 4
    assert np.allclose(data.omega_p, rep.omega)


def test_normal_space_weight11_at_unit_point():
    rep = weight_rep(1, 1)
    momentum = QuadraticMomentumMap.from_rep(rep)
    data = symplectic_normal_space(rep, momentum, np.array([1.0, 0.0, 0.0, 0.0]))
    # second complex factor survives
    assert data.dim == 2
    expected = np.eye(4)[:, 2:]
    assert subspaces_equal(data.basis, expected)
    # induced form is nondegenerate and antisymmetric
    assert np.max(np.abs(data.omega_p + data.omega_p.T)) < 1e-12
    assert np.linalg.svd(data.omega_p, compute_uv=False).min() > 1e-10


def test_normal_space_isotropy_preserves_omega(rng):
    rep = weight_rep(1, 2)
    momentum = QuadraticMomentumMap.from_rep(rep)
    data = symplectic_normal_space(rep, momentum, np.zeros(4))
    from scipy.linalg import expm

    for _ in range(50):
        t = rng.uniform(-2, 2)
        for act in data.isotropy_algebra_action:
            g = expm(t * act)
            assert np.max(np.abs(g.T @ data.omega_p @ g - data.omega_p)) < 1e-8


def test_ses_dimension_counts(rng):
    # dim N_p = dim SN_p + (dim g_x - dim g_p) for the torus weight reps
    for weights in [(1,), (1, 1), (1, 2)]:
        rep = weight_rep(*weights)
        momentum = QuadraticMomentumMap.from_rep(rep)
        for _ in range(20):
            p = rng.standard_normal(rep.dim) * rng.integers(0, 2)
            t_orbit = orbit_tangent(rep, p)
            data = symplectic_normal_space(rep, momentum, p)
            from momap.symplectic import isotropy_algebra_of_rep

            iso = isotropy_algebra_of_rep(rep, p)
            # for a torus, g_x is the whole algebra (coadjoint action trivial)
            dim_gx = rep.n_generators
            dim_gp = iso.shape[1]
            dim_normal = rep.dim - t_orbit.shape[1]
            assert dim_normal == data.dim + (dim_gx - dim_gp)
            assert dim_gx == (dim_gx - dim_gp) + dim_gp