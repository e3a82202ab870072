import numpy as np
import pytest

from momap.groups import GroupElement
from momap.linalg import InputError
from momap.models import (
    builtin_model,
    su2_adjoint_slice,
    su2su2_circle,
    torus_weight1,
    torus_weight11,
    z2_extension,
)
from momap.momentum import (
    QuadraticMomentumMap,
    equivariance_residual,
    infinitesimal_action,
    kernel_image_identities,
    momentum_condition_residual,
    quadratic_differential_check,
    rep_group_action,
)

W1 = torus_weight1()
W11 = torus_weight11()
SU2AD = su2_adjoint_slice()
SU2SU2 = su2su2_circle()


def test_quadratic_momentum_weight1_hand_value():
    # omega(a,b) = a1 b2 - a2 b1, generator [[0,-1],[1,0]], v = (1,0):
    # value -1/2 on the generator
    v = np.array([1.0, 0.0])
    assert W1.momentum(v)[0] == pytest.approx(-0.5)
    assert np.allclose(W1.momentum(np.zeros(2)), 0.0)


def test_momentum_vanishes_on_fixed_vectors():
    # V^H: swap-invariant vectors of the z2 model (and any vector under a
    # trivial action) have zero momentum
    model = z2_extension()
    v = np.array([0.3, -1.2, 0.3, -1.2])  # fixed by the swap
    assert model.quadratic_momentum(v).shape == (0,)
    # torus weight-0 line: J identically zero
    from momap.models import torus_weights_model

    trivial = torus_weights_model([[0]], name="trivial")
    assert np.allclose(trivial.momentum(np.array([1.0, 2.0])), 0.0)


def test_slice_momentum_alpha_only():
    model = SU2SU2
    alpha = np.array([0.7, 0.1, -0.2, 0.4, 0.3])
    out = model.slice_momentum(alpha, np.zeros(0))
    expected = model.h0_basis @ alpha
    assert np.allclose(out, expected)
    # first factor carries (t, x1, y1), second (-t, x2, y2)
    assert out[0] == pytest.approx(0.7)
    assert out[3] == pytest.approx(-0.7)


def test_slice_momentum_with_quadratic_part():
    model = SU2AD
    v = np.array([1.0, 0.0, 0.0, 0.0])
    out = model.slice_momentum(np.zeros(0), v)
    # spin-1/2 cone: the coefficient norm of J_V(v) is |v|^2 / 2
    assert np.linalg.norm(out) == pytest.approx(0.5, rel=1e-12)
    # hand value: only the torus component survives at v = (1, 0)
    assert np.allclose(out, [-0.5, 0.0, 0.0])


def test_momentum_condition_sampled(rng):
    for model in (W1, W11, SU2AD):
        res = momentum_condition_residual(model.rep, model.momentum, rng, samples=100)
        assert res < 1e-9


def test_equivariance_sampled(rng):
    for model in (W1, W11, SU2AD):
        res = equivariance_residual(model.rep, model.momentum, model.subgroup, rng, samples=100)
        assert res < 1e-10


def test_infinitesimal_action_hand_case():
    v, resid = infinitesimal_action(W1.rep, W1.momentum, np.array([1.0]), np.array([1.0, 0.0]))
    assert np.allclose(v, [0.0, 1.0])
    assert resid < 1e-14
    v0, _ = infinitesimal_action(W1.rep, W1.momentum, np.array([0.0]), np.array([1.0, 0.0]))
    assert np.allclose(v0, 0.0)


def test_kernel_image_identities_weight11():
    report = kernel_image_identities(W11.rep, W11.momentum, np.array([1.0, 0.0, 0.0, 0.0]))
    assert report["kernel_angle"] < 1e-8
    assert report["annihilator_angle"] < 1e-8
    assert report["dims"]["kernel"] == 3
    assert report["dims"]["isotropy"] == 0


def test_kernel_image_identities_at_origin():
    report = kernel_image_identities(W11.rep, W11.momentum, np.zeros(4))
    assert report["dims"]["kernel"] == 4
    assert report["dims"]["isotropy"] == 1


def test_kernel_image_identities_sweep(rng):
    for model in (W1, W11, SU2AD):
        for _ in range(30):
            p = rng.standard_normal(model.rep.dim)
            report = kernel_image_identities(model.rep, model.momentum, p)
            assert report["kernel_angle"] < 1e-8
            assert report["annihilator_angle"] < 1e-8


def test_quadratic_differential_exact_at_origin(rng):
    for model in (W11, SU2AD):
        v = rng.standard_normal(model.rep.dim)
        out = quadratic_differential_check(model.rep, model.momentum, np.zeros(model.rep.dim), v)
        assert out["relative_error"] < 1e-6


def test_quadratic_differential_weight11_normal_direction():
    p = np.array([1.0, 0.0, 0.0, 0.0])
    v = np.array([0.0, 0.0, 0.7, -0.4])
    out = quadratic_differential_check(W11.rep, W11.momentum, p, v)
    assert out["relative_error"] < 1e-4
    assert out["normal_dim"] == 2


def test_quadratic_differential_rejects_nonkernel():
    p = np.array([1.0, 0.0, 0.0, 0.0])
    with pytest.raises(InputError):
        quadratic_differential_check(W11.rep, W11.momentum, p, np.array([1.0, 0.0, 0.0, 0.0]))


def test_quadratic_differential_sweep(rng):
    for model in (W1, W11, SU2AD):
        count = 0
        while count < 30:
            p = rng.standard_normal(model.rep.dim)
            from momap.linalg import kernel

            basis = kernel(model.momentum.differential(p))
            if basis.shape[1] == 0:
                continue
            v = basis @ rng.standard_normal(basis.shape[1])
            out = quadratic_differential_check(model.rep, model.momentum, p, v)
            assert out["relative_error"] < 1e-4
            count += 1


def test_normal_form_momentum_trivial_cases():
    model = SU2AD
    anchor = np.array([0.5, 0.0, 0.0])
    ident = model.group.identity()
    out = model.normal_form_momentum(anchor, ident, np.zeros(1), np.zeros(4))
    assert np.allclose(out, anchor)
    # g = identity reduces to an affine expression in (beta, J_V(v))
    v = np.array([1.0, 0.0, 0.0, 0.0])
    out2 = model.normal_form_momentum(anchor, ident, np.zeros(1), v)
    stab = model.group.coadjoint_stabilizer_algebra(anchor)
    assert stab.shape[1] == 1
    # the quadratic part enters only through the stabilizer directions
    delta = out2 - anchor
    # delta must be parallel to the splitting image of the stabilizer
    gram = model.group.invariant_inner_product
    sigma = gram @ stab @ np.linalg.inv(stab.T @ gram @ stab)
    coef = np.linalg.lstsq(sigma, delta, rcond=None)[0]
    assert np.linalg.norm(sigma @ coef - delta) < 1e-12


def test_normal_form_equivariance(rng):
    model = SU2AD
    anchor = np.array([0.5, 0.0, 0.0])
    for _ in range(50):
        g = GroupElement(0, rng.standard_normal(3))
        h = GroupElement(0, rng.standard_normal(3))
        beta = rng.standard_normal(1)
        v = rng.standard_normal(4)
        u = model.group.element_matrix(g) @ model.group.element_matrix(h)
        lhs = model.normal_form_momentum(anchor, u, beta, v)
        rhs = model.group.coadjoint_action(g, model.normal_form_momentum(anchor, h, beta, v))
        assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_stored_momentum_decouples_from_omega():
    # flipping omega while keeping the stored momentum breaks the momentum
    # map condition — the negative control behind the verify suite
    rep = torus_weight1().rep
    flipped = type(rep)(-rep.omega, rep.generators, rep.component_actions)
    momentum = QuadraticMomentumMap.from_rep(rep)  # stored, not re-derived
    rng = np.random.default_rng(5)
    res = momentum_condition_residual(flipped, momentum, rng, samples=20)
    assert res > 1e-3


def test_group_action_on_rep_is_symplectic(rng):
    for model in (W11, SU2AD):
        for _ in range(20):
            comp = int(rng.integers(model.subgroup.n_components))
            coeffs = rng.standard_normal(model.subgroup.dim)
            a = rep_group_action(model.rep, model.subgroup, comp, coeffs)
            assert np.max(np.abs(a.T @ model.rep.omega @ a - model.rep.omega)) < 1e-10
