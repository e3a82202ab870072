"""Momentum maps of linear symplectic actions and their differential identities.

The canonical momentum map of a linear symplectic action is quadratic,
⟨J(v), X_i⟩ = ½ vᵀ Q_i v with Q_i = A_iᵀ Omega (symmetric whenever A_i is
infinitesimally symplectic).  The Q_i are stored explicitly rather than
re-derived at call sites, so a corrupted form and a stored momentum map can
genuinely disagree — that is what the verification suites test.

Sign conventions (also tabulated in the README):
  omega(u, v) = uᵀ Omega v;      ι_{X_f} omega = df  ⇒  X_f = Omega⁻ᵀ ∇f;
  {f, h} = omega(X_f, X_h) = -∇fᵀ Omega⁻¹ ∇h;   ⟨J(v), X⟩ = ½ omega(X·v, v).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .groups import CompactGroupModel, Subgroup
from .linalg import GEOM_RTOL, InputError, kernel, principal_angle_distance
from .symplectic import (
    SymplecticRep,
    SymplecticNormalData,
    isotropy_algebra_of_rep,
    orbit_tangent,
    symplectic_normal_space,
    symplectic_orthogonal,
)


@dataclass
class QuadraticMomentumMap:
    """⟨J(v), X_i⟩ = ½ vᵀ Q_i v, one symmetric matrix per algebra generator."""

    matrices: list

    def __post_init__(self):
        self.matrices = [np.asarray(q, dtype=float) for q in self.matrices]
        for q in self.matrices:
            if np.max(np.abs(q - q.T), initial=0.0) > 1e-11:
                raise InputError("momentum matrix is not symmetric")

    @classmethod
    def from_rep(cls, rep: SymplecticRep) -> "QuadraticMomentumMap":
        return cls([a.T @ rep.omega for a in rep.generators])

    @property
    def n_components(self) -> int:
        return len(self.matrices)

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        return np.array([0.5 * v @ q @ v for q in self.matrices])

    def component(self, xi_coeffs) -> np.ndarray:
        """The symmetric matrix of ⟨J(·), xi⟩ for an algebra element xi."""
        xi_coeffs = np.asarray(xi_coeffs, dtype=float)
        dim = self.matrices[0].shape[0] if self.matrices else 0
        out = np.zeros((dim, dim))
        for c, q in zip(xi_coeffs, self.matrices):
            out += c * q
        return out

    def differential(self, p) -> np.ndarray:
        """dJ_p as a matrix (rows are gradients of the components)."""
        p = np.asarray(p, dtype=float)
        if not self.matrices:
            return np.zeros((0, p.size))
        return np.array([q @ p for q in self.matrices])

    def gradient(self, xi_coeffs, p) -> np.ndarray:
        return self.component(xi_coeffs) @ p


def infinitesimal_action(rep: SymplecticRep, momentum: QuadraticMomentumMap, xi_coeffs, p):
    """The generating vector field A(xi) p, with its defining identity.

    Returns (vector, residual) where the residual measures
    ‖omega(A(xi)p, ·) - d⟨J, xi⟩_p‖ against the stored momentum map.
    """
    p = np.asarray(p, dtype=float)
    vec = rep.algebra_action(xi_coeffs) @ p
    lhs = rep.omega.T @ vec  # covector omega(vec, ·)
    rhs = momentum.gradient(xi_coeffs, p)
    return vec, float(np.linalg.norm(lhs - rhs))


def momentum_condition_residual(rep: SymplecticRep, momentum: QuadraticMomentumMap,
                                rng: np.random.Generator, samples: int = 100,
                                fd_step: float = 1e-6) -> float:
    """Max residual of ι_{A(xi) p} omega = d⟨J, xi⟩_p over random (xi, p).

    The right side is evaluated by central finite differences of the stored
    momentum values, so a corrupted omega/momentum pair fails here.
    """
    if rep.dim == 0 or rep.n_generators == 0:
        return 0.0
    worst = 0.0
    for _ in range(samples):
        xi = rng.standard_normal(rep.n_generators)
        p = rng.standard_normal(rep.dim)
        vec = rep.algebra_action(xi) @ p
        lhs = rep.omega.T @ vec
        grad = np.zeros(rep.dim)
        h = fd_step * (1.0 + np.linalg.norm(p))
        for i in range(rep.dim):
            e = np.zeros(rep.dim)
            e[i] = h
            grad[i] = (momentum(p + e) @ xi - momentum(p - e) @ xi) / (2 * h)
        worst = max(worst, float(np.linalg.norm(lhs - grad)) / max(1.0, np.linalg.norm(p)))
    return worst


def equivariance_residual(rep: SymplecticRep, momentum: QuadraticMomentumMap,
                          subgroup: Subgroup, rng: np.random.Generator,
                          samples: int = 100) -> float:
    """Max ‖J(g·v) - Ad*(g) J(v)‖ over sampled group elements and points."""
    if rep.dim == 0:
        return 0.0
    worst = 0.0
    for _ in range(samples):
        comp = int(rng.integers(subgroup.n_components))
        coeffs = rng.standard_normal(subgroup.dim)
        action = rep_group_action(rep, subgroup, comp, coeffs)
        v = rng.standard_normal(rep.dim)
        coad = subgroup_coadjoint(subgroup, comp, coeffs)
        lhs = momentum(action @ v)
        rhs = coad @ momentum(v)
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    return worst


def rep_group_action(rep: SymplecticRep, subgroup: Subgroup, comp: int, h_coeffs) -> np.ndarray:
    """Finite-component action composed with the exponentiated algebra action."""
    from scipy.linalg import expm

    a = rep.algebra_action(np.asarray(h_coeffs, dtype=float)) if rep.n_generators else np.zeros((rep.dim, rep.dim))
    return rep.component_actions[comp] @ expm(a)


def subgroup_coadjoint(subgroup: Subgroup, comp: int, h_coeffs) -> np.ndarray:
    """Ad*(h) of the abstract subgroup on h* coefficients."""
    d = subgroup.dim
    if d == 0:
        return np.zeros((0, 0))
    # adjoint of exp(X) on h, from h's own structure constants
    from scipy.linalg import expm as m_expm

    ad = np.einsum("i,ijk->kj", np.asarray(h_coeffs, dtype=float), subgroup.structure_constants())
    adj = m_expm(ad)
    # component part: Ad of the finite rep on the embedded algebra, pulled back
    gamma = subgroup.finite_reps[comp]
    amb = subgroup.ambient
    pinv = np.linalg.pinv(subgroup.inclusion)
    cols = []
    gamma_inv = np.linalg.inv(gamma)
    for j in range(d):
        mat = amb.algebra.realize(subgroup.embed(np.eye(d)[j]))
        cols.append(pinv @ amb.algebra_coords(gamma @ mat @ gamma_inv))
    comp_adj = np.array(cols).T
    full = comp_adj @ adj
    return np.linalg.inv(full).T


# --------------------------------------------------------------------------
# Hamiltonian slice models
# --------------------------------------------------------------------------


@dataclass
class HamiltonianModel:
    """Local model of a Hamiltonian action: J(α, v) = α + p(J_V(v)) on h⁰ ⊕ V.

    Holds the ambient group G, the subgroup H with its symplectic
    representation (V, omega_V), a basis of the annihilator h⁰ ⊂ g*
    (columns, in dual coordinates), and a splitting p : h* → g* of the
    restriction map.  The splitting defaults to the invariant-metric one.
    """

    name: str
    group: CompactGroupModel
    subgroup: Subgroup
    rep: SymplecticRep
    momentum: QuadraticMomentumMap = None
    h0_basis: np.ndarray | None = None
    splitting: np.ndarray | None = None
    sampling: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.momentum is None:
            self.momentum = QuadraticMomentumMap.from_rep(self.rep)
        if self.h0_basis is None:
            self.h0_basis = self.subgroup.annihilator_basis()
        self.h0_basis = np.atleast_2d(np.asarray(self.h0_basis, dtype=float))
        if self.h0_basis.size == 0:
            self.h0_basis = self.h0_basis.reshape(self.group.dim, 0)
        if self.splitting is None:
            self.splitting = self.subgroup.orthogonal_splitting()
        self.splitting = np.atleast_2d(np.asarray(self.splitting, dtype=float))
        if self.splitting.size == 0:
            self.splitting = self.splitting.reshape(self.group.dim, 0)
        self._h0_pinv = np.linalg.pinv(self.h0_basis) if self.h0_dim else np.zeros((0, self.group.dim))
        self.validate()

    # dimensions ------------------------------------------------------------
    @property
    def h0_dim(self) -> int:
        return self.h0_basis.shape[1]

    @property
    def v_dim(self) -> int:
        return self.rep.dim

    @property
    def slice_dim(self) -> int:
        return self.h0_dim + self.v_dim

    def validate(self):
        g_dim, h_dim = self.group.dim, self.subgroup.dim
        if self.h0_basis.shape[0] != g_dim:
            raise InputError("h0 basis lives in the wrong space")
        if self.h0_dim != g_dim - h_dim:
            raise InputError("h0 basis dimension must equal dim g - dim h")
        pairing = self.subgroup.restriction_matrix() @ self.h0_basis
        if pairing.size and np.max(np.abs(pairing)) > TOL.structure:
            raise InputError("h0 basis does not annihilate the subalgebra")
        if h_dim:
            if self.splitting.shape != (g_dim, h_dim):
                raise InputError("splitting has wrong shape")
            resid = self.subgroup.restriction_matrix() @ self.splitting - np.eye(h_dim)
            if np.max(np.abs(resid)) > TOL.structure:
                raise InputError("splitting does not split the restriction map")
        if self.rep.n_generators != h_dim:
            raise InputError("symplectic representation must have one generator per h basis element")
        if len(self.rep.component_actions) != self.subgroup.n_components:
            raise InputError("component actions must match subgroup components")

    # slice coordinates -------------------------------------------------------
    def split_point(self, point):
        point = np.asarray(point, dtype=float)
        if point.shape != (self.slice_dim,):
            raise InputError("slice point has wrong dimension")
        return point[: self.h0_dim], point[self.h0_dim :]

    def join_point(self, alpha, v) -> np.ndarray:
        return np.concatenate([np.asarray(alpha, dtype=float), np.asarray(v, dtype=float)])

    # the maps ------------------------------------------------------------------
    def quadratic_momentum(self, v) -> np.ndarray:
        """J_V(v) in h* coordinates."""
        return self.momentum(v) if self.v_dim else np.zeros(self.subgroup.dim)

    def slice_momentum(self, alpha, v) -> np.ndarray:
        """J(α, v) = α + p(J_V(v)) in g* coordinates."""
        alpha = np.asarray(alpha, dtype=float)
        if alpha.shape != (self.h0_dim,):
            raise InputError("alpha has wrong dimension")
        out = self.h0_basis @ alpha
        if self.subgroup.dim:
            out = out + self.splitting @ self.quadratic_momentum(v)
        return out

    def slice_momentum_point(self, point) -> np.ndarray:
        alpha, v = self.split_point(point)
        return self.slice_momentum(alpha, v)

    def slice_momentum_differential(self, point) -> np.ndarray:
        """d(slice momentum) at a point, as a (dim g x slice_dim) matrix."""
        _, v = self.split_point(point)
        left = self.h0_basis
        if self.v_dim and self.subgroup.dim:
            right = self.splitting @ self.momentum.differential(v)
        else:
            right = np.zeros((self.group.dim, self.v_dim))
        return np.hstack([left, right])

    def normal_form_momentum(self, anchor, g, beta_coords, v, sigma=None) -> np.ndarray:
        """Anchored normal-form momentum map g · (anchor + sigma(beta + p(J_V(v)))).

        This is the Marle–Guillemin–Sternberg shape.  ``anchor`` is a point
        of g* whose stabilizer algebra s must contain h; ``sigma`` is a
        splitting s* → g* of the restriction map, defaulting to the
        invariant-metric one (columns indexed by an orthonormal basis of s);
        ``beta_coords`` are s*-coordinates in that basis.  The quadratic
        momentum of v enters through the model splitting, restricted to s*.
        """
        anchor = np.asarray(anchor, dtype=float)
        stab = self.group.coadjoint_stabilizer_algebra(anchor)
        if sigma is None:
            gram = self.group.invariant_inner_product
            if stab.shape[1]:
                sigma = gram @ stab @ np.linalg.inv(stab.T @ gram @ stab)
            else:
                sigma = np.zeros((self.group.dim, 0))
        beta_coords = np.asarray(beta_coords, dtype=float)
        if beta_coords.shape != (sigma.shape[1],):
            raise InputError("beta has wrong dimension for the supplied splitting")
        inner = beta_coords.copy()
        if self.subgroup.dim:
            # restrict p(J_V(v)) in g* to s*-coordinates via the dual pairing
            inner = inner + stab.T @ (self.splitting @ self.quadratic_momentum(v))
        total = anchor + (sigma @ inner if sigma.shape[1] else 0.0)
        if isinstance(g, np.ndarray):
            return self.group.coadjoint_of_matrix(g) @ total
        return self.group.coadjoint_action(g, total)

    # group action on the slice ---------------------------------------------------
    def h0_coadjoint_generator(self, zeta) -> np.ndarray:
        """Matrix of the h-algebra element zeta acting on h⁰ coordinates."""
        amb = self.group.coad_algebra(self.subgroup.embed(zeta))
        return self._h0_pinv @ amb @ self.h0_basis

    def slice_action_generator(self, zeta) -> np.ndarray:
        """Infinitesimal action of zeta ∈ h on h⁰ ⊕ V coordinates."""
        top = self.h0_coadjoint_generator(zeta)
        bottom = self.rep.algebra_action(zeta) if self.v_dim else np.zeros((0, 0))
        out = np.zeros((self.slice_dim, self.slice_dim))
        out[: self.h0_dim, : self.h0_dim] = top
        out[self.h0_dim :, self.h0_dim :] = bottom
        return out

    def slice_component_action(self, comp: int) -> np.ndarray:
        """Action of the component representative on h⁰ ⊕ V coordinates."""
        gamma = self.subgroup.finite_reps[comp]
        amb_ad = self.group.adjoint_of_matrix(gamma)
        amb_coad = np.linalg.inv(amb_ad).T if self.group.dim else amb_ad
        top = self._h0_pinv @ amb_coad @ self.h0_basis
        out = np.zeros((self.slice_dim, self.slice_dim))
        out[: self.h0_dim, : self.h0_dim] = top
        if self.v_dim:
            out[self.h0_dim :, self.h0_dim :] = self.rep.component_actions[comp]
        return out

    def slice_group_action(self, comp: int, h_coeffs) -> np.ndarray:
        from scipy.linalg import expm

        gen = np.zeros((self.slice_dim, self.slice_dim))
        h_coeffs = np.asarray(h_coeffs, dtype=float)
        if self.subgroup.dim:
            gen = self.slice_action_generator_weighted(h_coeffs)
        return self.slice_component_action(comp) @ expm(gen)

    def slice_action_generator_weighted(self, h_coeffs) -> np.ndarray:
        out = np.zeros((self.slice_dim, self.slice_dim))
        for c, e in zip(np.asarray(h_coeffs, dtype=float), np.eye(self.subgroup.dim)):
            out += c * self.slice_action_generator(e)
        return out

    def slice_rep(self) -> SymplecticRep | None:
        """The V part as a standalone SymplecticRep (None when V = 0)."""
        if self.v_dim == 0:
            return None
        return self.rep


# --------------------------------------------------------------------------
# differential identities
# --------------------------------------------------------------------------


def kernel_image_identities(rep: SymplecticRep, momentum: QuadraticMomentumMap, p) -> dict:
    """The two subspace identities behind the infinitesimal momentum geometry.

    Computes independently (a) the omega-orthogonal of the orbit tangent and
    ker dJ_p, (b) the isotropy algebra and the annihilator of Im dJ_p, and
    reports the principal-angle distance of each pair.
    """
    p = np.asarray(p, dtype=float)
    t_orbit = orbit_tangent(rep, p)
    t_orbit_omega = symplectic_orthogonal(t_orbit, rep.omega) if rep.dim else np.zeros((0, 0))
    djac = momentum.differential(p) if rep.dim else np.zeros((momentum.n_components, 0))
    ker_dj = kernel(djac, rtol=GEOM_RTOL, check_ambiguous=True) if rep.dim else np.zeros((0, 0))

    iso = isotropy_algebra_of_rep(rep, p)
    # annihilator of Im(dJ_p) inside the algebra: Im(A)^perp = ker(Aᵀ)
    ann = kernel(djac.T, rtol=GEOM_RTOL, check_ambiguous=True) if momentum.n_components else np.zeros((0, 0))

    return {
        "kernel_angle": principal_angle_distance(t_orbit_omega, ker_dj),
        "annihilator_angle": principal_angle_distance(iso, ann),
        "dims": {
            "orbit": t_orbit.shape[1],
            "kernel": ker_dj.shape[1],
            "isotropy": iso.shape[1],
        },
    }


def quadratic_differential_check(rep: SymplecticRep, momentum: QuadraticMomentumMap,
                                 p, v, fd_scale: float = 1e-4) -> dict:
    """Finite-difference d²J_p(v) against the normal-space quadratic momentum.

    v must lie in ker dJ_p (residual below 1e-8 relative to scale).  The
    second-order central stencil of each ⟨J, xi⟩ along v, paired against the
    isotropy algebra (the cokernel directions), is compared with
    ⟨J_SN([v]), xi⟩ computed on the realized normal space.
    """
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    djac = momentum.differential(p)
    resid = np.linalg.norm(djac @ v)
    if resid > 1e-8 * max(1.0, np.linalg.norm(v)) * max(1.0, np.linalg.norm(p)):
        raise InputError(f"direction is not in ker dJ_p (residual {resid:.2e})")

    normal = symplectic_normal_space(rep, momentum, p)
    iso = normal.isotropy_algebra

    h = fd_scale * (1.0 + np.linalg.norm(p))
    fd = 0.5 * (momentum(p + h * v) - 2.0 * momentum(p) + momentum(p - h * v)) / h**2

    proj = normal.basis.T @ v  # [v] in normal-space coordinates
    errors = []
    for k in range(iso.shape[1]):
        xi = iso[:, k]
        lhs = float(fd @ xi)
        action = normal.isotropy_algebra_action[k]
        # ⟨J_SN([v]), xi⟩ = ½ omega_p(xi·[v], [v]) = ½ (xi·[v])ᵀ Omega_p [v]
        rhs = 0.5 * float((action @ proj) @ normal.omega_p @ proj)
        scale = max(abs(lhs), abs(rhs), 1e-12)
        errors.append(abs(lhs - rhs) / scale)
    return {
        "relative_error": max(errors) if errors else 0.0,
        "normal_dim": normal.dim,
        "isotropy_dim": iso.shape[1],
    }
