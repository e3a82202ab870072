"""Symplectic linear algebra for group representations.

A SymplecticRep is a real symplectic vector space (V, omega) carrying a
linear action of a compact group: matrices for the algebra generators and
for finite component representatives.  The central construction is the
symplectic normal space at a point — the quotient of ker(dJ) by the orbit
directions it contains — realized concretely as the Euclidean-orthogonal
complement of those orbit directions inside ker(dJ).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .linalg import (
    GEOM_RTOL,
    DegenerateRankError,
    InputError,
    column_space,
    complement_within,
    intersect_subspaces,
    kernel,
    numerical_rank,
    principal_angle_distance,
)


@dataclass
class SymplecticRep:
    """Linear symplectic action: form matrix, algebra generators, components.

    omega is antisymmetric nondegenerate, stored so that
    omega(u, v) = uᵀ Omega v.  Generators must be infinitesimally symplectic
    and satisfy the bracket relations handed in through
    ``structure_constants`` (one generator per subgroup algebra basis
    element).  Component actions must preserve omega exactly up to 1e-10.
    """

    omega: np.ndarray
    generators: list = field(default_factory=list)
    component_actions: list = field(default_factory=list)
    structure_constants: np.ndarray | None = None

    def __post_init__(self):
        self.omega = np.atleast_2d(np.asarray(self.omega, dtype=float))
        if self.omega.size == 0:
            self.omega = self.omega.reshape(0, 0)
        self.generators = [np.asarray(a, dtype=float) for a in self.generators]
        self.component_actions = [np.asarray(a, dtype=float) for a in self.component_actions]
        if not self.component_actions:
            self.component_actions = [np.eye(self.dim)]
        if self.structure_constants is not None:
            self.structure_constants = np.asarray(self.structure_constants, dtype=float)
        self.validate()

    @property
    def dim(self) -> int:
        return self.omega.shape[0]

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def validate(self):
        n = self.dim
        if n % 2 != 0:
            raise InputError("symplectic space must be even dimensional")
        if n == 0:
            return
        if np.max(np.abs(self.omega + self.omega.T)) > TOL.structure:
            raise InputError("omega is not antisymmetric")
        sigma = np.linalg.svd(self.omega, compute_uv=False)
        if sigma.min() <= 1e-10:
            raise InputError("omega is degenerate")
        for a in self.generators:
            if np.max(np.abs(a.T @ self.omega + self.omega @ a)) > 1e-11:
                raise InputError("generator is not infinitesimally symplectic")
        if self.structure_constants is not None:
            c = self.structure_constants
            for i in range(self.n_generators):
                for j in range(self.n_generators):
                    lhs = self.generators[i] @ self.generators[j] - self.generators[j] @ self.generators[i]
                    rhs = sum(c[i, j, k] * self.generators[k] for k in range(self.n_generators))
                    rhs = rhs if self.n_generators else np.zeros((n, n))
                    if np.max(np.abs(lhs - rhs)) > 1e-11:
                        raise InputError("generators do not satisfy the bracket relations")
        for g in self.component_actions:
            if np.max(np.abs(g.T @ self.omega @ g - self.omega)) > TOL.invariance:
                raise InputError("component action does not preserve omega")

    # ----- pointwise geometry ---------------------------------------------
    def algebra_action(self, xi_coeffs) -> np.ndarray:
        xi_coeffs = np.asarray(xi_coeffs, dtype=float)
        if xi_coeffs.shape != (self.n_generators,):
            raise InputError("algebra coefficient vector has wrong length")
        out = np.zeros((self.dim, self.dim))
        for c, a in zip(xi_coeffs, self.generators):
            out += c * a
        return out

    def pairing(self, u, v) -> float:
        return float(np.asarray(u) @ self.omega @ np.asarray(v))


def symplectic_orthogonal(subspace: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """Basis of {v : omega(v, w) = 0 for all w in the subspace}.

    ``subspace`` holds basis vectors as columns and must have full column
    rank; dim(W) + dim(W^omega) equals the ambient dimension exactly.
    """
    omega = np.atleast_2d(np.asarray(omega, dtype=float))
    subspace = np.atleast_2d(np.asarray(subspace, dtype=float))
    if subspace.size == 0:
        return np.eye(omega.shape[0])
    if subspace.shape[0] != omega.shape[0]:
        raise InputError("subspace and omega dimensions do not match")
    if subspace.shape[1] and numerical_rank(subspace, check_ambiguous=False) < subspace.shape[1]:
        raise InputError("subspace basis is rank deficient")
    # orthonormalize first: the span is unchanged and the kernel solve stays
    # well conditioned for nearly dependent input bases
    subspace = column_space(subspace)
    # omega(v, w) = vᵀ Omega w, so the condition is (Omega W)ᵀ v = 0
    return kernel((omega @ subspace).T, rtol=GEOM_RTOL)


def orbit_tangent(rep: SymplecticRep, point) -> np.ndarray:
    """Numerically ranked span of the infinitesimal action {A_i p}."""
    p = np.asarray(point, dtype=float)
    if p.shape != (rep.dim,):
        raise InputError("point has wrong dimension")
    if rep.n_generators == 0:
        return np.zeros((rep.dim, 0))
    cols = np.array([a @ p for a in rep.generators]).T
    return column_space(cols)


@dataclass(frozen=True)
class SymplecticNormalData:
    """Concrete realization of the symplectic normal space at a point.

    ``basis`` spans the Euclidean-orthogonal complement of (T_pO ∩ ker dJ_p)
    inside ker dJ_p; omega_p is the ambient form restricted to that basis;
    isotropy_algebra_action holds the induced matrices of the isotropy
    algebra (one per isotropy basis vector, in ``basis`` coordinates).
    """

    base_point: np.ndarray
    basis: np.ndarray
    omega_p: np.ndarray
    isotropy_algebra: np.ndarray
    isotropy_algebra_action: list

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


def symplectic_normal_space(rep: SymplecticRep, momentum, point) -> SymplecticNormalData:
    """Symplectic normal space ker(dJ_p) / (T_pO ∩ ker dJ_p) at a point.

    ``momentum`` must provide ``differential(p)`` (rows d⟨J, X_i⟩_p).  The
    kernel of dJ_p is cross-validated against the omega-orthogonal of the
    orbit tangent before being used; disagreement raises DegenerateRankError,
    since by the momentum map condition the two must coincide.
    """
    p = np.asarray(point, dtype=float)
    djac = momentum.differential(p)
    ker_dj = kernel(djac, rtol=GEOM_RTOL, check_ambiguous=True)
    t_orbit = orbit_tangent(rep, p)
    t_orbit_omega = symplectic_orthogonal(t_orbit, rep.omega) if t_orbit.shape[1] else np.eye(rep.dim)
    angle = principal_angle_distance(ker_dj, t_orbit_omega)
    if angle > TOL.subspace:
        raise DegenerateRankError(
            f"ker dJ_p and the symplectic orthogonal of the orbit disagree "
            f"(principal angle {angle:.2e}); the rank computation is untrustworthy"
        )

    orbit_in_kernel = intersect_subspaces(t_orbit, ker_dj)
    basis = complement_within(orbit_in_kernel, ker_dj)

    omega_p = basis.T @ rep.omega @ basis
    if basis.shape[1]:
        sigma = np.linalg.svd(omega_p, compute_uv=False)
        if sigma.min() <= 1e-10:
            raise DegenerateRankError("induced form on the normal space is degenerate")

    iso = isotropy_algebra_of_rep(rep, p)
    actions = []
    for k in range(iso.shape[1]):
        a = rep.algebra_action(iso[:, k])
        actions.append(basis.T @ a @ basis)
    return SymplecticNormalData(p, basis, omega_p, iso, actions)


def isotropy_algebra_of_rep(rep: SymplecticRep, point) -> np.ndarray:
    """Orthonormal basis of {xi : A(xi) p = 0} in generator coordinates."""
    p = np.asarray(point, dtype=float)
    if rep.n_generators == 0:
        return np.zeros((0, 0))
    cols = np.array([a @ p for a in rep.generators]).T
    return kernel(cols, rtol=GEOM_RTOL)


def standard_omega(n_pairs: int) -> np.ndarray:
    """Block-diagonal sum of [[0, 1], [-1, 0]]: omega = sum dx_i ∧ dy_i."""
    omega = np.zeros((2 * n_pairs, 2 * n_pairs))
    for i in range(n_pairs):
        omega[2 * i, 2 * i + 1] = 1.0
        omega[2 * i + 1, 2 * i] = -1.0
    return omega


def darboux_omega(n: int) -> np.ndarray:
    """The (q, p)-split convention [[0, I], [-I, 0]]."""
    omega = np.zeros((2 * n, 2 * n))
    omega[:n, n:] = np.eye(n)
    omega[n:, :n] = -np.eye(n)
    return omega
