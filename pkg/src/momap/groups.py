"""Compact groups of the family (T^k x SU(2)^m) ⋊ Γ and their Lie theory.

A group is held concretely: a real Lie algebra basis realized by matrices in
a faithful defining representation (2x2 rotation blocks for torus factors,
2x2 special-unitary blocks for SU(2) factors), plus explicit matrices for a
finite component group Γ acting by conjugation.  Everything downstream —
exponentials, (co)adjoint actions, stabilizer algebras — is plain matrix
arithmetic in this realization.

Conventions
-----------
* algebra elements are coefficient vectors against ``basis_matrices``;
* dual (coadjoint) vectors are coefficient vectors against the dual basis,
  so the pairing ⟨mu, xi⟩ is the Euclidean dot product of coefficients;
* Ad(g) is the matrix of X ↦ g X g⁻¹ in basis coordinates and
  Ad*(g) = (Ad(g)⁻¹)ᵀ, so exp/Ad/Ad* compose covariantly;
* ad(X) has columns [X, e_j] and coad(X) = -ad(X)ᵀ.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .config import TOL
from .linalg import GEOM_RTOL, InputError, column_space, kernel, orthonormalize

# su(2) basis: i*sigma_z, the real rotation, i*sigma_x.  Brackets satisfy
# [X1, X2] = 2 X3 and cyclic; -Tr(Xa Xb) = 2 delta_ab.
SU2_BASIS = [
    np.array([[1j, 0], [0, -1j]]),
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[0, 1j], [1j, 0]]),
]
ROT_GENERATOR = np.array([[0.0, -1.0], [1.0, 0.0]])


@dataclass(frozen=True)
class LieAlgebraBasis:
    """Real Lie algebra presented by structure constants and matrix realizations."""

    dim: int
    structure_constants: np.ndarray  # c[i, j, k] with [X_i, X_j] = sum_k c[i,j,k] X_k
    basis_matrices: list  # complex square matrices realizing the basis

    def __post_init__(self):
        c = np.asarray(self.structure_constants, dtype=float)
        if c.shape != (self.dim, self.dim, self.dim):
            raise InputError("structure constant tensor has wrong shape")
        if self.dim != len(self.basis_matrices):
            raise InputError("basis matrix count does not match dim")
        object.__setattr__(self, "structure_constants", c)
        self.validate()

    def validate(self):
        c = self.structure_constants
        if np.max(np.abs(c + np.swapaxes(c, 0, 1)), initial=0.0) > TOL.structure:
            raise InputError("structure constants are not antisymmetric")
        if self.jacobi_residual() > TOL.structure:
            raise InputError("structure constants violate the Jacobi identity")
        if self.commutator_residual() > TOL.structure:
            raise InputError("basis matrices do not realize the structure constants")

    def jacobi_residual(self) -> float:
        c = self.structure_constants
        if self.dim == 0:
            return 0.0
        # sum over cyclic permutations of [[X_i, X_j], X_k]
        t = np.einsum("ijm,mkl->ijkl", c, c)
        cyc = t + np.einsum("jkm,mil->ijkl", c, c) + np.einsum("kim,mjl->ijkl", c, c)
        return float(np.max(np.abs(cyc)))

    def commutator_residual(self) -> float:
        res = 0.0
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = self.basis_matrices[i] @ self.basis_matrices[j] - self.basis_matrices[j] @ self.basis_matrices[i]
                rhs = sum(
                    self.structure_constants[i, j, k] * self.basis_matrices[k]
                    for k in range(self.dim)
                )
                if self.dim:
                    res = max(res, float(np.max(np.abs(lhs - rhs))))
        return res

    def realize(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.dim,):
            raise InputError("coefficient vector has wrong length")
        n = self.basis_matrices[0].shape[0] if self.dim else 0
        out = np.zeros((n, n), dtype=complex)
        for c, b in zip(coeffs, self.basis_matrices):
            out += c * b
        return out

    def ad_matrix(self, coeffs) -> np.ndarray:
        """Matrix of ad_X with X = sum coeffs_i X_i (columns are [X, e_j])."""
        coeffs = np.asarray(coeffs, dtype=float)
        return np.einsum("i,ijk->kj", coeffs, self.structure_constants)

    def coad_matrix(self, coeffs) -> np.ndarray:
        return -self.ad_matrix(coeffs).T


@dataclass(frozen=True)
class GroupElement:
    """Element gamma * exp(X) of a CompactGroupModel."""

    component: int
    algebra: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "algebra", np.asarray(self.algebra, dtype=float))
        if not np.all(np.isfinite(self.algebra)):
            raise InputError("non-finite algebra coefficients in group element")


@dataclass
class CompactGroupModel:
    """A compact group of the supported family, realized by matrices.

    component_reps holds the full list of component representatives, the
    identity first; all must act on the algebra span by conjugation.
    """

    algebra: LieAlgebraBasis
    component_reps: list = field(default_factory=list)
    invariant_inner_product: np.ndarray | None = None

    def __post_init__(self):
        n = self.matrix_size
        if not self.component_reps:
            self.component_reps = [np.eye(n, dtype=complex)]
        self.component_reps = [np.asarray(g, dtype=complex) for g in self.component_reps]
        if self.invariant_inner_product is None:
            self.invariant_inner_product = np.eye(self.dim)
        self.invariant_inner_product = np.asarray(self.invariant_inner_product, dtype=float)
        self._basis_design = _basis_design_matrix(self.algebra.basis_matrices)
        self._validate_components()

    # ----- basic structure ------------------------------------------------
    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def matrix_size(self) -> int:
        return self.algebra.basis_matrices[0].shape[0] if self.dim else len_of_first(self.component_reps)

    @property
    def n_components(self) -> int:
        return len(self.component_reps)

    def identity(self) -> GroupElement:
        return GroupElement(0, np.zeros(self.dim))

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise InputError("bracket arguments must be algebra coefficient vectors")
        return np.einsum("ijk,i,j->k", self.algebra.structure_constants, x, y)

    def exp_algebra(self, coeffs, t: float = 1.0) -> np.ndarray:
        """exp(t X) in the defining representation (Padé scaling-and-squaring)."""
        coeffs = np.asarray(coeffs, dtype=float)
        if not (np.all(np.isfinite(coeffs)) and np.isfinite(t)):
            raise InputError("non-finite input to exp")
        if self.dim == 0:
            return np.eye(self.matrix_size, dtype=complex)
        return expm(t * self.algebra.realize(coeffs))

    def element_matrix(self, g: GroupElement) -> np.ndarray:
        if not 0 <= g.component < self.n_components:
            raise InputError("component index out of range")
        return self.component_reps[g.component] @ self.exp_algebra(g.algebra)

    # ----- adjoint machinery ------------------------------------------------
    def algebra_coords(self, matrix: np.ndarray, tol: float = 1e-9) -> np.ndarray:
        """Coefficients of a matrix in the algebra basis; error if outside the span."""
        if self.dim == 0:
            if np.max(np.abs(matrix), initial=0.0) > tol:
                raise InputError("matrix does not lie in the (zero) algebra")
            return np.zeros(0)
        target = np.concatenate([matrix.real.ravel(), matrix.imag.ravel()])
        coeffs, *_ = np.linalg.lstsq(self._basis_design, target, rcond=None)
        residual = np.linalg.norm(self._basis_design @ coeffs - target)
        if residual > tol * max(1.0, np.linalg.norm(target)):
            raise InputError(f"matrix leaves the algebra span (residual {residual:.2e})")
        return coeffs

    def adjoint_of_matrix(self, u: np.ndarray) -> np.ndarray:
        """Ad(u) in basis coordinates for a defining-representation matrix u."""
        cols = []
        u_inv = np.linalg.inv(u)
        for b in self.algebra.basis_matrices:
            cols.append(self.algebra_coords(u @ b @ u_inv))
        return np.array(cols).T if cols else np.zeros((0, 0))

    def adjoint(self, g: GroupElement) -> np.ndarray:
        return self.adjoint_of_matrix(self.element_matrix(g))

    def coadjoint(self, g: GroupElement) -> np.ndarray:
        ad = self.adjoint(g)
        return np.linalg.inv(ad).T if self.dim else ad

    def coadjoint_of_matrix(self, u: np.ndarray) -> np.ndarray:
        ad = self.adjoint_of_matrix(u)
        return np.linalg.inv(ad).T if self.dim else ad

    def coadjoint_action(self, g: GroupElement, xi_dual) -> np.ndarray:
        """Ad*(g) applied to a dual coefficient vector."""
        xi_dual = np.asarray(xi_dual, dtype=float)
        if xi_dual.shape != (self.dim,):
            raise InputError("dual vector has wrong length")
        return self.coadjoint(g) @ xi_dual

    def coad_algebra(self, coeffs) -> np.ndarray:
        """Infinitesimal coadjoint action coad(X) = -ad(X)ᵀ."""
        return self.algebra.coad_matrix(coeffs)

    def dual_gram(self) -> np.ndarray:
        return np.linalg.inv(self.invariant_inner_product) if self.dim else np.zeros((0, 0))

    # ----- sampling ---------------------------------------------------------
    def sample_elements(self, rng: np.random.Generator, count: int, scale: float = 1.0):
        """Pseudo-Haar sample: uniform component x exp(Gaussian algebra element)."""
        out = []
        for _ in range(count):
            comp = int(rng.integers(self.n_components))
            coeffs = scale * rng.standard_normal(self.dim)
            out.append(GroupElement(comp, coeffs))
        return out

    # ----- stabilizers --------------------------------------------------------
    def coadjoint_stabilizer_algebra(self, xi_dual) -> np.ndarray:
        """Orthonormal basis of {X : coad(X) xi = 0}."""
        xi_dual = np.asarray(xi_dual, dtype=float)
        if self.dim == 0:
            return np.zeros((0, 0))
        cols = [self.coad_algebra(e) @ xi_dual for e in np.eye(self.dim)]
        return kernel(np.array(cols).T, rtol=GEOM_RTOL)

    # ----- validation -----------------------------------------------------------
    def _validate_components(self):
        ident = self.component_reps[0]
        if np.max(np.abs(ident - np.eye(self.matrix_size)), initial=0.0) > 1e-12:
            raise InputError("first component representative must be the identity")
        for g in self.component_reps:
            if np.max(np.abs(g.conj().T @ g - np.eye(self.matrix_size)), initial=0.0) > TOL.invariance:
                raise InputError("component representative is not orthogonal/unitary")
            # conjugation must preserve the algebra span
            for b in self.algebra.basis_matrices:
                self.algebra_coords(g @ b @ np.linalg.inv(g), tol=1e-10)

    def check_inner_product_invariance(self, rng: np.random.Generator, samples: int = 20) -> float:
        """Max residual of AdᵀP Ad - P over sampled elements and components."""
        p = self.invariant_inner_product
        residual = 0.0
        for g in self.sample_elements(rng, samples):
            ad = self.adjoint(g)
            residual = max(residual, float(np.max(np.abs(ad.T @ p @ ad - p), initial=0.0)))
        for comp in range(self.n_components):
            ad = self.adjoint(GroupElement(comp, np.zeros(self.dim)))
            residual = max(residual, float(np.max(np.abs(ad.T @ p @ ad - p), initial=0.0)))
        return residual


def len_of_first(mats) -> int:
    return np.asarray(mats[0]).shape[0] if mats else 0


def _basis_design_matrix(basis_matrices) -> np.ndarray:
    cols = []
    for b in basis_matrices:
        cols.append(np.concatenate([b.real.ravel(), b.imag.ravel()]))
    return np.array(cols).T


# --------------------------------------------------------------------------
# builders for the supported family
# --------------------------------------------------------------------------

def torus_su2_group(torus_rank: int, su2_factors: int, component_mats=None) -> CompactGroupModel:
    """Build (T^k x SU(2)^m) ⋊ Γ with the block-diagonal defining representation.

    Torus factors occupy 2x2 real rotation blocks, SU(2) factors 2x2 complex
    blocks.  Γ is given by explicit matrices of the full defining size.
    """
    k, m = int(torus_rank), int(su2_factors)
    dim = k + 3 * m
    size = 2 * k + 2 * m
    basis = []
    for j in range(k):
        mat = np.zeros((size, size), dtype=complex)
        mat[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = ROT_GENERATOR
        basis.append(mat)
    for f in range(m):
        off = 2 * k + 2 * f
        for s in SU2_BASIS:
            mat = np.zeros((size, size), dtype=complex)
            mat[off : off + 2, off : off + 2] = s
            basis.append(mat)
    c = np.zeros((dim, dim, dim))
    for f in range(m):
        i0 = k + 3 * f
        for (a, b, d) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
            c[i0 + a, i0 + b, i0 + d] = 2.0
            c[i0 + b, i0 + a, i0 + d] = -2.0
    gram = np.diag([1.0] * k + [2.0, 2.0, 2.0] * m)
    algebra = LieAlgebraBasis(dim, c, basis)
    comps = None
    if component_mats:
        comps = [np.eye(size, dtype=complex)] + [np.asarray(g, dtype=complex) for g in component_mats]
    return CompactGroupModel(algebra, comps, gram)


@dataclass
class Subgroup:
    """A closed subgroup H of a CompactGroupModel, given by an algebra inclusion.

    ``inclusion`` maps h-coefficients to g-coefficients; ``finite_reps`` are
    defining-representation matrices of component representatives of H
    (identity first).  H's own structure constants are recovered from G's
    bracket through the inclusion.
    """

    ambient: CompactGroupModel
    inclusion: np.ndarray
    finite_reps: list = field(default_factory=list)

    def __post_init__(self):
        self.inclusion = np.atleast_2d(np.asarray(self.inclusion, dtype=float))
        if self.inclusion.size == 0:
            self.inclusion = self.inclusion.reshape(self.ambient.dim, 0)
        if self.inclusion.shape[0] != self.ambient.dim:
            raise InputError("algebra inclusion has wrong ambient dimension")
        if not self.finite_reps:
            self.finite_reps = [np.eye(self.ambient.matrix_size, dtype=complex)]
        self.finite_reps = [np.asarray(g, dtype=complex) for g in self.finite_reps]
        self._structure = self._derive_structure()

    @property
    def dim(self) -> int:
        return self.inclusion.shape[1]

    @property
    def n_components(self) -> int:
        return len(self.finite_reps)

    def _derive_structure(self) -> np.ndarray:
        d = self.dim
        c = np.zeros((d, d, d))
        if d == 0:
            return c
        pinv = np.linalg.pinv(self.inclusion)
        for i in range(d):
            for j in range(d):
                br = self.ambient.bracket(self.inclusion[:, i], self.inclusion[:, j])
                coeffs = pinv @ br
                if np.linalg.norm(self.inclusion @ coeffs - br) > 1e-9 * max(1.0, np.linalg.norm(br)):
                    raise InputError("subgroup algebra is not closed under the bracket")
                c[i, j] = coeffs
        return c

    def structure_constants(self) -> np.ndarray:
        return self._structure

    def embed(self, h_coeffs) -> np.ndarray:
        return self.inclusion @ np.asarray(h_coeffs, dtype=float)

    def element_matrix(self, comp: int, h_coeffs) -> np.ndarray:
        return self.finite_reps[comp] @ self.ambient.exp_algebra(self.embed(h_coeffs))

    def sample(self, rng: np.random.Generator, count: int, scale: float = 1.0):
        """Sampled H-elements as (defining matrix, component index, h-coeffs)."""
        out = []
        for _ in range(count):
            comp = int(rng.integers(self.n_components))
            coeffs = scale * rng.standard_normal(self.dim)
            out.append((self.element_matrix(comp, coeffs), comp, coeffs))
        return out

    def restriction_matrix(self) -> np.ndarray:
        """g* → h* on dual coefficients (the transpose of the inclusion)."""
        return self.inclusion.T

    def annihilator_basis(self) -> np.ndarray:
        """Orthonormal basis of h⁰ = ker(restriction) in g*."""
        if self.dim == 0:
            return np.eye(self.ambient.dim)
        return kernel(self.restriction_matrix())

    def orthogonal_splitting(self) -> np.ndarray:
        """The invariant-metric splitting p: h* → g* of the restriction map.

        Minimizes the dual-metric norm subject to restriction∘p = id; for a
        compact group with Ad-invariant metric this splitting is equivariant.
        """
        if self.dim == 0:
            return np.zeros((self.ambient.dim, 0))
        gram = self.ambient.invariant_inner_product
        iota = self.inclusion
        return gram @ iota @ np.linalg.inv(iota.T @ gram @ iota)


# --------------------------------------------------------------------------
# fixed points of representations
# --------------------------------------------------------------------------

def fixed_point_subspace(algebra_actions, component_actions, dim: int) -> np.ndarray:
    """Orthonormal basis of the joint fixed space V^G of a linear representation."""
    rows = []
    for a in algebra_actions:
        rows.append(np.asarray(a, dtype=float))
    for g in component_actions:
        rows.append(np.asarray(g, dtype=float) - np.eye(dim))
    if not rows:
        return np.eye(dim)
    return kernel(np.vstack(rows), rtol=GEOM_RTOL)


def fixed_point_complement(algebra_actions, component_actions, dim: int,
                           inner_product: np.ndarray | None = None) -> np.ndarray:
    """Invariant complement of V^G: the span of {v - g v}, computed as the
    inner-product orthogonal complement of the fixed subspace."""
    if inner_product is None:
        inner_product = np.eye(dim)
    inner_product = np.asarray(inner_product, dtype=float)
    sigma = np.linalg.svd(inner_product, compute_uv=False) if dim else np.array([1.0])
    if dim and (sigma.min() <= 0 or np.max(np.abs(inner_product - inner_product.T)) > 1e-12):
        raise InputError("inner product must be symmetric positive definite")
    fixed = fixed_point_subspace(algebra_actions, component_actions, dim)
    if fixed.shape[1] == 0:
        return np.eye(dim)
    return kernel(fixed.T @ inner_product)
