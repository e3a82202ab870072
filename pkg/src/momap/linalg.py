"""Rank-revealing linear algebra helpers.

Every subspace in this library is represented by a matrix whose *columns*
form an orthonormal basis.  Ranks are decided by SVD against a scale-aware
cutoff, and an explicit error is raised when the spectrum straddles the
cutoff too closely to call — downstream geometry (isotropy dimensions,
stratum labels) must not silently depend on a coin-flip rank.
"""

from __future__ import annotations

import numpy as np

from .config import TOL


# relative singular-value cutoff for *geometric* kernels (stabilizers, fixed
# spaces, fiber tangents): matrices assembled from products and projections
# carry rounding noise of a few ulps that the bare eps-level cutoff can
# misclassify, while genuine desk-scale spectral gaps sit many orders higher
GEOM_RTOL = 1e-9


class DegenerateRankError(ValueError):
    """Raised when a numerical rank decision is ambiguous at the cutoff."""

    def __init__(self, message, singular_values=None, cutoff=None):
        super().__init__(message)
        self.singular_values = singular_values
        self.cutoff = cutoff


class InputError(ValueError):
    """Raised for malformed or inconsistent user input."""


def rank_cutoff(sigma: np.ndarray, shape: tuple[int, int], rtol: float | None = None) -> float:
    """Scale-aware singular value cutoff: max(m, n) * eps * sigma_max."""
    if sigma.size == 0:
        return 0.0
    if rtol is None:
        rtol = max(shape) * np.finfo(float).eps
    return rtol * sigma[0]


def numerical_rank(a: np.ndarray, rtol: float | None = None, check_ambiguous: bool = True) -> int:
    """Numerical rank of ``a`` with an ambiguity guard.

    If the largest discarded singular value is within a factor
    ``TOL.rank_ambiguity_ratio`` of the smallest kept one, the rank decision
    is not trustworthy and ``DegenerateRankError`` carries the spectrum.
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0:
        return 0
    sigma = np.linalg.svd(a, compute_uv=False)
    cut = rank_cutoff(sigma, a.shape, rtol)
    rank = int(np.sum(sigma > cut))
    if check_ambiguous and 0 < rank < sigma.size:
        kept, dropped = sigma[rank - 1], sigma[rank]
        if dropped > 0 and kept / dropped < TOL.rank_ambiguity_ratio:
            raise DegenerateRankError(
                f"ambiguous numerical rank: kept sigma={kept:.3e}, dropped sigma={dropped:.3e}, "
                f"cutoff={cut:.3e}",
                singular_values=sigma,
                cutoff=cut,
            )
    return rank


def column_space(a: np.ndarray, rtol: float | None = None, floor: float = 0.0) -> np.ndarray:
    """Orthonormal basis (columns) of the column space of ``a``.

    ``floor`` is an absolute singular-value cutoff for callers whose input
    carries a known external scale (e.g. residuals of unit vectors).
    """
    a = np.atleast_2d(np.asarray(a, dtype=float))
    if a.size == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], 0))
    u, sigma, _ = np.linalg.svd(a, full_matrices=False)
    cut = max(rank_cutoff(sigma, a.shape, rtol), floor)
    rank = int(np.sum(sigma > cut))
    return u[:, :rank]


def kernel(a: np.ndarray, rtol: float | None = None, check_ambiguous: bool = False) -> np.ndarray:
    """Orthonormal basis (columns) of the null space of ``a``."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    m, n = a.shape
    if n == 0:
        return np.zeros((0, 0))
    if m == 0 or not np.any(a):
        return np.eye(n)
    if check_ambiguous:
        numerical_rank(a, rtol)
    _, sigma, vt = np.linalg.svd(a)
    cut = rank_cutoff(sigma, a.shape, rtol)
    rank = int(np.sum(sigma > cut))
    return vt[rank:].T


def orthonormalize(vectors: np.ndarray, rtol: float | None = None) -> np.ndarray:
    """Orthonormal basis of span(columns), dropping dependent columns."""
    return column_space(vectors, rtol)


def projector(basis: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto the span of the (orthonormal) columns."""
    if basis.shape[1] == 0:
        return np.zeros((basis.shape[0], basis.shape[0]))
    return basis @ basis.T


def complement_within(sub: np.ndarray, ambient: np.ndarray) -> np.ndarray:
    """Orthogonal complement of span(sub) inside span(ambient).

    Both arguments are orthonormal column bases of subspaces of the same
    coordinate space; ``sub`` must be contained in ``ambient``.  Residual
    directions below 1e-9 (an absolute scale — the columns are unit vectors)
    are treated as zero.
    """
    if ambient.shape[1] == 0:
        return ambient
    residual = ambient - projector(sub) @ ambient
    return column_space(residual, floor=1e-9)


def intersect_subspaces(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Orthonormal basis of span(u) ∩ span(v)."""
    if u.shape[1] == 0 or v.shape[1] == 0:
        return np.zeros((u.shape[0], 0))
    # x = u a = v b  <=>  [u, -v] [a; b] = 0
    null = kernel(np.hstack([u, -v]))
    if null.shape[1] == 0:
        return np.zeros((u.shape[0], 0))
    return column_space(u @ null[: u.shape[1], :])


def principal_angle_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Largest principal angle (radians) between two subspaces.

    Computed through the largest principal sine, which stays accurate for
    tiny angles (the cosine formulation bottoms out near sqrt(eps)).
    Returns pi/2 when the dimensions differ: unequal-dimensional subspaces
    are never considered equal.
    """
    if u.shape[1] != v.shape[1]:
        return np.pi / 2
    if u.shape[1] == 0:
        return 0.0
    residual = v - u @ (u.T @ v)
    sine = np.linalg.svd(residual, compute_uv=False).max(initial=0.0)
    return float(np.arcsin(np.clip(sine, 0.0, 1.0)))


def subspaces_equal(u: np.ndarray, v: np.ndarray, tol: float | None = None) -> bool:
    if tol is None:
        tol = TOL.subspace
    return principal_angle_distance(u, v) < tol


def solve_in_span(basis: np.ndarray, target: np.ndarray, tol: float = 1e-9):
    """Coordinates of ``target`` in the columns of ``basis``.

    Raises InputError when the target does not lie in the span (up to a
    tolerance relative to the target's norm).
    """
    if basis.shape[1] == 0:
        if np.linalg.norm(target) > tol:
            raise InputError("target does not lie in the zero subspace")
        return np.zeros(0)
    coords, *_ = np.linalg.lstsq(basis, target, rcond=None)
    residual = np.linalg.norm(basis @ coords - target)
    scale = max(1.0, np.linalg.norm(target))
    if residual > tol * scale:
        raise InputError(f"target leaves the subspace (residual {residual:.3e})")
    return coords
