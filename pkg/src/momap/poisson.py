"""Poisson brackets of polynomial functions and the orbit-space structure checks.

The bracket is computed symbolically on polynomial coefficients, so the
antisymmetry / Leibniz / Jacobi identities become coefficient identities
rather than sampled statements.  Conventions match the momentum module:
omega(u, v) = uᵀ Omega v, iota_{X_f} omega = df, {f, h} = omega(X_f, X_h)
= -∇fᵀ Omega⁻¹ ∇h, which gives {x, y} = 1 for omega = dx ∧ dy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .linalg import InputError
from .momentum import HamiltonianModel, rep_group_action
from .poly import Polynomial
from .strata import leaf_dimension, leaf_rank_report
from .symplectic import SymplecticRep


@dataclass
class PolynomialFunction:
    """Polynomial observable with its cached analytic gradient."""

    poly: Polynomial

    def __post_init__(self):
        self.grad = self.poly.gradient()

    def __call__(self, points):
        return self.poly(points)

    def gradient_at(self, point) -> np.ndarray:
        point = np.asarray(point, dtype=float)
        return np.array([g(point) for g in self.grad])

    def gradient_fd_residual(self, points, step: float = 1e-6) -> float:
        """Max |analytic - central difference| over the points (sanity contract)."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        worst = 0.0
        for x in pts:
            for i in range(self.poly.nvars):
                e = np.zeros(self.poly.nvars)
                e[i] = step
                fd = (self.poly(x + e) - self.poly(x - e)) / (2 * step)
                worst = max(worst, abs(fd - self.grad[i](x)))
        return worst


def poisson_bracket(f: Polynomial, h: Polynomial, omega: np.ndarray) -> Polynomial:
    """{f, h} = -∇fᵀ Omega⁻¹ ∇h, exactly on coefficients."""
    omega = np.atleast_2d(np.asarray(omega, dtype=float))
    n = omega.shape[0]
    if f.nvars != n or h.nvars != n:
        raise InputError("polynomials and omega live on different spaces")
    if n == 0:
        return Polynomial.zero(0)
    sigma = np.linalg.svd(omega, compute_uv=False)
    if sigma.min() <= 1e-10:
        raise InputError("omega is degenerate")
    inv = np.linalg.inv(omega)
    df = f.gradient()
    dh = h.gradient()
    out = Polynomial.zero(n)
    for i in range(n):
        for j in range(n):
            if inv[i, j] == 0.0:
                continue
            out = out + (df[i] * dh[j]).scale(-inv[i, j])
    return out


def bracket_identities_residual(polys, omega: np.ndarray) -> dict:
    """Antisymmetry, Leibniz and Jacobi residuals on coefficient level."""
    anti = leib = jac = 0.0
    for f in polys:
        for h in polys:
            fh = poisson_bracket(f, h, omega)
            hf = poisson_bracket(h, f, omega)
            anti = max(anti, (fh + hf).max_abs_coeff())
    for f in polys:
        for g in polys:
            for h in polys:
                lhs = poisson_bracket(f, g * h, omega)
                rhs = poisson_bracket(f, g, omega) * h + g * poisson_bracket(f, h, omega)
                leib = max(leib, lhs.coefficient_distance(rhs))
                jac_term = (
                    poisson_bracket(f, poisson_bracket(g, h, omega), omega)
                    + poisson_bracket(g, poisson_bracket(h, f, omega), omega)
                    + poisson_bracket(h, poisson_bracket(f, g, omega), omega)
                )
                jac = max(jac, jac_term.max_abs_coeff())
    return {"antisymmetry": anti, "leibniz": leib, "jacobi": jac}


def invariance_residual(poly: Polynomial, rep: SymplecticRep, subgroup, rng,
                        samples: int = 100, points: int = 20) -> float:
    """Max |f(g p) - f(p)| over sampled group elements and points."""
    if rep.dim == 0:
        return 0.0
    worst = 0.0
    pts = rng.standard_normal((points, rep.dim))
    vals = poly(pts)
    for _ in range(samples):
        comp = int(rng.integers(subgroup.n_components))
        coeffs = rng.standard_normal(subgroup.dim)
        mat = rep_group_action(rep, subgroup, comp, coeffs)
        moved = poly(pts @ mat.T)
        worst = max(worst, float(np.max(np.abs(moved - vals), initial=0.0)))
    return worst


def invariant_closure_check(f: Polynomial, h: Polynomial, rep: SymplecticRep,
                            subgroup, rng, samples: int = 50, points: int = 20) -> float:
    """Invariance residual of {f, h} (inputs must already be invariant).

    Raises InputError (with the offending residual) when f or h fails the
    invariance precheck — the closure statement is about invariant inputs.
    """
    for name, poly in (("f", f), ("h", h)):
        res = invariance_residual(poly, rep, subgroup, rng, samples=20, points=10)
        if res > TOL.poly_invariance:
            raise InputError(f"input {name} is not invariant (residual {res:.2e})")
    bracket = poisson_bracket(f, h, rep.omega)
    return invariance_residual(bracket, rep, subgroup, rng, samples=samples, points=points)


def poisson_ideal_check(f: Polynomial, h: Polynomial, omega: np.ndarray,
                        fiber_samples) -> float:
    """Max |{f, h}| on momentum-fiber samples where h vanishes.

    ``h`` must vanish on the supplied fiber samples (residual below the
    equality tolerance); the bracket then has one derivative order of slack.
    """
    pts = np.atleast_2d(np.asarray(fiber_samples, dtype=float))
    h_vals = np.abs(h(pts))
    if h_vals.size and h_vals.max() > TOL.poly_invariance:
        raise InputError(f"h does not vanish on the fiber samples (max {h_vals.max():.2e})")
    bracket = poisson_bracket(f, h, omega)
    vals = np.abs(bracket(pts))
    return float(vals.max(initial=0.0))


# --------------------------------------------------------------------------
# leaf checks on slice models
# --------------------------------------------------------------------------


def leaf_rank_check(model: HamiltonianModel, points) -> dict:
    """Leaf dimension = transverse fiber dimension, at every sample point."""
    reports = []
    for p in points:
        r = leaf_rank_report(model, p)
        reports.append(r)
    worst = all(r["equal"] for r in reports)
    return {
        "all_equal": worst,
        "reports": reports,
        "max_leaf_dim": max((r["leaf_dim_from_normal_space"] for r in reports), default=0),
    }


def leaf_dim_monotonicity(model: HamiltonianModel, center, neighborhood_points) -> dict:
    """Leaf dimension is locally non-decreasing around the center point."""
    base = leaf_dimension(model, center)
    dims = [leaf_dimension(model, p) for p in neighborhood_points]
    ok = all(d >= base for d in dims)
    return {"center_dim": base, "neighborhood_dims": dims, "non_decreasing": ok}
