"""Global numerical tolerances.

All residual thresholds used across the library live here so that the test
suite, the CLI, and documentation quote a single set of numbers.  The
equality tolerance can be overridden through the ``MOMAP_TOL`` environment
variable; everything else is fixed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # structure constants / commutator identities
    structure: float = 1e-12
    # invariance residuals checked on sampled group elements
    invariance: float = 1e-10
    # polynomial-invariance residuals (Hilbert generators)
    poly_invariance: float = 1e-9
    # subspace equality, measured by principal angles
    subspace: float = 1e-8
    # membership tests on semi-algebraic descriptors: equalities
    equality: float = 1e-9
    # membership tests: strictness margin for strict inequalities
    strict_margin: float = 1e-12
    # finite-difference vs. analytic derivative agreement
    derivative: float = 1e-6
    # quadratic differential relative error
    quad_differential: float = 1e-4
    # Poisson bracket residuals (antisymmetry / Jacobi / closure)
    bracket: float = 1e-8
    # Poisson ideal residual (one derivative order of slack)
    ideal: float = 1e-7
    # certified fixed-point residual for finite isotropy detection
    finite_isotropy: float = 1e-9
    # ratio below which two singular values straddling the rank cutoff
    # are reported as an ambiguous (degenerate) rank
    rank_ambiguity_ratio: float = 10.0


def load_tolerances() -> Tolerances:
    """Build the tolerance table, honouring the MOMAP_TOL override."""
    raw = os.environ.get("MOMAP_TOL")
    if raw is None:
        return Tolerances()
    return Tolerances(equality=float(raw))


TOL = load_tolerances()
