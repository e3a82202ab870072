"""Invariant-polynomial (Hilbert) maps and semi-algebraic stratum descriptors.

Only built-in generator families are provided: the classical quadratic
invariants of torus weight actions, the norm-square generator of the
adjoint-type SU(2) actions, and the full generator set of the
SU(2) x SU(2) circle slice together with its six stratum descriptors and
the fiber-sphere geometry of the open stratum.  General Hilbert-map
generation is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL
from .linalg import InputError
from .poly import Polynomial


@dataclass
class HilbertMap:
    """A finite list of invariant polynomials embedding an orbit space."""

    polynomials: list
    source_dim: int

    @property
    def target_dim(self) -> int:
        return len(self.polynomials)

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        if single:
            pts = pts[None, :]
        out = np.column_stack([p(pts) for p in self.polynomials])
        return out[0] if single else out

    def invariance_residual(self, action_matrices, points) -> float:
        """Max |rho(g p) - rho(p)| over the supplied group actions and points."""
        pts = np.asarray(points, dtype=float)
        base = self(pts)
        worst = 0.0
        for mat in action_matrices:
            moved = self(pts @ np.asarray(mat).T)
            worst = max(worst, float(np.max(np.abs(moved - base), initial=0.0)))
        return worst

    def separation_check(self, pairs, orbit_distance, image_gap: float = 1e-6,
                         orbit_gap: float = 1e-3) -> bool:
        """Points on distinct orbits (> orbit_gap apart) map > image_gap apart."""
        for p, q in pairs:
            if orbit_distance(p, q) > orbit_gap:
                if np.linalg.norm(self(p) - self(q)) <= image_gap:
                    return False
        return True


@dataclass
class SemiAlgDescription:
    """Conjunction of polynomial equalities and (non-)strict inequalities."""

    equalities: list = field(default_factory=list)
    strict: list = field(default_factory=list)
    nonstrict: list = field(default_factory=list)
    name: str = ""

    def dim_space(self) -> int:
        for p in self.equalities + self.strict + self.nonstrict:
            return p.nvars
        return 0

    def membership(self, x, equality_tol: float | None = None,
                   strict_margin: float | None = None):
        """Boolean membership; vectorized over rows when x is 2-d."""
        eq_tol = TOL.equality if equality_tol is None else equality_tol
        margin = TOL.strict_margin if strict_margin is None else strict_margin
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        pts = x[None, :] if single else x
        if pts.shape[1] != self.dim_space() and (self.equalities or self.strict or self.nonstrict):
            raise InputError("point dimension does not match the descriptor")
        ok = np.ones(pts.shape[0], dtype=bool)
        for p in self.equalities:
            ok &= np.abs(p(pts)) <= eq_tol
        for p in self.strict:
            ok &= p(pts) > margin
        for p in self.nonstrict:
            ok &= p(pts) >= -eq_tol
        return bool(ok[0]) if single else ok

    def to_dict(self) -> dict:
        def enc(polys):
            return [{"".join(map(str, e)): c for e, c in p.terms.items()} for p in polys]

        return {
            "name": self.name,
            "equalities": enc(self.equalities),
            "strict": enc(self.strict),
            "nonstrict": enc(self.nonstrict),
        }


# --------------------------------------------------------------------------
# built-in generators
# --------------------------------------------------------------------------


def _mono(n, pairs):
    expo = [0] * n
    for i, k in pairs:
        expo[i] += k
    return tuple(expo)


def torus_weight_invariants(weights) -> HilbertMap:
    """Quadratic invariants of a circle acting on complex lines.

    |z_j|^2 always; Re/Im(z_i conj(z_j)) for equal weights and
    Re/Im(z_i z_j) for opposite weights.  Weight-zero lines contribute their
    two coordinate functions.  This generates the quadratic part of the
    invariant ring, which is all the built-in models need.
    """
    weights = [int(w) for w in np.atleast_1d(weights)]
    n = 2 * len(weights)
    gens = []
    for j, w in enumerate(weights):
        x, y = 2 * j, 2 * j + 1
        if w == 0:
            gens.append(Polynomial.coordinate(n, x))
            gens.append(Polynomial.coordinate(n, y))
        else:
            gens.append(Polynomial(n, {_mono(n, [(x, 2)]): 1.0, _mono(n, [(y, 2)]): 1.0}))
    for i, wi in enumerate(weights):
        for j in range(i + 1, len(weights)):
            wj = weights[j]
            if wi == 0 or wj == 0:
                continue
            xi, yi, xj, yj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
            if wi == wj:
                gens.append(Polynomial(n, {
                    _mono(n, [(xi, 1), (xj, 1)]): 1.0, _mono(n, [(yi, 1), (yj, 1)]): 1.0}))
                gens.append(Polynomial(n, {
                    _mono(n, [(xi, 1), (yj, 1)]): 1.0, _mono(n, [(yi, 1), (xj, 1)]): -1.0}))
            elif wi == -wj:
                gens.append(Polynomial(n, {
                    _mono(n, [(xi, 1), (xj, 1)]): 1.0, _mono(n, [(yi, 1), (yj, 1)]): -1.0}))
                gens.append(Polynomial(n, {
                    _mono(n, [(xi, 1), (yj, 1)]): 1.0, _mono(n, [(yi, 1), (xj, 1)]): 1.0}))
    return HilbertMap(gens, n)


def su2su2_slice_invariants() -> HilbertMap:
    """Circle invariants of the R x C² slice: (t, |z1|², |z2|², Re z1 conj z2, Im z1 conj z2)."""
    n = 5
    t = Polynomial.coordinate(n, 0)
    r2 = Polynomial(n, {_mono(n, [(1, 2)]): 1.0, _mono(n, [(2, 2)]): 1.0})
    r3 = Polynomial(n, {_mono(n, [(3, 2)]): 1.0, _mono(n, [(4, 2)]): 1.0})
    r4 = Polynomial(n, {_mono(n, [(1, 1), (3, 1)]): 1.0, _mono(n, [(2, 1), (4, 1)]): 1.0})
    r5 = Polynomial(n, {_mono(n, [(1, 1), (4, 1)]): 1.0, _mono(n, [(2, 1), (3, 1)]): -1.0})
    return HilbertMap([t, r2, r3, r4, r5], n)


def su2su2_dual_invariants() -> HilbertMap:
    """Norm-squares of the two su(2)* factors in coefficient coordinates."""
    n = 6
    s1 = Polynomial(n, {_mono(n, [(i, 2)]): 1.0 for i in range(3)})
    s2 = Polynomial(n, {_mono(n, [(i, 2)]): 1.0 for i in range(3, 6)})
    return HilbertMap([s1, s2], n)


def su2_dual_invariant() -> HilbertMap:
    n = 3
    return HilbertMap([Polynomial(n, {_mono(n, [(i, 2)]): 1.0 for i in range(3)})], n)


def su2_defining_invariants() -> HilbertMap:
    """SU(2) is transitive on spheres of C², so |v|² generates the invariants."""
    n = 4
    return HilbertMap([Polynomial(n, {_mono(n, [(i, 2)]): 1.0 for i in range(4)})], n)


def builtin_hilbert_maps(model_id, weights=None) -> dict:
    """(rho, sigma, P) for the built-in model families.

    ``su2su2-circle``: the five slice generators, the two dual norm
    generators, and P(x) = (x1² + x2, x1² + x3).
    ``su2-adjoint``: |v|² upstairs, ‖xi‖² downstairs, P(t) = t²/4.
    ``torus-weights``: quadratic circle invariants; sigma is the identity
    chart on the (abelian) dual, and P is the zero map onto it.
    """
    if model_id == "su2su2-circle":
        rho = su2su2_slice_invariants()
        sigma = su2su2_dual_invariants()
        p1 = Polynomial(5, {_mono(5, [(0, 2)]): 1.0, _mono(5, [(1, 1)]): 1.0})
        p2 = Polynomial(5, {_mono(5, [(0, 2)]): 1.0, _mono(5, [(2, 1)]): 1.0})
        return {"rho": rho, "sigma": sigma, "P": [p1, p2]}
    if model_id == "su2-adjoint":
        rho = su2_defining_invariants()
        sigma = su2_dual_invariant()
        p = Polynomial(1, {(2,): 0.25})
        return {"rho": rho, "sigma": sigma, "P": [p]}
    if model_id == "torus-weights":
        if weights is None:
            raise InputError("torus-weights needs the weight list")
        rho = torus_weight_invariants(weights)
        k = 1
        sigma = HilbertMap([Polynomial.coordinate(k, i) for i in range(k)], k)
        zero = [Polynomial.zero(rho.target_dim) for _ in range(k)]
        return {"rho": rho, "sigma": sigma, "P": zero}
    raise InputError(f"unknown built-in Hilbert map id '{model_id}'")


def commuting_square_residual(rho: HilbertMap, sigma: HilbertMap, p_polys,
                              embedding, samples) -> float:
    """Max ‖sigma(J(v)) - P(rho(v))‖ over slice samples; zero when the square commutes."""
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    worst = 0.0
    for v in samples:
        lhs = sigma(embedding(v))
        rhs = np.array([q(rho(v)) for q in p_polys])
        worst = max(worst, float(np.max(np.abs(lhs - rhs), initial=0.0)))
    return worst


# --------------------------------------------------------------------------
# the six stratum descriptors of the SU(2) x SU(2) circle slice
# --------------------------------------------------------------------------


def _coord(n, i):
    return Polynomial.coordinate(n, i)


def strata_descriptors_su2su2() -> list:
    """The six stratum images in R⁵, as conjunctive descriptors.

    The axis family {x2 = x3 = x4 = x5 = 0} splits by the sign of x1; the
    open orbit-type set {x4² + x5² = x2 x3, x2 > 0 or x3 > 0} splits into
    the two punctured axes and the remaining open piece.  On the image
    (where x2, x3 >= 0) the union condition 'x2 > 0 or x3 > 0' is the
    conjunctive condition x2 + x3 > 0.
    """
    n = 5
    x = [Polynomial.coordinate(n, i) for i in range(n)]
    relation = Polynomial(n, {
        _mono(n, [(3, 2)]): 1.0, _mono(n, [(4, 2)]): 1.0, _mono(n, [(1, 1), (2, 1)]): -1.0})
    x1sq_x2 = Polynomial(n, {_mono(n, [(0, 2)]): 1.0, _mono(n, [(1, 1)]): 1.0})
    x1sq_x3 = Polynomial(n, {_mono(n, [(0, 2)]): 1.0, _mono(n, [(2, 1)]): 1.0})
    axis_eqs = [x[1], x[2], x[3], x[4]]
    return [
        SemiAlgDescription(list(axis_eqs), [x[0].scale(-1.0)], [], name="axis_negative"),
        SemiAlgDescription(list(axis_eqs) + [x[0]], [], [], name="origin"),
        SemiAlgDescription(list(axis_eqs), [x[0]], [], name="axis_positive"),
        SemiAlgDescription([x[0], x[2], x[3], x[4]], [x[1]], [], name="first_factor_axis"),
        SemiAlgDescription([x[0], x[1], x[3], x[4]], [x[2]], [], name="second_factor_axis"),
        SemiAlgDescription([relation], [x1sq_x2, x1sq_x3, x[1] + x[2]], [x[1], x[2]], name="open"),
    ]


def orbit_type_descriptors_su2su2() -> list:
    """The two coarse orbit-type images: axis set and relation set."""
    n = 5
    x = [Polynomial.coordinate(n, i) for i in range(n)]
    relation = Polynomial(n, {
        _mono(n, [(3, 2)]): 1.0, _mono(n, [(4, 2)]): 1.0, _mono(n, [(1, 1), (2, 1)]): -1.0})
    return [
        SemiAlgDescription([x[1], x[2], x[3], x[4]], [], [], name="axis_type"),
        SemiAlgDescription([relation], [x[1] + x[2]], [x[1], x[2]], name="relation_type"),
    ]


def image_descriptor_su2su2() -> SemiAlgDescription:
    """Image of the slice orbit space: {x2 >= 0, x3 >= 0, x4² + x5² = x2 x3}."""
    n = 5
    x = [Polynomial.coordinate(n, i) for i in range(n)]
    relation = Polynomial(n, {
        _mono(n, [(3, 2)]): 1.0, _mono(n, [(4, 2)]): 1.0, _mono(n, [(1, 1), (2, 1)]): -1.0})
    return SemiAlgDescription([relation], [], [x[1], x[2]], name="image")


# --------------------------------------------------------------------------
# fiber geometry of the open stratum
# --------------------------------------------------------------------------


def fiber_surface_descriptor(y1: float, y2: float) -> SemiAlgDescription:
    """The (x1, x4, x5) surface {x4² + x5² = (y1 - x1²)(y2 - x1²), x1² < max(y1, y2)}."""
    if not (y1 > 0 and y2 > 0):
        raise InputError("fiber levels must be positive")
    n = 3
    # x4^2 + x5^2 - (y1 - x1^2)(y2 - x1^2) =
    #   x4^2 + x5^2 - y1 y2 + (y1 + y2) x1^2 - x1^4
    eq = Polynomial(n, {
        (0, 2, 0): 1.0,
        (0, 0, 2): 1.0,
        (0, 0, 0): -y1 * y2,
        (2, 0, 0): y1 + y2,
        (4, 0, 0): -1.0,
    })
    strict = Polynomial(n, {(0, 0, 0): max(y1, y2), (2, 0, 0): -1.0})
    return SemiAlgDescription([eq], [strict], [], name=f"fiber({y1},{y2})")


def fiber_surface_samples(y1: float, y2: float, count: int, seed: int = 0) -> dict:
    """Membership-true samples of the fiber surface plus its puncture report.

    Samples never sit on radius-zero circles excluded by the strict
    inequality; punctures are the parameter values where the radius
    degenerates to zero *inside* the open band (which happens exactly when
    y1 == y2, giving two of them).
    """
    if not (y1 > 0 and y2 > 0):
        raise InputError("fiber levels must be positive")
    desc = fiber_surface_descriptor(y1, y2)
    lo, hi = min(y1, y2), max(y1, y2)
    # radius² = (y1 - x1²)(y2 - x1²) is nonnegative for x1² <= lo (or >= hi,
    # excluded by the strict bound); poles at x1² = lo are punctures iff the
    # strict bound removes them, i.e. iff lo == hi
    punctures = []
    if abs(hi - lo) < 1e-12:
        punctures = [-float(np.sqrt(lo)), float(np.sqrt(lo))]
    rng = np.random.default_rng(seed)
    rows = []
    band = np.sqrt(lo)
    while len(rows) < count:
        x1 = rng.uniform(-band, band)
        r2 = (y1 - x1**2) * (y2 - x1**2)
        # keep clear margins against the equality tolerance and strict bound
        if r2 <= 1e-12 or hi - x1**2 < 1e-6:
            continue
        phi = rng.uniform(0.0, 2.0 * np.pi)
        r = np.sqrt(r2)
        rows.append((x1, r * np.cos(phi), r * np.sin(phi)))
    samples = np.array(rows) if rows else np.zeros((0, 3))
    return {"descriptor": desc, "samples": samples, "punctures": punctures}


def fiber_csv_rows(y1: float, y2: float, samples: np.ndarray) -> list:
    """CSV rows (x1, x4, x5, x2, x3) with the plane coordinates reconstructed."""
    rows = []
    for x1, x4, x5 in samples:
        rows.append((x1, x4, x5, y1 - x1**2, y2 - x1**2))
    return rows
