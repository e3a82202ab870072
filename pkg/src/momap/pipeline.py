"""Sampling plans, stratification runs, and verification suites.

The sampling scheme is the documented one: candidate subspaces of the slice
are assembled from (a) joint fixed spaces of subsets of the acting group's
generators and component actions, (b) annihilator patterns that zero out
whole factor blocks of the momentum image, and (c) their pairwise
intersections.  Low-dimensional candidates are sampled on radial grids
(these are the anchors that separate connected components); the full slice
is sampled randomly.  Component refinement beyond this grid clustering is a
non-goal.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from .config import TOL
from .groups import fixed_point_subspace
from .hilbert import (
    HilbertMap,
    builtin_hilbert_maps,
    commuting_square_residual,
    image_descriptor_su2su2,
    strata_descriptors_su2su2,
    torus_weight_invariants,
)
from .linalg import DegenerateRankError, column_space, intersect_subspaces, kernel
from .momentum import (
    HamiltonianModel,
    QuadraticMomentumMap,
    equivariance_residual,
    kernel_image_identities,
    momentum_condition_residual,
    quadratic_differential_check,
)
from .poisson import (
    bracket_identities_residual,
    invariant_closure_check,
    leaf_dim_monotonicity,
    leaf_rank_report,
    poisson_ideal_check,
)
from .poly import Polynomial
from .strata import (
    ModelGeometry,
    StratumLabel,
    _torus_period,
    classify_point,
    codimension_one_audit,
    frontier_report,
    stratum_dimensions,
)
from .symplectic import SymplecticRep


# --------------------------------------------------------------------------
# sampling plan
# --------------------------------------------------------------------------


def _factor_blocks(model: HamiltonianModel) -> list:
    """(start, length) coefficient blocks of the group's factors in g*."""
    from .models import _family_shape

    k, m = _family_shape(model.group)
    blocks = [(j, 1) for j in range(k)]
    blocks += [(k + 3 * f, 3) for f in range(m)]
    return blocks


def _span_key(basis: np.ndarray) -> tuple:
    """Hashable identifier of a subspace (rounded projector entries)."""
    if basis.shape[1] == 0:
        return ("zero", basis.shape[0])
    proj = basis @ basis.T
    return tuple(np.round(proj, 9).ravel())


def candidate_subspaces(model: HamiltonianModel) -> list:
    """Slice subspaces likely to contain lower strata (see module docstring)."""
    d0, dv = model.h0_dim, model.v_dim
    dh = model.subgroup.dim

    # alpha patterns: factor-block annihilators and H-fixed subspaces
    alpha_patterns = [np.eye(d0)]
    blocks = _factor_blocks(model)
    for mask in range(1, 2 ** len(blocks)):
        rows = []
        for b, (start, length) in enumerate(blocks):
            if mask >> b & 1:
                rows.append(model.h0_basis[start : start + length, :])
        if rows:
            alpha_patterns.append(kernel(np.vstack(rows)))
    h_gens = [model.h0_coadjoint_generator(e) for e in np.eye(dh)] if dh else []
    h_comps = [model.slice_component_action(c)[:d0, :d0] for c in range(1, model.subgroup.n_components)]
    if h_gens or h_comps:
        alpha_patterns.append(fixed_point_subspace(h_gens, h_comps, d0))
    alpha_patterns.append(np.zeros((d0, 0)))

    # V patterns: fixed subspaces of generator/component subsets
    v_patterns = [np.eye(dv)]
    v_actors = [model.rep.algebra_action(e) for e in np.eye(dh)] if dv and dh else []
    v_comp = model.rep.component_actions[1:] if dv else []
    n_actors = len(v_actors) + len(v_comp)
    for mask in range(1, 2**n_actors):
        algebra = [a for i, a in enumerate(v_actors) if mask >> i & 1]
        comps = [c for j, c in enumerate(v_comp) if mask >> (len(v_actors) + j) & 1]
        v_patterns.append(fixed_point_subspace(algebra, comps, dv))
    v_patterns.append(np.zeros((dv, 0)))

    # close alpha patterns under pairwise intersection, then combine
    def dedupe(patterns, dim):
        seen, out = set(), []
        for p in patterns:
            key = _span_key(p if p.size else np.zeros((dim, 0)))
            if key not in seen:
                seen.add(key)
                out.append(p)
        return out

    alpha_patterns = dedupe(alpha_patterns, d0)
    extra = []
    for i in range(len(alpha_patterns)):
        for j in range(i + 1, len(alpha_patterns)):
            extra.append(intersect_subspaces(alpha_patterns[i], alpha_patterns[j]))
    alpha_patterns = dedupe(alpha_patterns + extra, d0)
    v_patterns = dedupe(v_patterns, dv)

    out, seen = [], set()
    for pa in alpha_patterns:
        for pv in v_patterns:
            basis = np.zeros((model.slice_dim, pa.shape[1] + pv.shape[1]))
            if pa.shape[1]:
                basis[:d0, : pa.shape[1]] = pa
            if pv.shape[1]:
                basis[d0:, pa.shape[1] :] = pv
            key = _span_key(basis)
            if key not in seen:
                seen.add(key)
                out.append(basis)
    return out


def build_samples(model: HamiltonianModel, spacing: float, radius: float,
                  rng: np.random.Generator, random_count: int) -> list:
    """(kind, point, pattern_dim) samples: radial grids on candidate subspaces, random bulk."""
    samples = [("grid", np.zeros(model.slice_dim), 0)]
    radii = np.arange(spacing, radius + 1e-9, spacing)
    for basis in candidate_subspaces(model):
        w = basis.shape[1]
        if w == 0:
            continue
        if w == model.slice_dim:
            for _ in range(random_count):
                samples.append(("random", rng.standard_normal(model.slice_dim), w))
            continue
        if w == 1:
            dirs = [basis[:, 0], -basis[:, 0]]
        else:
            dirs = []
            for _ in range(3):
                u = basis @ rng.standard_normal(w)
                dirs += [u / np.linalg.norm(u), -u / np.linalg.norm(u)]
        for r in radii:
            for u in dirs:
                samples.append(("grid", r * u, w))
    return samples


# --------------------------------------------------------------------------
# orbit-quotient metric
# --------------------------------------------------------------------------


def group_action_samples(model: HamiltonianModel, rng: np.random.Generator,
                         count: int = 128) -> np.ndarray:
    """Stacked slice-action matrices approximating the compact group's sweep."""
    dh = model.subgroup.dim
    mats = []
    if dh == 1:
        period = _torus_period(model, np.array([1.0])) or 2.0 * np.pi
        for t in np.linspace(0.0, period, count, endpoint=False):
            mats.append(expm(t * model.slice_action_generator(np.array([1.0]))))
    elif dh > 1:
        for _ in range(count):
            mats.append(expm(model.slice_action_generator_weighted(2.0 * rng.standard_normal(dh))))
    else:
        mats.append(np.eye(model.slice_dim))
    out = []
    for comp in range(model.subgroup.n_components):
        comp_mat = model.slice_component_action(comp)
        for m in mats:
            out.append(comp_mat @ m)
    return np.array(out)


def orbit_cloud(action_mats: np.ndarray, p) -> np.ndarray:
    """All sampled group translates of a point, stacked as rows."""
    return np.einsum("mij,j->mi", action_mats, np.asarray(p, dtype=float))


def quotient_distance(action_mats: np.ndarray, p, q) -> float:
    cloud = orbit_cloud(action_mats, p)
    return float(np.min(np.linalg.norm(cloud - np.asarray(q, dtype=float), axis=1)))


def cloud_distance(cloud: np.ndarray, q) -> float:
    return float(np.min(np.linalg.norm(cloud - np.asarray(q, dtype=float), axis=1)))


# --------------------------------------------------------------------------
# stratification
# --------------------------------------------------------------------------


@dataclass
class Stratum:
    label: StratumLabel
    component: int
    representative: np.ndarray
    count: int
    dims: dict
    descriptor: int | None = None

    def stratum_id(self) -> tuple:
        return (self.label.key(), self.component)


@dataclass
class StratifyResult:
    model_name: str
    strata: list
    samples: list  # (kind, point, label_key, component)
    frontier: dict
    audit: dict
    degenerate_points: int
    wall_time: float = 0.0


def _cluster_components(entries, action_mats, spacing: float) -> dict:
    """Single-linkage clustering of grid anchors in the orbit-quotient metric.

    Anchors are grid samples whose pattern has an (at most) one-dimensional
    orbit quotient — radial grids resolve exactly those.  Other entries join
    the nearest anchor's component; classes without anchors are reported as
    a single component (component decomposition beyond grid clustering is a
    non-goal).  Linkage threshold 1.2 x spacing: consecutive radial anchors
    link, distinct axis rays separated through a lower stratum do not.
    """
    anchors = [
        i for i, e in enumerate(entries)
        if e[0] == "grid" and e[3] - e[2].orbit_dim <= 1
    ][:500]
    if not anchors:
        return {i: 0 for i in range(len(entries))}
    pts = [entries[i][1] for i in anchors]
    clouds = [orbit_cloud(action_mats, p) for p in pts]
    n = len(anchors)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    threshold = 1.2 * spacing
    for i in range(n):
        for j in range(i + 1, n):
            if cloud_distance(clouds[i], pts[j]) < threshold:
                ra, rb = find(i), find(j)
                if ra != rb:
                    parent[rb] = ra
    # deterministic component ids: order clusters by their smallest point tuple
    clusters = {}
    for i in range(n):
        clusters.setdefault(find(i), []).append(i)
    reps = sorted(clusters, key=lambda r: tuple(np.round(pts[min(clusters[r])], 9)))
    comp_of_root = {r: k for k, r in enumerate(reps)}
    out = {}
    for i, idx in enumerate(anchors):
        out[idx] = comp_of_root[find(i)]
    for i, e in enumerate(entries):
        if i in out:
            continue
        best = min(range(n), key=lambda a: cloud_distance(clouds[a], e[1]))
        out[i] = comp_of_root[find(best)]
    return out


def stratify(model: HamiltonianModel, seed: int | None = None, spacing: float | None = None,
             radius: float | None = None, random_count: int | None = None,
             descriptors: list | None = None) -> StratifyResult:
    """Sample the slice, label every point, and assemble the stratum table."""
    t0 = time.perf_counter()
    sampling = dict(model.sampling or {})
    seed = sampling.get("seed", 7) if seed is None else seed
    spacing = spacing or sampling.get("grid_spacing", 0.25)
    radius = radius or sampling.get("grid_radius", 1.5)
    random_count = random_count or sampling.get("random_count", 200)
    rng = np.random.default_rng(seed)

    geom = ModelGeometry(model)
    raw = build_samples(model, spacing, radius, rng, random_count)
    classified, degenerate = [], 0
    for kind, point, pattern_dim in raw:
        try:
            cls = classify_point(model, point, geom=geom)
        except DegenerateRankError:
            degenerate += 1
            continue
        classified.append((kind, point, cls, pattern_dim))

    action_mats = group_action_samples(model, np.random.default_rng(seed + 1))
    by_label = {}
    for kind, point, cls, pattern_dim in classified:
        by_label.setdefault(cls.label.key(), []).append((kind, point, cls, pattern_dim))

    strata, samples_out = [], []
    if descriptors is None and model.name == "su2su2_circle":
        descriptors = strata_descriptors_su2su2()
    rho = su2su2_rho(model) if model.name == "su2su2_circle" else None

    for key in sorted(by_label):
        entries = by_label[key]
        comp_map = _cluster_components(entries, action_mats, spacing)
        by_comp = {}
        for i, entry in enumerate(entries):
            by_comp.setdefault(comp_map[i], []).append(entry)
        for comp in sorted(by_comp):
            bucket = by_comp[comp]
            kind, point, cls, _ = next(
                (e for e in bucket if e[0] == "grid"), bucket[0]
            )
            dims = stratum_dimensions(model, point, cls)
            desc_idx = None
            if descriptors is not None and rho is not None:
                image = rho(point)
                hits = [i for i, d in enumerate(descriptors) if d.membership(image)]
                desc_idx = hits[0] if len(hits) == 1 else None
            strata.append(Stratum(cls.label, comp, np.asarray(point, float),
                                  len(bucket), dims, desc_idx))
            for kind2, point2, cls2, _ in bucket:
                samples_out.append((kind2, point2, key, comp))

    # frontier condition via directional closure probes
    rep_clouds = {}
    for s in strata:
        rep_clouds.setdefault(s.label.key(), []).append(
            (s.component, orbit_cloud(action_mats, s.representative))
        )

    def classify_to_stratum(point):
        try:
            cls = classify_point(model, point, geom=geom)
        except DegenerateRankError:
            return None
        key = cls.label.key()
        if key not in rep_clouds:
            return None
        comps = rep_clouds[key]
        if len(comps) == 1:
            return (key, comps[0][0])
        best = min(comps, key=lambda item: cloud_distance(item[1], point))
        return (key, best[0])

    probe_dirs = []
    for basis in candidate_subspaces(model):
        for j in range(basis.shape[1]):
            probe_dirs.append(basis[:, j])
    frontier = frontier_report(model, strata, spacing, classify_to_stratum,
                               probe_dirs=probe_dirs,
                               rng=np.random.default_rng(seed + 2))

    audit_points = [s.representative for s in strata]
    audit = codimension_one_audit(model, audit_points)

    return StratifyResult(model.name, strata, samples_out, frontier, audit,
                          degenerate, time.perf_counter() - t0)


def su2su2_rho(model: HamiltonianModel) -> HilbertMap | None:
    from .hilbert import su2su2_slice_invariants

    return su2su2_slice_invariants()


# --------------------------------------------------------------------------
# verification suites
# --------------------------------------------------------------------------


SUITE_NAMES = (
    "momentum-condition",
    "equivariance",
    "infmomact",
    "ses-dims",
    "quad-differential",
    "bracket-closure",
    "ideal-check",
    "leaf-rank",
    "monotonicity",
)


def verification_rep(model: HamiltonianModel):
    """The symplectic representation the momentum suites run on.

    The model's own (V, omega_V) when V is nontrivial; otherwise, for a
    model whose subgroup moves part of h⁰, the moving block of h⁰ carries
    the invariant-complement action with the skew generator itself providing
    the symplectic pairing (normalized to a unit top block).
    """
    if model.v_dim > 0:
        return model.rep, model.momentum
    dh = model.subgroup.dim
    if dh == 0 or model.h0_dim == 0:
        return None, None
    gens = [model.h0_coadjoint_generator(e) for e in np.eye(dh)]
    comps = [model.slice_component_action(c)[: model.h0_dim, : model.h0_dim]
             for c in range(1, model.subgroup.n_components)]
    fixed = fixed_point_subspace(gens, comps, model.h0_dim)
    moving = kernel(fixed.T) if fixed.shape[1] else np.eye(model.h0_dim)
    if moving.shape[1] == 0 or moving.shape[1] % 2 != 0:
        return None, None
    rng = np.random.default_rng(0)
    combo = sum(c * g for c, g in zip(rng.standard_normal(dh), gens))
    omega = moving.T @ combo @ moving
    scale = np.max(np.abs(omega), initial=0.0)
    if scale < 1e-12:
        return None, None
    omega = omega / scale
    restricted = [moving.T @ g @ moving for g in gens]
    components = [np.eye(moving.shape[1])] + [moving.T @ c @ moving for c in comps]
    try:
        rep = SymplecticRep(omega, restricted, components)
    except Exception:
        return None, None
    return rep, QuadraticMomentumMap.from_rep(rep)


def invariant_polynomials_for(model: HamiltonianModel, rep: SymplecticRep,
                              momentum: QuadraticMomentumMap) -> list:
    """Invariant observables: pullbacks of the dual invariants through J.

    Torus directions of the momentum image give invariant quadratics
    directly; each su(2) factor contributes the coefficient norm-square of
    its momentum block (degree four).  For circle reps the classical
    quadratic invariants are added.
    """
    from .models import _family_shape

    if rep is None or rep.dim == 0:
        return []
    n_gen = len(momentum.matrices)
    polys = []
    j_components = [Polynomial.quadratic_form(0.5 * q) for q in momentum.matrices]
    if model.v_dim > 0 and n_gen == model.subgroup.dim:
        # push into g* through the splitting, then apply the factor invariants
        k, m = _family_shape(model.group)
        rows = model.splitting  # dg x dh
        for j in range(k):
            poly = Polynomial.zero(rep.dim)
            for a in range(n_gen):
                if abs(rows[j, a]) > 0:
                    poly = poly + j_components[a].scale(rows[j, a])
            if poly.terms:
                polys.append(poly)
        for f in range(m):
            block = range(k + 3 * f, k + 3 * f + 3)
            poly = Polynomial.zero(rep.dim)
            for i in block:
                comp = Polynomial.zero(rep.dim)
                for a in range(n_gen):
                    if abs(rows[i, a]) > 0:
                        comp = comp + j_components[a].scale(rows[i, a])
                poly = poly + comp * comp
            if poly.terms:
                polys.append(poly)
    else:
        polys.extend(j_components)
    if model.name == "su2su2_circle":
        polys = list(torus_weight_invariants([2, 2]).polynomials)
    if model.name.startswith("torus_weight"):
        weights = _weights_of_torus_model(model)
        if weights is not None:
            polys = list(torus_weight_invariants(weights).polynomials)
    return [p for p in polys if p.terms]


def _weights_of_torus_model(model: HamiltonianModel):
    if model.subgroup.dim != 1 or model.v_dim == 0:
        return None
    gen = model.rep.algebra_action(np.array([1.0]))
    weights = []
    for j in range(model.v_dim // 2):
        block = gen[2 * j : 2 * j + 2, 2 * j : 2 * j + 2]
        w = block[1, 0]
        if abs(w - round(w)) > 1e-9:
            return None
        weights.append(int(round(w)))
        if np.max(np.abs(block - w * np.array([[0.0, -1.0], [1.0, 0.0]]))) > 1e-12:
            return None
    return weights


def _slice_probe_points(model: HamiltonianModel, rng: np.random.Generator,
                        count: int = 12) -> list:
    pts = [np.zeros(model.slice_dim)]
    for basis in candidate_subspaces(model):
        if basis.shape[1] == 0:
            continue
        pts.append(basis @ (0.5 + 0.5 * rng.random(basis.shape[1])))
    while len(pts) < count:
        pts.append(rng.standard_normal(model.slice_dim))
    return pts[:count]


def run_suite(model: HamiltonianModel, name: str, seed: int) -> dict:
    """One named verification suite; returns a check record."""
    rng = np.random.default_rng(seed)
    t0 = time.perf_counter()
    rep, momentum = verification_rep(model)
    status, residual, n_samples, detail = "pass", 0.0, 0, {}

    try:
        if name == "momentum-condition":
            if rep is not None and rep.n_generators:
                residual = momentum_condition_residual(rep, momentum, rng, samples=100)
                n_samples = 100
                status = "pass" if residual < 1e-8 else "fail"
        elif name == "equivariance":
            if rep is not None and model.v_dim > 0:
                residual = equivariance_residual(rep, momentum, model.subgroup, rng, samples=100)
                n_samples = 100
                status = "pass" if residual < TOL.invariance else "fail"
        elif name == "infmomact":
            if rep is not None:
                worst = 0.0
                for _ in range(100):
                    p = rng.standard_normal(rep.dim)
                    rep_report = kernel_image_identities(rep, momentum, p)
                    worst = max(worst, rep_report["kernel_angle"], rep_report["annihilator_angle"])
                residual, n_samples = worst, 100
                status = "pass" if worst < TOL.subspace else "fail"
        elif name == "ses-dims":
            ok = True
            for p in _slice_probe_points(model, rng):
                cls = classify_point(model, p)
                chart = cls.chart
                d_q, d_x = chart.hq.shape[1], chart.gx.shape[1]
                sn = chart.normal_basis.shape[1]
                normal_dim = chart.chart_dim - (model.group.dim - d_q)
                ok &= normal_dim == sn + (d_x - d_q)
                # annihilator of h_q inside g_x*, computed by the pairing rank
                if d_x:
                    pairing = (chart.gx.T @ (model.subgroup.inclusion @ chart.hq)
                               if d_q else np.zeros((d_x, 0)))
                    gp0_dim = kernel(pairing.T).shape[1] if d_q else d_x
                    ok &= d_x == gp0_dim + d_q
                n_samples += 1
            status = "pass" if ok else "fail"
            residual = 0.0 if ok else 1.0
        elif name == "quad-differential":
            if rep is not None and rep.dim and rep.n_generators:
                worst, tries = 0.0, 0
                for _ in range(400):
                    if tries >= 100:
                        break
                    p = rng.standard_normal(rep.dim)
                    basis = kernel(momentum.differential(p))
                    if basis.shape[1] == 0:
                        continue
                    v = basis @ rng.standard_normal(basis.shape[1])
                    out = quadratic_differential_check(rep, momentum, p, v)
                    worst = max(worst, out["relative_error"])
                    tries += 1
                residual, n_samples = worst, tries
                status = "pass" if worst < TOL.quad_differential else "fail"
        elif name == "bracket-closure":
            if rep is not None and rep.dim:
                polys = invariant_polynomials_for(model, rep, momentum)
                idents = bracket_identities_residual(polys[:3] or [Polynomial.constant(rep.dim, 1.0)], rep.omega)
                worst = max(idents.values())
                for i in range(len(polys)):
                    for j in range(i + 1, len(polys)):
                        worst = max(worst, invariant_closure_check(
                            polys[i], polys[j], rep, model.subgroup, rng, samples=30, points=10))
                        n_samples += 1
                residual = worst
                detail = idents
                status = "pass" if worst < TOL.bracket else "fail"
        elif name == "ideal-check":
            if rep is not None and rep.dim:
                residual, n_samples = _ideal_suite(model, rep, momentum, rng)
                status = "pass" if residual < TOL.ideal else "fail"
        elif name == "leaf-rank":
            ok = True
            for p in _slice_probe_points(model, rng):
                r = leaf_rank_report(model, p)
                ok &= r["equal"]
                n_samples += 1
            status = "pass" if ok else "fail"
            residual = 0.0 if ok else 1.0
        elif name == "monotonicity":
            ok = True
            for p in _slice_probe_points(model, rng, count=6):
                nb = [p + 0.05 * rng.standard_normal(model.slice_dim) for _ in range(6)]
                r = leaf_dim_monotonicity(model, p, nb)
                ok &= r["non_decreasing"]
                n_samples += 1
            status = "pass" if ok else "fail"
            residual = 0.0 if ok else 1.0
        else:
            raise ValueError(f"unknown suite '{name}'")
    except DegenerateRankError as exc:
        status = "degenerate"
        detail = {"error": str(exc)}

    return {
        "name": name,
        "status": status,
        "max_residual": float(residual),
        "samples": int(n_samples),
        "detail": detail,
        "wall_time": time.perf_counter() - t0,
    }


def leaf_fiber_invariants(model: HamiltonianModel, rep: SymplecticRep,
                          momentum: QuadraticMomentumMap) -> list:
    """Invariant polynomials that cut out momentum fibers.

    For an abelian acting group every momentum component is invariant; for a
    simple factor the coefficient norm-square of its momentum block is.
    Subtracting their values at a base point gives invariant functions
    vanishing on the whole fiber — the Poisson-ideal hypothesis.
    """
    if rep is None or rep.n_generators == 0:
        return []
    c = model.subgroup.structure_constants()
    j_components = [Polynomial.quadratic_form(0.5 * q) for q in momentum.matrices]
    if np.max(np.abs(c), initial=0.0) < 1e-12:
        return j_components
    # nonabelian subgroup of the supported family: su(2) blocks of size 3
    out = []
    dh = rep.n_generators
    for start in range(0, dh, 3):
        block = j_components[start : start + 3]
        poly = Polynomial.zero(rep.dim)
        for comp in block:
            poly = poly + comp * comp
        out.append(poly)
    return out


def _ideal_suite(model: HamiltonianModel, rep: SymplecticRep,
                 momentum: QuadraticMomentumMap, rng) -> tuple:
    """Bracket residual of invariants against fiber-vanishing invariants."""
    polys = invariant_polynomials_for(model, rep, momentum)
    cutters = leaf_fiber_invariants(model, rep, momentum)
    if not polys or not cutters:
        return 0.0, 0
    p0 = np.abs(rng.standard_normal(rep.dim)) + 0.3
    fiber = momentum_fiber_samples(momentum, p0, rng)
    worst, count = 0.0, 0
    for f in polys[:4]:
        for g in cutters:
            h = g + Polynomial.constant(rep.dim, -float(g(p0)))
            worst = max(worst, poisson_ideal_check(f, h, rep.omega, fiber))
            count += 1
    return worst, count


def momentum_fiber_samples(momentum: QuadraticMomentumMap, p0, rng,
                           count: int = 100, step: float = 0.2) -> np.ndarray:
    """Samples of the momentum fiber J⁻¹(J(p0)): kernel walk with Newton retraction."""
    mu0 = momentum(p0)
    pts = [np.asarray(p0, dtype=float)]
    current = pts[0].copy()
    dim = current.size
    for _ in range(count - 1):
        djac = momentum.differential(current)
        null = kernel(djac)
        if null.shape[1] == 0:
            break
        direction = null @ rng.standard_normal(null.shape[1])
        candidate = current + step * direction
        # Newton retraction onto the fiber (J quadratic: a few steps suffice)
        for _ in range(8):
            res = momentum(candidate) - mu0
            if np.max(np.abs(res), initial=0.0) < 1e-12:
                break
            djc = momentum.differential(candidate)
            correction, *_ = np.linalg.lstsq(djc, res, rcond=None)
            candidate = candidate - correction
        if np.max(np.abs(momentum(candidate) - mu0), initial=0.0) < 1e-10:
            current = candidate
            pts.append(candidate.copy())
    return np.array(pts)


def run_verify(model: HamiltonianModel, seed: int = 7, suites=None) -> dict:
    """Run the selected verification suites; exit status pass iff all pass."""
    chosen = list(suites) if suites else list(SUITE_NAMES)
    for s in chosen:
        if s not in SUITE_NAMES:
            raise ValueError(f"unknown suite '{s}' (have {SUITE_NAMES})")
    checks = [run_suite(model, name, seed) for name in chosen]
    all_pass = all(c["status"] == "pass" for c in checks)
    return {"model": model.name, "seed": seed, "checks": checks, "all_pass": all_pass}
