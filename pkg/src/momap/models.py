"""Built-in Hamiltonian models, the randomized family, and model-file I/O.

Five fixtures ship with the package:

* ``su2su2_circle``    — G = SU(2) x SU(2) with the circle subgroup embedded
  diagonally in both maximal tori; slice = h⁰ ≅ R x C² (the fully worked
  cotangent-of-homogeneous-space example);
* ``torus_weight1``    — circle acting on C with weight 1;
* ``torus_weight11``   — circle acting on C² with weights (1, 1);
* ``su2_adjoint_slice``— SU(2) on its defining representation C² (whose
  momentum image sweeps the full coadjoint cone);
* ``z2_extension``     — G = T¹ ⋊ Z₂ with H = Z₂ reflecting the 1-dim h⁰
  and swapping two complex lines of V (negative control: its canonical
  stratification has a codimension-one stratum, the infinitesimal one does
  not).

Model files are JSON documents with the schema ``momap-model/1``; complex
matrices are stored as {"re": [[...]], "im": [[...]]}.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .groups import CompactGroupModel, Subgroup, torus_su2_group
from .linalg import InputError
from .momentum import HamiltonianModel, QuadraticMomentumMap
from .symplectic import SymplecticRep, standard_omega

MODEL_SCHEMA = "momap-model/1"
FIXTURE_NAMES = (
    "su2su2_circle",
    "torus_weight1",
    "torus_weight11",
    "su2_adjoint_slice",
    "z2_extension",
)

ROT = np.array([[0.0, -1.0], [1.0, 0.0]])

DEFAULT_SAMPLING = {"seed": 7, "random_count": 200, "grid_spacing": 0.25, "grid_radius": 1.5}


# --------------------------------------------------------------------------
# representation helpers
# --------------------------------------------------------------------------

def realify(mat: np.ndarray) -> np.ndarray:
    """Real 2n x 2n matrix of a complex n x n matrix acting on (x1,y1,...,xn,yn)."""
    mat = np.asarray(mat, dtype=complex)
    n = mat.shape[0]
    out = np.zeros((2 * n, 2 * n))
    for i in range(n):
        for j in range(n):
            a, b = mat[i, j].real, mat[i, j].imag
            out[2 * i, 2 * j] = a
            out[2 * i, 2 * j + 1] = -b
            out[2 * i + 1, 2 * j] = b
            out[2 * i + 1, 2 * j + 1] = a
    return out


def weight_generator(weights) -> np.ndarray:
    """Circle generator on ⊕ C_{w}: block rotation with rate w per line."""
    weights = list(weights)
    n = len(weights)
    out = np.zeros((2 * n, 2 * n))
    for i, w in enumerate(weights):
        out[2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = w * ROT
    return out


def torus_weight_generators(weight_matrix) -> list:
    """Generators of T^k on ⊕ C lines; row a gives the weights of torus factor a."""
    weight_matrix = np.atleast_2d(np.asarray(weight_matrix, dtype=float))
    return [weight_generator(row) for row in weight_matrix]


# --------------------------------------------------------------------------
# bundled fixtures
# --------------------------------------------------------------------------

def su2su2_circle(sampling=None) -> HamiltonianModel:
    """SU(2) x SU(2) with the diagonal-torus circle; slice R x C², V = 0.

    Slice coordinates are (t, x1, y1, x2, y2): the g*-embedding sends the
    first coordinate to (t, 0, 0 | -t, 0, 0) and the complex pairs into the
    off-torus blocks of the two factors, so the circle rotates both pairs at
    equal rate and fixes t.
    """
    group = torus_su2_group(0, 2)
    inclusion = np.array([[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]]).T
    sub = Subgroup(group, inclusion)
    h0 = np.array(
        [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0],
        ]
    )
    rep = SymplecticRep(np.zeros((0, 0)), [np.zeros((0, 0))], [np.zeros((0, 0))])
    return HamiltonianModel(
        "su2su2_circle",
        group,
        sub,
        rep,
        h0_basis=h0,
        sampling=dict(sampling or DEFAULT_SAMPLING),
    )


def torus_weights_model(weights, name=None, torus_rank=1, sampling=None) -> HamiltonianModel:
    """T^k acting on ⊕ C lines with the given (k x lines) integer weights; H = G."""
    weight_matrix = np.atleast_2d(np.asarray(weights, dtype=float))
    k = weight_matrix.shape[0]
    if k != torus_rank:
        raise InputError("weight matrix rows must match the torus rank")
    lines = weight_matrix.shape[1]
    group = torus_su2_group(k, 0)
    sub = Subgroup(group, np.eye(k))
    omega = standard_omega(lines)
    rep = SymplecticRep(omega, torus_weight_generators(weight_matrix), [np.eye(2 * lines)])
    label = name or ("torus_weight" + "".join(str(int(w)) for w in weight_matrix.ravel()))
    return HamiltonianModel(label, group, sub, rep, sampling=dict(sampling or DEFAULT_SAMPLING))


def torus_weight1(sampling=None) -> HamiltonianModel:
    return torus_weights_model([[1]], name="torus_weight1", sampling=sampling)


def torus_weight11(sampling=None) -> HamiltonianModel:
    return torus_weights_model([[1, 1]], name="torus_weight11", sampling=sampling)


def su2_adjoint_slice(sampling=None) -> HamiltonianModel:
    """SU(2) acting on its defining representation C² (H = G, h⁰ = 0).

    The momentum image fills the cone over the coadjoint spheres, so the
    adjoint-invariant ‖·‖² generator and the quadratic line generator fit in
    one commuting square with P(t) = t²/4.
    """
    group = torus_su2_group(0, 1)
    sub = Subgroup(group, np.eye(3))
    omega = standard_omega(2)
    gens = [realify(b) for b in group.algebra.basis_matrices]
    rep = SymplecticRep(omega, gens, [np.eye(4)], structure_constants=group.algebra.structure_constants)
    return HamiltonianModel("su2_adjoint_slice", group, sub, rep, sampling=dict(sampling or DEFAULT_SAMPLING))


def z2_extension(sampling=None) -> HamiltonianModel:
    """T¹ ⋊ Z₂ with H = Z₂: reflection on h⁰ = R, swap on V = C ⊕ C.

    The reflection-in-the-origin factor produces a codimension-one stratum
    of the canonical stratification; the infinitesimal stratification is a
    single stratum because all isotropy algebras vanish.
    """
    flip = np.diag([1.0, -1.0]).astype(complex)
    group = torus_su2_group(1, 0, [flip])
    sub = Subgroup(group, np.zeros((1, 0)), [np.eye(2, dtype=complex), flip])
    swap = np.zeros((4, 4))
    swap[0, 2] = swap[1, 3] = swap[2, 0] = swap[3, 1] = 1.0
    rep = SymplecticRep(standard_omega(2), [], [np.eye(4), swap])
    return HamiltonianModel(
        "z2_extension",
        group,
        sub,
        rep,
        h0_basis=np.eye(1),
        sampling=dict(sampling or DEFAULT_SAMPLING),
    )


_BUILDERS = {
    "su2su2_circle": su2su2_circle,
    "torus_weight1": torus_weight1,
    "torus_weight11": torus_weight11,
    "su2_adjoint_slice": su2_adjoint_slice,
    "z2_extension": z2_extension,
}


def builtin_model(name: str, sampling=None) -> HamiltonianModel:
    if name not in _BUILDERS:
        raise InputError(f"unknown builtin model '{name}' (have {sorted(_BUILDERS)})")
    return _BUILDERS[name](sampling=sampling)


def random_family_model(seed: int) -> HamiltonianModel:
    """A randomized member of the supported family, for stratification audits.

    Alternates between pure torus actions with random integer weights, torus
    subgroup pairs with nonzero h⁰, and SU(2) x T^k actions on the defining
    representation plus weighted lines.
    """
    rng = np.random.default_rng(seed)
    kind = seed % 3
    if kind == 0:
        k = int(rng.integers(1, 3))
        lines = int(rng.integers(1, 4))
        weights = rng.integers(-3, 4, size=(k, lines))
        while not np.any(weights):
            weights = rng.integers(-3, 4, size=(k, lines))
        return torus_weights_model(weights, name=f"random_torus_{seed}", torus_rank=k)
    if kind == 1:
        # proper subtorus: G = T^k, H = first k' coordinates
        k = int(rng.integers(2, 4))
        kp = int(rng.integers(1, k))
        lines = int(rng.integers(1, 3))
        weights = rng.integers(-2, 3, size=(kp, lines))
        while not np.any(weights):
            weights = rng.integers(-2, 3, size=(kp, lines))
        group = torus_su2_group(k, 0)
        inclusion = np.zeros((k, kp))
        inclusion[:kp, :] = np.eye(kp)
        sub = Subgroup(group, inclusion)
        rep = SymplecticRep(standard_omega(lines), torus_weight_generators(weights), [np.eye(2 * lines)])
        return HamiltonianModel(f"random_subtorus_{seed}", group, sub, rep)
    # SU(2) on its defining rep plus a trivial complex line
    group = torus_su2_group(0, 1)
    sub = Subgroup(group, np.eye(3))
    extra = int(rng.integers(0, 2))
    dim_v = 4 + 2 * extra
    omega = standard_omega(dim_v // 2)
    gens = []
    for b in group.algebra.basis_matrices:
        g = np.zeros((dim_v, dim_v))
        g[:4, :4] = realify(b)
        gens.append(g)
    rep = SymplecticRep(omega, gens, [np.eye(dim_v)], structure_constants=group.algebra.structure_constants)
    return HamiltonianModel(f"random_su2_{seed}", group, sub, rep)


# --------------------------------------------------------------------------
# JSON model files
# --------------------------------------------------------------------------

def _encode_complex(mat) -> dict:
    mat = np.asarray(mat, dtype=complex)
    return {"re": mat.real.tolist(), "im": mat.imag.tolist()}


def _decode_complex(obj) -> np.ndarray:
    if isinstance(obj, dict):
        return np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    return np.asarray(obj, dtype=float).astype(complex)


def model_to_dict(model: HamiltonianModel) -> dict:
    group = model.group
    torus_rank, su2_factors = _family_shape(group)
    return {
        "schema": MODEL_SCHEMA,
        "name": model.name,
        "group": {
            "torus_rank": torus_rank,
            "su2_factors": su2_factors,
            "component_matrices": [_encode_complex(g) for g in group.component_reps[1:]],
        },
        "subgroup": {
            "algebra_inclusion": model.subgroup.inclusion.tolist(),
            "finite_generators": [_encode_complex(g) for g in model.subgroup.finite_reps[1:]],
        },
        "h0_basis": model.h0_basis.tolist(),
        "symplectic_rep": {
            "dim": model.rep.dim,
            "omega": model.rep.omega.tolist(),
            "generators": [a.tolist() for a in model.rep.generators],
            "component_actions": [a.tolist() for a in model.rep.component_actions],
            "momentum_matrices": [q.tolist() for q in model.momentum.matrices],
        },
        "splitting": model.splitting.tolist(),
        "sampling": dict(model.sampling or DEFAULT_SAMPLING),
    }


def _family_shape(group: CompactGroupModel) -> tuple[int, int]:
    """Recover (torus_rank, su2_factors) from the algebra dimensions."""
    dim = group.dim
    size = group.matrix_size
    # dim = k + 3m, size = 2k + 2m  =>  m = (2*dim - size) / 4
    m = (2 * dim - size) // 4
    k = dim - 3 * m
    if k < 0 or m < 0 or k + 3 * m != dim or 2 * k + 2 * m != size:
        raise InputError("group is not of the supported (T^k x SU(2)^m) family")
    return k, m


def model_from_dict(data: dict) -> HamiltonianModel:
    if data.get("schema") != MODEL_SCHEMA:
        raise InputError(f"unsupported model schema {data.get('schema')!r}")
    gspec = data["group"]
    comps = [_decode_complex(g) for g in gspec.get("component_matrices", [])]
    group = torus_su2_group(int(gspec["torus_rank"]), int(gspec["su2_factors"]), comps or None)

    sspec = data["subgroup"]
    inclusion = np.asarray(sspec["algebra_inclusion"], dtype=float)
    if inclusion.size == 0:
        inclusion = inclusion.reshape(group.dim, 0)
    finite = [np.eye(group.matrix_size, dtype=complex)] + [
        _decode_complex(g) for g in sspec.get("finite_generators", [])
    ]
    sub = Subgroup(group, inclusion, finite)

    rspec = data["symplectic_rep"]
    dim_v = int(rspec["dim"])
    omega = np.asarray(rspec["omega"], dtype=float).reshape(dim_v, dim_v)
    gens = [np.asarray(a, dtype=float).reshape(dim_v, dim_v) for a in rspec["generators"]]
    comps_v = [np.asarray(a, dtype=float).reshape(dim_v, dim_v) for a in rspec["component_actions"]]
    rep = SymplecticRep(omega, gens, comps_v)
    momentum = None
    if rspec.get("momentum_matrices") is not None:
        momentum = QuadraticMomentumMap(
            [np.asarray(q, dtype=float).reshape(dim_v, dim_v) for q in rspec["momentum_matrices"]]
        )

    h0 = data.get("h0_basis")
    h0 = np.asarray(h0, dtype=float) if h0 is not None else None
    if h0 is not None and h0.size == 0:
        h0 = h0.reshape(group.dim, 0)
    splitting = data.get("splitting")
    if splitting is not None:
        splitting = np.asarray(splitting, dtype=float)
        if splitting.size == 0:
            splitting = splitting.reshape(group.dim, 0)
    return HamiltonianModel(
        str(data.get("name", "model")),
        group,
        sub,
        rep,
        momentum=momentum,
        h0_basis=h0,
        splitting=splitting,
        sampling=dict(data.get("sampling", DEFAULT_SAMPLING)),
    )


def save_model(model: HamiltonianModel, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2, sort_keys=True))


def load_model(path) -> HamiltonianModel:
    """Load and validate a model file; all type invariants are enforced."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"model file does not parse as JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("model file must contain a JSON object")
    return model_from_dict(data)


def resolve_model(spec: str) -> HamiltonianModel:
    """Accept either a path to a model file or a bundled fixture name."""
    p = Path(spec)
    if p.exists():
        return load_model(p)
    if spec in _BUILDERS:
        return builtin_model(spec)
    fixture = Path(__file__).parent / "fixtures" / f"{spec}.json"
    if fixture.exists():
        return load_model(fixture)
    raise InputError(f"no such model file or fixture: {spec}")


def write_bundled_fixtures(directory) -> list:
    """Serialize the five bundled fixtures into a directory; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in FIXTURE_NAMES:
        path = directory / f"{name}.json"
        save_model(builtin_model(name), path)
        paths.append(path)
    return paths
