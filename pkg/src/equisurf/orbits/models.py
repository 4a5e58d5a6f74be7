"""Homology models of surfaces and the matrices their mapping classes
induce on H_1 with Z/p coefficients.

Three models:

  * closed-nonorientable(r): crosscap generators a_1..a_r with the single
    relation sum(a_i) = 0, so rank r-1; Dehn twists T_{i,j} and crosscap
    slides Y_{i,j} generate.
  * closed-orientable(g): rank 2g symplectic; per-block SL_2 generators,
    the block swap and the block-coupling matrix generate.
  * boundary-nonorientable(c crosscaps): the punctured surface, free rank
    c; twists, slides and the reflection negating every generator.

T_{i,j}: a_i -> 2a_i + a_j, a_j -> -a_i, others fixed.
Y_{i,j}: a_i -> -a_i, a_j -> 2a_i + a_j, others fixed.
Indices involving the closed-case relation are eliminated by substitution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..modp import check_odd_prime


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceModel:
    kind: str  # "closed-nonorientable" | "closed-orientable" | "boundary-nonorientable"
    size: int  # genus r, genus g, or crosscap count

    def __post_init__(self):
        if self.kind == "closed-nonorientable" and self.size < 2:
            raise ModelError("closed non-orientable model needs genus >= 2")
        if self.kind == "closed-orientable" and self.size < 1:
            raise ModelError("closed orientable model needs genus >= 1")
        if self.kind == "boundary-nonorientable" and self.size < 1:
            raise ModelError("boundary model needs at least one crosscap")
        if self.kind not in ("closed-nonorientable", "closed-orientable", "boundary-nonorientable"):
            raise ModelError(f"unknown model kind {self.kind!r}")

    def __str__(self) -> str:
        short = {"closed-nonorientable": "closed-nonorientable",
                 "closed-orientable": "closed-orientable",
                 "boundary-nonorientable": "boundary"}[self.kind]
        return f"{short}:{self.size}"


def parse_model(text: str) -> SurfaceModel:
    try:
        kind, size = text.rsplit(":", 1)
        size = int(size)
    except ValueError:
        raise ModelError(f"cannot parse model {text!r}") from None
    aliases = {
        "closed-nonorientable": "closed-nonorientable",
        "closed-orientable": "closed-orientable",
        "boundary-nonorientable": "boundary-nonorientable",
        "boundary": "boundary-nonorientable",
    }
    if kind not in aliases:
        raise ModelError(f"unknown model kind {kind!r}")
    return SurfaceModel(aliases[kind], size)


def homology_rank(model: SurfaceModel) -> int:
    if model.kind == "closed-nonorientable":
        return model.size - 1
    if model.kind == "closed-orientable":
        return 2 * model.size
    return model.size


@dataclass(frozen=True)
class Generator:
    label: str
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=np.int64))


def _closed_nonor_matrix(images: dict[int, np.ndarray], r: int, p: int) -> np.ndarray:
    """Matrix on the basis a_1..a_{r-1}; `images` maps generator index to
    its image written in a_1..a_r coordinates (length r)."""
    n = r - 1
    mat = np.zeros((n, n), dtype=np.int64)
    for col in range(n):
        img = images.get(col + 1)
        if img is None:
            mat[col, col] = 1
            continue
        vec = img[:n].copy()
        vec -= img[n]  # a_r = -(a_1 + ... + a_{r-1})
        mat[:, col] = vec % p
    return mat


def _unit_vec(r: int, idx: int, coef: int = 1) -> np.ndarray:
    v = np.zeros(r, dtype=np.int64)
    v[idx - 1] = coef
    return v


def dehn_twist_matrix(i: int, j: int, model: SurfaceModel, p: int) -> Generator:
    """Twist about the curve through crosscaps i and j."""
    check_odd_prime(p)
    r = model.size if model.kind == "closed-nonorientable" else homology_rank(model)
    if model.kind == "closed-orientable":
        raise ModelError("twists on the orientable model are the symplectic generators")
    if i == j or not (1 <= i <= r) or not (1 <= j <= r):
        raise ModelError(f"bad crosscap indices ({i}, {j})")
    if model.kind == "boundary-nonorientable":
        n = r
        mat = np.eye(n, dtype=np.int64)
        mat[:, i - 1] = 0
        mat[i - 1, i - 1] = 2
        mat[j - 1, i - 1] = 1
        mat[:, j - 1] = 0
        mat[i - 1, j - 1] = -1
        return Generator(f"T{i},{j}", mat % p)
    images = {i: _unit_vec(r, i, 2) + _unit_vec(r, j), j: -_unit_vec(r, i)}
    return Generator(f"T{i},{j}", _closed_nonor_matrix(images, r, p))


def crosscap_slide_matrix(i: int, j: int, model: SurfaceModel, p: int) -> Generator:
    """Slide crosscap i through crosscap j."""
    check_odd_prime(p)
    if model.kind == "closed-orientable":
        raise ModelError("crosscap slides need a non-orientable model")
    r = model.size
    if model.size < 2 or i == j or not (1 <= i <= r) or not (1 <= j <= r):
        raise ModelError(f"bad crosscap indices ({i}, {j})")
    if model.kind == "boundary-nonorientable":
        n = r
        mat = np.eye(n, dtype=np.int64)
        mat[i - 1, i - 1] = -1
        mat[i - 1, j - 1] = 2
        return Generator(f"Y{i},{j}", mat % p)
    images = {i: -_unit_vec(r, i), j: _unit_vec(r, i, 2) + _unit_vec(r, j)}
    return Generator(f"Y{i},{j}", _closed_nonor_matrix(images, r, p))


def reflection_matrix(model: SurfaceModel, p: int) -> Generator:
    """The boundary-model reflection: negates every crosscap generator."""
    if model.kind != "boundary-nonorientable":
        raise ModelError("the reflection belongs to the boundary model")
    n = homology_rank(model)
    return Generator("psi", (-np.eye(n, dtype=np.int64)) % p)


def standard_symplectic_form(g: int) -> np.ndarray:
    j2 = np.array([[0, 1], [-1, 0]], dtype=np.int64)
    out = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for k in range(g):
        out[2 * k:2 * k + 2, 2 * k:2 * k + 2] = j2
    return out


_SL2_A = np.array([[1, 0], [1, 1]], dtype=np.int64)
_SL2_B = np.array([[1, 1], [0, 1]], dtype=np.int64)
_SWAP4 = np.block([
    [np.zeros((2, 2), dtype=np.int64), np.eye(2, dtype=np.int64)],
    [-np.eye(2, dtype=np.int64), np.zeros((2, 2), dtype=np.int64)],
])
_COUPLE4 = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, -1],
    [1, 0, 1, 0],
    [0, 0, 0, 1],
], dtype=np.int64)


def _embed(block: np.ndarray, at: int, n: int) -> np.ndarray:
    out = np.eye(n, dtype=np.int64)
    b = block.shape[0]
    out[at:at + b, at:at + b] = block
    return out


def symplectic_generators(g: int, p: int) -> list[Generator]:
    """Generators of the symplectic action on rank 2g: per-block A and B,
    every adjacent block swap and every adjacent block coupling."""
    check_odd_prime(p)
    if g < 1:
        raise ModelError("need genus >= 1")
    n = 2 * g
    out = []
    for k in range(g):
        out.append(Generator(f"A[{k}]", _embed(_SL2_A, 2 * k, n) % p))
        out.append(Generator(f"B[{k}]", _embed(_SL2_B, 2 * k, n) % p))
    for k in range(g - 1):
        out.append(Generator(f"swap[{k}]", _embed(_SWAP4, 2 * k, n) % p))
        out.append(Generator(f"couple[{k}]", _embed(_COUPLE4, 2 * k, n) % p))
    return out


def generator_matrices(model: SurfaceModel, p: int) -> list[Generator]:
    """The full generator list for the model's mapping-class action."""
    check_odd_prime(p)
    if model.kind == "closed-orientable":
        return symplectic_generators(model.size, p)
    r = model.size
    out = []
    for i in range(1, r + 1):
        for j in range(1, r + 1):
            if i != j:
                out.append(dehn_twist_matrix(i, j, model, p))
                if r >= 2:
                    out.append(crosscap_slide_matrix(i, j, model, p))
    if model.kind == "boundary-nonorientable":
        out.append(reflection_matrix(model, p))
    return out
