"""Exact orbit enumeration of a generated matrix group on (Z/p)^rank.

States are encoded as base-p integers (big-endian, so numeric order is
lexicographic order on coordinate tuples).  Orbits are closed by BFS from
unvisited seeds; the partition is independent of the seed order, which the
property suite checks by shuffling.

Two interchangeable kernels compute the closure: a numba-jitted scalar
loop and a vectorized numpy fallback.  EQUISURF_BACKEND=numpy|numba picks
one explicitly; the default uses numba when it imports.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from ..modp import check_odd_prime
from .models import Generator, SurfaceModel, generator_matrices, homology_rank

DEFAULT_BUDGET = 10 ** 8


class BudgetExceededError(RuntimeError):
    pass


def _budget() -> int:
    env = os.environ.get("EQUISURF_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def backend_name(explicit: Optional[str] = None) -> str:
    choice = explicit or os.environ.get("EQUISURF_BACKEND", "auto")
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        return "numba"
    try:
        from . import _kernels_numba  # noqa: F401

        return "numba"
    except Exception:
        return "numpy"


@dataclass(frozen=True)
class OrbitReport:
    p: int
    model: SurfaceModel
    rank: int
    nonzero_orbit_count: int
    representatives: tuple[tuple[int, ...], ...]
    orbit_sizes: tuple[int, ...]
    state_count: int

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "model": str(self.model),
            "rank": self.rank,
            "nonzero_orbits": self.nonzero_orbit_count,
            "representatives": [list(r) for r in self.representatives],
            "state_count": self.state_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _powers(p: int, rank: int) -> np.ndarray:
    return np.array([p ** (rank - 1 - k) for k in range(rank)], dtype=np.int64)


def _decode_one(index: int, p: int, rank: int) -> tuple[int, ...]:
    digits = []
    for k in range(rank - 1, -1, -1):
        digits.append((index // p ** k) % p)
    return tuple(digits)


def _encode_one(vector: Sequence[int], p: int) -> int:
    idx = 0
    for v in vector:
        idx = idx * p + (v % p)
    return idx


def _closure_fn(backend: str):
    if backend == "numba":
        from ._kernels_numba import closure as numba_closure

        def run(seed, mats, p, rank, visited, powers, scratch):
            return numba_closure(seed, mats, p, rank, visited, powers, scratch)

        return run
    from ._kernels_numpy import closure as numpy_closure

    def run(seed, mats, p, rank, visited, powers, scratch):
        return numpy_closure(seed, [m for m in mats], p, rank, visited, powers)

    return run


def _prepare(model: SurfaceModel, p: int, budget: Optional[int], generators):
    check_odd_prime(p)
    rank = homology_rank(model)
    n_states = p ** rank
    limit = budget if budget is not None else _budget()
    if n_states > limit:
        raise BudgetExceededError(
            f"{n_states} states exceed the budget of {limit} (raise --budget or EQUISURF_BUDGET)"
        )
    gens = generators if generators is not None else generator_matrices(model, p)
    mats = np.stack([g.matrix % p for g in gens]).astype(np.int64)
    return rank, n_states, mats


def orbit_count(
    model: SurfaceModel,
    p: int,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
    seed_order: Optional[Iterable[int]] = None,
    generators: Optional[list[Generator]] = None,
) -> OrbitReport:
    """Exact orbit partition of the nonzero vectors.

    `seed_order` overrides the order unvisited seeds are explored in (the
    resulting partition must not depend on it).  `generators` substitutes
    an explicit matrix list for the model's own generators.
    """
    rank, n_states, mats = _prepare(model, p, budget, generators)
    visited = np.zeros(n_states, dtype=np.bool_)
    visited[0] = True
    powers = _powers(p, rank)
    run = _closure_fn(backend_name(backend))
    scratch = np.empty(n_states, dtype=np.int64) if backend_name(backend) == "numba" else None

    reps: list[int] = []
    sizes: list[int] = []
    order = seed_order if seed_order is not None else range(1, n_states)
    for seed in order:
        if visited[seed]:
            continue
        best, size = run(int(seed), mats, p, rank, visited, powers, scratch)
        reps.append(int(best))
        sizes.append(int(size))
    if not bool(visited.all()):
        raise RuntimeError("seed order did not cover the state space")
    pairs = sorted(zip(reps, sizes))
    return OrbitReport(
        p=p,
        model=model,
        rank=rank,
        nonzero_orbit_count=len(pairs),
        representatives=tuple(_decode_one(r, p, rank) for r, _ in pairs),
        orbit_sizes=tuple(sz for _, sz in pairs),
        state_count=n_states,
    )


def orbit_of(
    vector: Sequence[int],
    model: SurfaceModel,
    p: int,
    budget: Optional[int] = None,
    backend: Optional[str] = None,
    generators: Optional[list[Generator]] = None,
) -> tuple[int, ...]:
    """Canonical representative (lexicographically least vector) of the
    orbit through `vector`."""
    rank, n_states, mats = _prepare(model, p, budget, generators)
    if len(vector) != rank:
        raise ValueError(f"vector must have length {rank}")
    seed = _encode_one(vector, p)
    if seed == 0:
        raise ValueError("the zero vector has no nonzero orbit")
    visited = np.zeros(n_states, dtype=np.bool_)
    powers = _powers(p, rank)
    run = _closure_fn(backend_name(backend))
    scratch = np.empty(n_states, dtype=np.int64) if backend_name(backend) == "numba" else None
    best, _ = run(seed, mats, p, rank, visited, powers, scratch)
    return _decode_one(int(best), p, rank)
