"""Pure-numpy orbit closure: frontier BFS with vectorized matrix action."""

from __future__ import annotations

import numpy as np


def decode(indices: np.ndarray, p: int, rank: int, powers: np.ndarray) -> np.ndarray:
    """Base-p digits (big-endian), shape (rank, len(indices))."""
    return (indices[None, :] // powers[:, None]) % p


def encode(digits: np.ndarray, powers: np.ndarray) -> np.ndarray:
    return (digits * powers[:, None]).sum(axis=0)


def closure(seed: int, mats: list[np.ndarray], p: int, rank: int,
            visited: np.ndarray, powers: np.ndarray) -> tuple[int, int]:
    """Mark the orbit of `seed`; returns (orbit minimum, orbit size)."""
    frontier = np.array([seed], dtype=np.int64)
    visited[seed] = True
    best = seed
    size = 1
    while frontier.size:
        digits = decode(frontier, p, rank, powers)
        nxt = [encode((m @ digits) % p, powers) for m in mats]
        cand = np.unique(np.concatenate(nxt))
        fresh = cand[~visited[cand]]
        visited[fresh] = True
        size += fresh.size
        if fresh.size:
            best = min(best, int(fresh.min()))
        frontier = fresh
    return best, size
