"""Numba orbit closure: the same BFS as the numpy kernel, as one jitted
scalar loop over a preallocated frontier stack."""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def closure(seed, mats, p, rank, visited, powers, stack):  # pragma: no cover
    """Mark the orbit of `seed`; returns (orbit minimum, orbit size).

    `mats` is a (n_mats, rank, rank) int64 array, `stack` a scratch int64
    array with room for the whole orbit.
    """
    top = 0
    stack[top] = seed
    top += 1
    visited[seed] = True
    best = seed
    size = 1
    digits = np.empty(rank, dtype=np.int64)
    image = np.empty(rank, dtype=np.int64)
    n_mats = mats.shape[0]
    while top > 0:
        top -= 1
        state = stack[top]
        rem = state
        for k in range(rank):
            digits[k] = rem // powers[k]
            rem -= digits[k] * powers[k]
        for m in range(n_mats):
            for a in range(rank):
                acc = 0
                for b in range(rank):
                    acc += mats[m, a, b] * digits[b]
                image[a] = acc % p
            idx = 0
            for a in range(rank):
                idx += image[a] * powers[a]
            if not visited[idx]:
                visited[idx] = True
                size += 1
                if idx < best:
                    best = idx
                stack[top] = idx
                top += 1
    return best, size
