"""Small arithmetic helpers for the prime fields used everywhere else."""

from __future__ import annotations


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p: int) -> int:
    if not is_odd_prime(p):
        raise ValueError(f"p must be an odd prime, got {p!r}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError("0 is not invertible")
    return pow(a, -1, p)


def half_mod(a: int, p: int) -> int:
    """a / 2 mod p (well defined, p odd)."""
    return (a * inv_mod(2, p)) % p


def units(p: int) -> range:
    return range(1, p)


def pair_rep(a: int, p: int) -> int:
    """Representative of the unordered pair {a, p-a}: the smaller unit."""
    a %= p
    if a == 0:
        raise ValueError("pair representative of 0 is undefined")
    return min(a, p - a)
