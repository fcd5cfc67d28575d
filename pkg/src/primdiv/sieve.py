"""Segmented sieve of Eratosthenes and prime counting."""

import math

import numpy as np

from .errors import BudgetExceeded

# Largest argument any sieve-backed routine will accept without an explicit override.
SIEVE_LIMIT = 10**8
SEGMENT = 1 << 20


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _check_budget(x, limit):
    if x > limit:
        raise BudgetExceeded(f"sieve argument {x} exceeds the configured limit {limit}")


def segments(x: int, limit: int = SIEVE_LIMIT, segment: int = SEGMENT):
    """Yield arrays of consecutive primes <= x, one per segment."""
    _check_budget(x, limit)
    if x < 2:
        return
    base = simple_sieve(math.isqrt(x))
    low = 0
    while low <= x:
        high = min(low + segment, x + 1)
        mask = np.ones(high - low, dtype=bool)
        if low == 0:
            mask[: min(2, high)] = False
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low :: p] = False
        yield np.flatnonzero(mask).astype(np.int64) + low
        low = high


def primes_upto(x: int, limit: int = SIEVE_LIMIT) -> np.ndarray:
    if x < 2:
        return np.array([], dtype=np.int64)
    return np.concatenate(list(segments(x, limit)))


def prime_count(x: int, limit: int = SIEVE_LIMIT) -> int:
    """pi(x), the number of primes <= x."""
    return sum(len(seg) for seg in segments(x, limit))


def prime_count_mod(x: int, m: int, a: int, limit: int = SIEVE_LIMIT) -> int:
    """Number of primes p <= x with p = a (mod m)."""
    a %= m
    return sum(int(np.count_nonzero(seg % m == a)) for seg in segments(x, limit))


def prime_pi_table(x: int, limit: int = SIEVE_LIMIT) -> np.ndarray:
    """Array t with t[k] = pi(k) for 0 <= k <= x."""
    _check_budget(x, limit)
    flags = np.zeros(x + 1, dtype=np.int64)
    flags[primes_upto(x, limit)] = 1
    return np.cumsum(flags)


def omega_table(x: int, limit: int = SIEVE_LIMIT) -> np.ndarray:
    """Array w with w[k] = number of distinct prime divisors of k (w[0] = w[1] = 0)."""
    _check_budget(x, limit)
    w = np.zeros(x + 1, dtype=np.int8)
    for p in primes_upto(x, limit):
        w[p::p] += 1
    w[0] = 0
    return w
