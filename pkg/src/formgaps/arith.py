"""Exact integer arithmetic: factorization, p-adic valuations, divisor functions.

Everything here is pure and deterministic.  Inputs are capped at 2^63; within
that range factorization is trial division with a 2-3-5 wheel (complete for
n <= 10^12) backed by Brent's rho for larger cofactors, and primality is the
deterministic Miller-Rabin base set for 64-bit integers.  Python integers keep
all intermediate products exact, so quartic expressions downstream never
overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_INPUT = 1 << 63

_TRIAL_LIMIT = 1_000_000  # trial division alone is complete up to its square

_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)  # increments from 7 through the 2-3-5 wheel

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class _InfinityType:
    """Valuation of zero.  A dedicated type, so arithmetic with it raises."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _InfinityType()


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 2^64."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition: value == prod(p**e for p, e in factors).

    Primes are strictly increasing and individually primality-checked;
    exponents are positive.  factorize(1) carries an empty factor tuple.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p ** e
            last = p
        if prod != self.value:
            raise ValueError("factor product does not reconstruct value")


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite n (n odd, not a prime power of 2)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        y, c, m = seed, seed + 1, 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1


def _split(n: int, out: dict) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent_rho(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Prime-power decomposition of n, for 1 <= n <= 2^63."""
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    if n > MAX_INPUT:
        raise ValueError("factorize requires n <= 2^63")
    m = n
    fac = []
    for p in (2, 3, 5):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac.append((p, e))
    p, i = 7, 0
    while p * p <= m and p <= _TRIAL_LIMIT:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac.append((p, e))
        p += _WHEEL[i]
        i = (i + 1) & 7
    if m > 1:
        if p * p > m or is_prime(m):
            fac.append((m, 1))
        else:
            extra: dict[int, int] = {}
            _split(m, extra)
            fac.extend(sorted(extra.items()))
            fac.sort()
    return Factorization(n, tuple(fac))


def nu(p: int, w: int):
    """Largest t with p^t | w; INFINITY when w == 0.  p must be prime."""
    if not is_prime(p):
        raise ValueError(f"nu requires a prime p, got {p}")
    if w == 0:
        return INFINITY
    w = abs(w)
    t = 0
    while w % p == 0:
        w //= p
        t += 1
    return t


def divisors(f: Factorization) -> list[int]:
    """All divisors of f.value in increasing order."""
    out = [1]
    for p, e in f.factors:
        pk = 1
        block = list(out)
        for _ in range(e):
            pk *= p
            out.extend(d * pk for d in block)
    out.sort()
    return out


def mobius(n: int) -> int:
    """Moebius function: 0 unless n is squarefree, else (-1)^(number of primes)."""
    if n < 1:
        raise ValueError("mobius requires n >= 1")
    f = factorize(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def tau(n: int) -> int:
    """Number of divisors of n."""
    if n < 1:
        raise ValueError("tau requires n >= 1")
    out = 1
    for _, e in factorize(n).factors:
        out *= e + 1
    return out


_prime_cache = np.array([], dtype=np.int64)
_prime_cache_limit = 0


def primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (cached, grow-only)."""
    global _prime_cache, _prime_cache_limit
    if limit > _prime_cache_limit:
        new_limit = max(limit, 2 * _prime_cache_limit, 1 << 16)
        sieve = np.ones(new_limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(new_limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        _prime_cache = np.flatnonzero(sieve).astype(np.int64)
        _prime_cache_limit = new_limit
    return _prime_cache[: int(np.searchsorted(_prime_cache, limit, side="right"))]


@lru_cache(maxsize=8)
def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor table for 0..limit (spf[0] = spf[1] = 0)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
        if p * p > limit:
            break
    spf[spf == 0] = np.arange(limit + 1)[spf == 0]
    spf[:2] = 0
    return spf
