"""Local densities of sums of two squares in residue classes.

    eta_a(q)    = #{ 1 <= alpha, beta <= q : alpha^2 + beta^2 = a (mod q) }
    lambda_a(q) = eta_a(q) / q        (multiplicative in q, for every fixed a)

For odd primes p the value of lambda_a(p^j) is in closed form, branching on
p mod 4 and the valuation v = nu_p(a):

    p = 1 mod 4, p | a:   1 + j(1 - 1/p)         for 1 <= j <= v
                          (1 + v)(1 - 1/p)       for j >= v + 1
    p = 3 mod 4, p | a:   1/p  (j odd) or 1 (j even)   for 1 <= j <= v
                          1 + 1/p  (v even) or 0 (v odd)  for j >= v + 1
    p odd, p does not divide a:   1 - chi4(p)/p  for every j >= 1

Powers of two carry no closed form here, only the envelope
0 <= lambda_a(2^j) <= 4, so they are counted directly.  All lambda values are
exact rationals; the multiplicative assembly of eta must therefore come out
an exact integer, which is enforced rather than assumed.

The progression sums S_{q,a}(x) = sum of F_chi4(n) over n <= x, n = a (mod q)
have main term pi * eta_a(q) * x / (4 q^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import factorize, is_prime, nu, spf_table
from .characters import chi4, F_window
from .errors import BudgetError, InvariantError
from .util import chunk_ranges, map_ordered

ETA_BRUTE_MAX = 1 << 23  # direct residue counting cap (memory: a few arrays of q)

PROGRESSION_MAX = 1_000_000_000


@dataclass(frozen=True)
class LocalDensity:
    """One local count: eta = eta_a(q) and its normalized form lambda = eta/q."""

    a: int
    q: int
    eta: int
    lam: Fraction

    def __post_init__(self):
        if not (0 <= self.eta <= self.q * self.q):
            raise InvariantError("eta out of range [0, q^2]")
        if self.lam * self.q != self.eta:
            raise InvariantError("lambda * q != eta")


@lru_cache(maxsize=8)
def _square_counts(q: int) -> np.ndarray:
    """counts[r] = #{1 <= alpha <= q : alpha^2 = r (mod q)} (treat as read-only)."""
    counts = np.zeros(q, dtype=np.int64)
    for lo, hi in chunk_ranges(1, q, 1 << 22):
        alpha = np.arange(lo, hi + 1, dtype=np.int64)
        counts += np.bincount((alpha * alpha) % q, minlength=q)
    return counts


def eta_brute(a: int, q: int) -> int:
    """Direct count of ordered pairs in [1,q]^2 with alpha^2 + beta^2 = a (mod q).

    Counted through squares-per-residue tables in O(q); this is the oracle the
    multiplicative route is checked against, so it never consults the closed
    forms.
    """
    if q < 1:
        raise ValueError("eta_brute requires q >= 1")
    if q > ETA_BRUTE_MAX:
        raise BudgetError(f"eta_brute modulus {q} exceeds {ETA_BRUTE_MAX}")
    counts = _square_counts(q)
    idx = (a - np.arange(q, dtype=np.int64)) % q
    return int(counts @ counts[idx])


def lambda_prime_power(p: int, j: int, a: int) -> Fraction:
    """lambda_a(p^j) as an exact rational, for prime p, j >= 1, a != 0."""
    if j < 1:
        raise ValueError("lambda_prime_power requires j >= 1")
    if a == 0:
        raise ValueError("lambda_prime_power requires a != 0 (valuations must be finite)")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        return Fraction(eta_brute(a, 2 ** j), 2 ** j)
    v = nu(p, a)
    if v == 0:
        chi = 1 if p % 4 == 1 else -1
        return 1 - Fraction(chi, p)
    if p % 4 == 1:
        if j <= v:
            return 1 + j * (1 - Fraction(1, p))
        return (1 + v) * (1 - Fraction(1, p))
    if j <= v:
        return Fraction(1, p) if j % 2 == 1 else Fraction(1)
    return 1 + Fraction(1, p) if v % 2 == 0 else Fraction(0)


def eta(a: int, q: int) -> int:
    """eta_a(q) assembled multiplicatively over the prime powers of q.

    Odd prime powers use the closed forms when a != 0; powers of two, and
    every prime power when a = 0, fall back to direct counting.  The result
    must be an exact integer or the assembly is reported as faulty.
    """
    if q < 1:
        raise ValueError("eta requires q >= 1")
    total = Fraction(1)
    for p, e in factorize(q).factors:
        pe = p ** e
        if p == 2 or a == 0:
            part = Fraction(eta_brute(a, pe))
        else:
            part = lambda_prime_power(p, e, a) * pe
        total *= part
    if total.denominator != 1:
        raise InvariantError(f"eta({a}, {q}) assembled to non-integer {total}")
    return int(total)


def local_density(a: int, q: int) -> LocalDensity:
    e = eta(a, q)
    return LocalDensity(a=a, q=q, eta=e, lam=Fraction(e, q))


def lambda_bar(a: int, n: int) -> Fraction:
    """Moebius convolution (lambda_a * mu)(n) = sum_{d|n} mu(n/d) lambda_a(d)."""
    if n < 1:
        raise ValueError("lambda_bar requires n >= 1")
    from .arith import divisors, mobius

    total = Fraction(0)
    for d in divisors(factorize(n)):
        m = mobius(n // d)
        if m:
            total += m * Fraction(eta(a, d), d)
    return total


def tolev_main(q: int, a: int, x: float) -> float:
    """Main term pi * eta_a(q) / (4 q^2) * x of the progression sum S_{q,a}(x)."""
    if q < 1 or x < 1:
        raise ValueError("tolev_main requires q >= 1 and x >= 1")
    return math.pi * eta(a, q) * x / (4 * q * q)


def S_qa(q: int, a: int, x: int, threads: int = 1) -> int:
    """Exact sum of F_chi4(n) over n <= x with n = a (mod q)."""
    if q < 1 or x < 1:
        raise ValueError("S_qa requires q >= 1 and x >= 1")
    if x > PROGRESSION_MAX:
        raise BudgetError(f"S_qa length {x} exceeds {PROGRESSION_MAX}")

    def one(c):
        lo, hi = c
        w = F_window(chi4(), lo, hi)
        start = (a - lo) % q
        return int(w[start::q].sum())

    return sum(map_ordered(one, chunk_ranges(lo=1, hi=x), threads))


@lru_cache(maxsize=16)
def eta_table(a: int, n_max: int) -> np.ndarray:
    """eta_a(n) for n = 0..n_max (entry 0 unused), via multiplicativity.

    A smallest-prime-factor walk splits each n as p^j * cofactor, so every
    entry costs O(1) beyond its prime-power seed.
    """
    spf = spf_table(n_max)
    out = np.zeros(n_max + 1, dtype=np.int64)
    out[1] = 1
    ppart = [0] * (n_max + 1)
    expo = [0] * (n_max + 1)
    pp_cache: dict[tuple[int, int], int] = {}
    for n in range(2, n_max + 1):
        p = int(spf[n])
        m = n // p
        if m > 1 and int(spf[m]) == p:
            ppart[n] = ppart[m] * p
            expo[n] = expo[m] + 1
        else:
            ppart[n] = p
            expo[n] = 1
        cof = n // ppart[n]
        if cof > 1:
            out[n] = out[cof] * out[ppart[n]]
        else:
            key = (p, expo[n])
            val = pp_cache.get(key)
            if val is None:
                if p == 2 or a == 0:
                    val = eta_brute(a, n)
                else:
                    lam = lambda_prime_power(p, expo[n], a) * n
                    if lam.denominator != 1:
                        raise InvariantError("non-integer prime-power density")
                    val = int(lam)
                pp_cache[key] = val
            out[n] = val
    return out
