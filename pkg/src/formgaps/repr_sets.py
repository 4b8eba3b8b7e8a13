"""Representation counts and membership for quadratic-form value sets.

Sets handled, with their divisor-sum representation counts:

    square2        n = x^2 + y^2           r2(n) = 4 * F_chi4(n)
    triangle       n = x^2 + x*y + y^2     R2(n) = 6 * F_chi3(n)
    triangle_star  n = c^2 + 3*d^2         (a subset of triangle)
    diamond(D)     ideal-norm values of the quadratic field with
                   fundamental discriminant D; membership is F_chiD(n) > 0

Membership of square2/triangle is decided by exponent parity at the primes
where the relevant character is -1 (p = 3 mod 4, resp. p = 2 mod 3); the
divisor formulas then serve as an independent cross-check.  Enumeration modes
count lattice points directly and never touch the divisor formulas, so the
two routes validate each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import factorize, primes
from .characters import F, F_window, chi3, chi4, kronecker_character
from .errors import BudgetError
from .util import DEFAULT_CHUNK, chunk_ranges, map_ordered

WINDOW_MAX = 1_000_000_000


@dataclass(frozen=True)
class SetId:
    """Tag for a representable set; diamond carries its fundamental discriminant."""

    tag: str
    disc: int | None = None

    def __str__(self):
        return self.tag if self.disc is None else f"{self.tag}:{self.disc}"


SQUARE2 = SetId("square2")
TRIANGLE = SetId("triangle")
TRIANGLE_STAR = SetId("triangle_star")


def diamond(D: int) -> SetId:
    kronecker_character(D)  # validates the discriminant
    return SetId("diamond", D)


def parse_set(text: str) -> SetId:
    text = text.strip()
    if text == "square2":
        return SQUARE2
    if text == "triangle":
        return TRIANGLE
    if text == "triangle_star":
        return TRIANGLE_STAR
    if text.startswith("diamond:"):
        return diamond(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown set: {text!r}")


def _r2_enumerate(n: int) -> int:
    # ordered signed pairs (x, y) with x^2 + y^2 = n
    s = math.isqrt(n)
    cnt = 0
    for x in range(-s, s + 1):
        y2 = n - x * x
        y = math.isqrt(y2)
        if y * y == y2:
            cnt += 1 if y == 0 else 2
    return cnt


def _R2_enumerate(n: int) -> int:
    # x^2 + x*y + y^2 >= (x^2 + y^2)/2 bounds the search box at sqrt(2n)
    cnt = 0
    for x in range(-math.isqrt(2 * n), math.isqrt(2 * n) + 1):
        disc = 4 * n - 3 * x * x
        if disc < 0:
            continue
        r = math.isqrt(disc)
        if r * r != disc:
            continue
        for num in {-x + r, -x - r}:
            if num % 2 == 0:
                cnt += 1
    return cnt


def r2(n: int, mode: str = "formula") -> int:
    """Number of ordered signed representations of n as a sum of two squares."""
    if n < 1:
        raise ValueError("r2 requires n >= 1")
    if mode == "formula":
        return 4 * F(chi4(), n)
    if mode == "enumerate":
        return _r2_enumerate(n)
    raise ValueError(f"unknown mode {mode!r}")


def R2(n: int, mode: str = "formula") -> int:
    """Number of ordered signed representations by x^2 + x*y + y^2."""
    if n < 1:
        raise ValueError("R2 requires n >= 1")
    if mode == "formula":
        return 6 * F(chi3(), n)
    if mode == "enumerate":
        return _R2_enumerate(n)
    raise ValueError(f"unknown mode {mode!r}")


def ideal_count(n: int, D: int) -> int:
    """Number of ideals of norm n in the quadratic field of discriminant D."""
    if n < 1:
        raise ValueError("ideal_count requires n >= 1")
    return F(kronecker_character(D), n)


def _exponents_ok(n: int, bad_mod: int, bad_res: int) -> bool:
    return all(
        e % 2 == 0 for p, e in factorize(n).factors if p % bad_mod == bad_res
    )


def _triangle_star_member(n: int) -> bool:
    for d in range(0, math.isqrt(n // 3) + 1):
        r = n - 3 * d * d
        c = math.isqrt(r)
        if c * c == r:
            return True
    return False


def is_member(s: SetId, n: int) -> bool:
    """Membership of n >= 0 in the set s (0 belongs to the three form sets)."""
    if n < 0:
        raise ValueError("is_member requires n >= 0")
    if n == 0:
        return s.tag != "diamond"
    if s.tag == "square2":
        return _exponents_ok(n, 4, 3)
    if s.tag == "triangle":
        return _exponents_ok(n, 3, 2)
    if s.tag == "triangle_star":
        return _triangle_star_member(n)
    if s.tag == "diamond":
        return F(kronecker_character(s.disc), n) > 0
    raise ValueError(f"unknown set {s}")


def _exponent_parity_window(lo: int, hi: int, bad_mod: int, bad_res: int) -> np.ndarray:
    """Membership mask on [lo, hi] for "every bad prime has even exponent".

    Segmented sieve: divide out every prime p <= sqrt(hi) while tracking
    exponent parity; the surviving cofactor is 1 or a single prime, so one
    residue test finishes the job.
    """
    width = hi - lo + 1
    ok = np.ones(width, dtype=bool)
    rem = np.arange(lo, hi + 1, dtype=np.int64)
    if lo == 0:
        rem[0] = 1  # n = 0 is fixed up by the caller
    for p in primes(math.isqrt(hi)):
        p = int(p)
        idx = np.arange((-lo) % p, width, p)
        if idx.size == 0:
            continue
        sub = rem[idx]
        e = np.zeros(idx.size, dtype=np.int64)
        mask = sub % p == 0
        while mask.any():
            sub[mask] //= p
            e[mask] += 1
            mask &= sub % p == 0
        rem[idx] = sub
        if p % bad_mod == bad_res:
            ok[idx] &= e % 2 == 0
    ok &= ~((rem > 1) & (rem % bad_mod == bad_res))
    return ok


def _triangle_star_window(lo: int, hi: int) -> np.ndarray:
    width = hi - lo + 1
    out = np.zeros(width, dtype=bool)
    for d in range(0, math.isqrt(hi // 3) + 1):
        base = 3 * d * d
        t = max(lo - base, 0)
        c_lo = math.isqrt(t)
        if c_lo * c_lo < t:
            c_lo += 1
        c_hi = math.isqrt(hi - base)
        if c_lo > c_hi:
            continue
        c = np.arange(c_lo, c_hi + 1, dtype=np.int64)
        out[c * c + base - lo] = True
    return out


def _member_window(s: SetId, lo: int, hi: int) -> np.ndarray:
    if s.tag == "square2":
        out = _exponent_parity_window(lo, hi, 4, 3)
    elif s.tag == "triangle":
        out = _exponent_parity_window(lo, hi, 3, 2)
    elif s.tag == "triangle_star":
        out = _triangle_star_window(lo, hi)
    elif s.tag == "diamond":
        out = np.zeros(hi - lo + 1, dtype=bool)
        flo = max(lo, 1)
        out[flo - lo :] = F_window(kronecker_character(s.disc), flo, hi) > 0
    else:
        raise ValueError(f"unknown set {s}")
    if lo == 0:
        out[0] = s.tag != "diamond"
    return out


def sieve_members(s: SetId, lo: int, hi: int, threads: int = 1) -> np.ndarray:
    """Boolean mask over [lo, hi]: entry n - lo is True iff is_member(s, n)."""
    if lo < 0 or hi < lo:
        raise ValueError("sieve_members requires 0 <= lo <= hi")
    if hi - lo + 1 > WINDOW_MAX:
        raise BudgetError(f"window of {hi - lo + 1} exceeds {WINDOW_MAX}")
    parts = map_ordered(
        lambda c: _member_window(s, c[0], c[1]), chunk_ranges(lo, hi, DEFAULT_CHUNK), threads
    )
    return parts[0] if len(parts) == 1 else np.concatenate(parts)
