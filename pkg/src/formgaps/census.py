"""Exact shifted correlation sums and interval censuses.

For two representable sets W1, W2 and a shift a, the census counts

    S(W1, W2, a) = { n : n in W1, n + a in W2 }

inside a window [x, x+H] by sieving both shifted windows and intersecting the
masks; the count is always exact, only the recorded witness list is capped.

The correlation sums are the exact integers

    J(x)        = sum_{n <= x, gcd(n, b) = 1} F_psi(n) * F_chi4(n + a)
    general     = sum_{n <= x} F_psi(n) * F_rho(n + a)
    two-squares = sum_{n <= x} r2(n) * r2(n + a)        (= 16 * general chi4,chi4)

summed over n >= max(1, 1 - a) so that n + a stays >= 1.  Ratio reports divide
J by its predicted main term coefficient times x; trend toward 1 is the
empirical face of the asymptotic, since the error term's logarithmic factors
dwarf any reachable x and make absolute-error checks vacuous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic_constants import main_term
from .characters import DirichletCharacter, F_window, chi4
from .errors import BudgetError
from .repr_sets import SetId, sieve_members
from .util import chunk_ranges, map_ordered

CORRELATION_MAX = 1_000_000_000
WINDOW_MAX = 1_000_000_000
WITNESS_CAP_DEFAULT = 10_000


@dataclass(frozen=True)
class CensusRecord:
    """One interval census; count is exact, witnesses may be truncated."""

    set1: SetId
    set2: SetId
    a: int
    x: int
    H: int
    count: int
    witnesses: tuple[int, ...]


@dataclass(frozen=True)
class CorrelationReport:
    """One correlation data point against its main-term prediction."""

    psi: str
    a: int
    x: int
    J: int
    main: float
    ratio: float


def _coprime_mask(lo: int, hi: int, b: int) -> np.ndarray:
    residues = np.array([r for r in range(b) if math.gcd(r, b) == 1], dtype=np.int64)
    n = np.arange(lo, hi + 1, dtype=np.int64)
    return np.isin(n % b, residues)


def correlation_J(psi: DirichletCharacter, a: int, x: int, threads: int = 1) -> int:
    """Exact J(x) = sum over n <= x, gcd(n, b) = 1 of F_psi(n) F_chi4(n + a)."""
    if a == 0:
        raise ValueError("correlation_J requires a != 0")
    n_lo = max(1, 1 - a)
    if x < n_lo:
        return 0
    if x + abs(a) > CORRELATION_MAX:
        raise BudgetError(f"correlation budget {CORRELATION_MAX} exceeded")
    b = psi.modulus

    def one(c):
        lo, hi = c
        fa = F_window(psi, lo, hi)
        fb = F_window(chi4(), lo + a, hi + a)
        return int(np.sum(fa * fb * _coprime_mask(lo, hi, b), dtype=np.int64))

    return sum(map_ordered(one, chunk_ranges(n_lo, x), threads))


def correlation_general(
    psi: DirichletCharacter, rho: DirichletCharacter, a: int, x: int, threads: int = 1
) -> int:
    """Exact sum over n <= x of F_psi(n) F_rho(n + a), for a >= 1."""
    if a < 1:
        raise ValueError("correlation_general requires a >= 1")
    if x < 1:
        return 0
    if x + a > CORRELATION_MAX:
        raise BudgetError(f"correlation budget {CORRELATION_MAX} exceeded")

    def one(c):
        lo, hi = c
        return int(
            np.sum(F_window(psi, lo, hi) * F_window(rho, lo + a, hi + a), dtype=np.int64)
        )

    return sum(map_ordered(one, chunk_ranges(1, x), threads))


def estermann_correlation(a: int, x: int, threads: int = 1) -> int:
    """Exact sum over n <= x of r2(n) r2(n + a); the slope diagnostic only,
    since no closed form for its linear coefficient is carried here."""
    if a == 0:
        raise ValueError("estermann_correlation requires a != 0")
    n_lo = max(1, 1 - a)
    if x < n_lo:
        return 0
    if x + abs(a) > CORRELATION_MAX:
        raise BudgetError(f"correlation budget {CORRELATION_MAX} exceeded")

    def one(c):
        lo, hi = c
        return int(
            np.sum(F_window(chi4(), lo, hi) * F_window(chi4(), lo + a, hi + a), dtype=np.int64)
        )

    return 16 * sum(map_ordered(one, chunk_ranges(n_lo, x), threads))


def census_interval(
    set1: SetId,
    set2: SetId,
    a: int,
    x: int,
    H: int,
    witness_cap: int | None = WITNESS_CAP_DEFAULT,
    threads: int = 1,
) -> CensusRecord:
    """Exact census of S(set1, set2, a) on [x, x+H] via two shifted sieves.

    Candidates with n + a < 0 are excluded (membership of negative integers
    is undefined here).  The witness list stops at witness_cap entries; the
    count never does.
    """
    if x < 0 or H < 0:
        raise ValueError("census_interval requires x >= 0 and H >= 0")
    if H + 1 > WINDOW_MAX:
        raise BudgetError(f"census window {H + 1} exceeds {WINDOW_MAX}")
    lo_eff = max(x, -a)
    cap = math.inf if witness_cap is None else witness_cap
    count = 0
    wits: list[int] = []
    if lo_eff <= x + H:
        chunks = chunk_ranges(lo_eff, x + H)

        def one(c):
            lo, hi = c
            m = sieve_members(set1, lo, hi) & sieve_members(set2, lo + a, hi + a)
            return lo, m

        for lo, both in map_ordered(one, chunks, threads):
            count += int(both.sum())
            if len(wits) < cap:
                found = lo + np.flatnonzero(both)
                take = found[: int(min(cap - len(wits), found.size))]
                wits.extend(int(v) for v in take)
    return CensusRecord(set1, set2, a, x, H, count, tuple(wits))


def ratio_report(
    psi: DirichletCharacter,
    a: int,
    xs: list[int],
    eps: float = 1e-6,
    threads: int = 1,
) -> list[CorrelationReport]:
    """One CorrelationReport per x in xs (increasing): J, main term, and ratio."""
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        raise ValueError("xs must be increasing")
    m = main_term(psi, a, eps).value
    out = []
    for x in xs:
        J = correlation_J(psi, a, x, threads=threads)
        ratio = J / (m * x) if m > 0 and x > 0 else math.nan
        out.append(CorrelationReport(psi.name, a, x, J, m, ratio))
    return out
