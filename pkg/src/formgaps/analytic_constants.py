"""Numerical constants of the correlation main terms, with explicit error bounds.

Central objects, for a real non-trivial character psi mod even b >= 4 and a
shift a != 0:

    beta(psi, a)     = sum_{d >= 1} psi(d) eta_a(d) / d^2
                     = G(psi, b, a, 1),  the value at s = 1 of the Dirichlet
                       series G(rho, b, a, s) = sum rho(n) lambda_a(n) / n^s
    eta*(psi, a)     = sum over residues j in [1, b] with psi(j - a) = 1 of
                       pi * eta_j(b) / (2 b^2)      (an exact multiple of pi)
    main term        = beta * eta* (coefficient of x in the correlation sum)

G factors over odd primes (psi vanishes on evens), G_p = 1 + sum_{d >= 1}
rho(p^d) lambda_a(p^d) / p^(ds).  Since lambda_a(p^d) is eventually constant
in d, each G_p is a finite sum plus a geometric tail, exact in rationals.
For p not dividing a the modified factor collapses to

    G_p * (1 - psi(p)/p) = 1 - chi4(p) psi(p) / p^2        (exactly),

so beta = L(1, psi) * prod_p [G_p (1 - psi(p)/p)] converges absolutely with a
p^-2 tail, which drives the truncation point.

Dirichlet L-values are computed from character partial sums: summing to a
period boundary N leaves a tail whose first-order term is -(S1/k) N^-s with
S1 = sum_{r=1..k} chi(r) r, and an explicit second-order remainder bound.
No functional-equation machinery is used (only s in {1, 2} matters here).

For primitive psi, rho mod k > 1 and a >= 1, the general correlation
sum_{n <= x} F_psi(n) F_rho(n+a) has main-term coefficient

    M(a) = C_{psi,rho}(a)
           + { k^-1 sum_{t | P(a,k)} t^-1 sum_{j=1..k} psi(j) rho(a/t + j) }
             * C_{conj psi, conj rho}(a),
    C_{psi,rho}(a) = L(1,rho) L(1,psi) / L(2, rho*psi)
                     * sum_{d | a} psi(d) rho(d) / d,

where P(a,k) is the k-part of a.  When rho*psi degenerates to the principal
character (e.g. psi = rho real), L(2, rho*psi) is evaluated as the literal
product-character series, i.e. zeta(2) with the p | k factors removed; that
reading is a documented choice, not forced by the definitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize, nu, primes
from .characters import (
    DirichletCharacter,
    conjugate_character,
    product_character,
)
from .errors import BudgetError
from .local_densities import eta, eta_table, lambda_prime_power
from .util import map_ordered

EULER_PRIME_MAX = 100_000_000  # cap on the truncation point of the Euler product


@dataclass(frozen=True)
class TruncatedValue:
    """A numerical value with the explicit error bound of its truncation."""

    value: float
    error_bound: float
    terms_used: int

    def __post_init__(self):
        if not math.isfinite(self.error_bound) or self.error_bound < 0:
            raise ValueError("error_bound must be finite and non-negative")


@dataclass(frozen=True)
class PiMultiple:
    """An exact rational multiple of pi."""

    coeff: Fraction

    @property
    def value(self) -> float:
        return float(self.coeff) * math.pi


def _require_beta_character(psi: DirichletCharacter) -> None:
    if not psi.is_real:
        raise ValueError("a real character is required")
    if psi.is_trivial:
        raise ValueError("a non-trivial character is required")
    if psi.modulus % 2 or psi.modulus < 4:
        raise ValueError("an even modulus b >= 4 is required")


def _zeta_em(s: float) -> tuple[float, float]:
    """zeta(s) for real s > 1 by Euler-Maclaurin, with an error bound."""
    N = 1000
    n = np.arange(1, N + 1, dtype=np.float64)
    val = float(np.sum(n ** -s))
    val += N ** (1 - s) / (s - 1) - 0.5 * N ** -s + s * N ** (-s - 1) / 12
    err = abs(s * (s + 1) * (s + 2)) * N ** (-s - 3) / 720 + 1e-14
    return val, err


def L_value(chi: DirichletCharacter, s: float, eps: float = 1e-10) -> TruncatedValue:
    """Dirichlet L-series value L(s, chi) within eps, for real s >= 1.

    Principal characters are only admitted for s > 1 (the series diverges at
    s = 1) and are evaluated as zeta(s) with the p | k Euler factors removed,
    which is the literal value of the series with zeros retained.
    """
    if s < 1:
        raise ValueError("L_value requires s >= 1")
    if chi.is_trivial:
        if s <= 1:
            raise ValueError("the principal-character series diverges at s = 1")
        z, zerr = _zeta_em(s)
        corr = 1.0
        for p, _ in factorize(chi.modulus).factors:
            corr *= 1 - p ** -s
        return TruncatedValue(z * corr, zerr * corr + 1e-15 * abs(z), 1000)
    k = chi.modulus
    S1 = sum(chi(r) * r for r in range(1, k + 1))
    Sk2 = sum(abs(chi(r)) * r * r for r in range(1, k + 1))

    def tail_bound(N: int) -> float:
        e1 = s * abs(S1) * N ** (-s - 1)
        e2 = (s * (s + 1) / 2) * Sk2 * (N ** (-s - 2) + N ** (-s - 1) / ((s + 1) * k))
        return e1 + e2

    N = k * 32
    while tail_bound(N) > eps * 0.9 and N < 1 << 28:
        N *= 2
    if tail_bound(N) > eps:
        raise BudgetError("requested eps is out of reach for L_value")
    n = np.arange(1, N + 1, dtype=np.float64)
    table = chi.table().astype(np.complex128 if not chi.is_real else np.float64)
    terms = table[np.arange(1, N + 1) % k] * n ** -s
    val = terms.sum() - (S1 / k) * N ** -s
    if chi.is_real:
        val = float(val.real) if isinstance(val, complex) else float(val)
    err = tail_bound(N) + 1e-14 * (1 + abs(val))
    return TruncatedValue(val, err, N)


def _lambda_pp_profile(p: int, a: int) -> tuple[list[Fraction], Fraction]:
    """(head, tail): lambda_a(p^j) for j = 1..v, and its constant for j > v."""
    v = nu(p, a)
    head = [lambda_prime_power(p, j, a) for j in range(1, v + 1)]
    tail = lambda_prime_power(p, v + 1, a)
    return head, tail


def _Gp_exact(rho: DirichletCharacter, a: int, p: int, s: int) -> Fraction:
    """G_p at an integer point s, exactly (real rho)."""
    head, tail = _lambda_pp_profile(p, a)
    r = Fraction(rho(p), p ** s)
    total = Fraction(1)
    rd = Fraction(1)
    for lam in head:
        rd *= r
        total += lam * rd
    total += tail * (rd * r) / (1 - r)
    return total


def euler_factor_Gp(rho: DirichletCharacter, a: int, p: int, s: float) -> TruncatedValue:
    """Euler factor G_p(rho, a, s) = 1 + sum_d rho(p^d) lambda_a(p^d) p^(-ds).

    The lambda sequence is eventually constant in d, so the value is a finite
    sum plus a closed geometric tail: no truncation, error bound 0 (exact in
    rationals at integer s; float powers otherwise).
    """
    if p == 2 or not math.isfinite(s) or s <= 0.5:
        raise ValueError("euler_factor_Gp requires an odd prime and s > 1/2")
    if a == 0:
        raise ValueError("euler_factor_Gp requires a != 0")
    if rho.is_real and float(s).is_integer():
        g = _Gp_exact(rho, a, p, int(s))
        return TruncatedValue(float(g), 0.0, len(_lambda_pp_profile(p, a)[0]) + 1)
    head, tail = _lambda_pp_profile(p, a)
    r = rho(p) / p ** s
    total = 1.0
    rd = 1.0
    for lam in head:
        rd *= r
        total += float(lam) * rd
    total += float(tail) * (rd * r) / (1 - r)
    return TruncatedValue(total, 0.0, len(head) + 1)


_modified_product_cache: dict[tuple, tuple[float, int]] = {}


def _modified_prime_product(psi: DirichletCharacter, P: int) -> tuple[float, int]:
    """prod over odd p <= P of (1 - chi4(p) psi(p) / p^2), and the prime count."""
    key = (psi.name, psi.modulus, psi.values, P)
    hit = _modified_product_cache.get(key)
    if hit is not None:
        return hit
    ps = primes(P)
    ps = ps[ps > 2]
    chi4v = np.where(ps % 4 == 1, 1.0, -1.0)
    psiv = np.asarray(psi.values, dtype=np.float64)[ps % psi.modulus]
    fac = 1.0 - chi4v * psiv / ps.astype(np.float64) ** 2
    out = (float(np.prod(fac)), int(ps.size))
    _modified_product_cache[key] = out
    return out


def beta(psi: DirichletCharacter, a: int, eps: float = 1e-6) -> TruncatedValue:
    """beta(psi, a) = sum_d psi(d) eta_a(d) / d^2 within eps, by Euler product.

    Truncation point P is chosen so the log-tail envelope sum_{p > P} 4/p^2
    stays below eps/2; the conditionally convergent part is carried by
    L(1, psi), and the p | a factors are restored exactly.
    """
    _require_beta_character(psi)
    if a == 0:
        raise ValueError("beta requires a != 0")
    P = max(1000, math.ceil(8.0 / eps))
    if P > EULER_PRIME_MAX:
        raise BudgetError("eps is too small for the Euler-product budget")
    L1 = L_value(psi, 1.0, eps / 8)
    base, nprimes = _modified_prime_product(psi, P)
    val = L1.value * base
    extra_terms = 0
    for p, _ in factorize(abs(a)).factors:
        if p == 2:
            continue
        if p <= P:
            val /= 1 - (1 if p % 4 == 1 else -1) * psi(p) / p ** 2
        exact = _Gp_exact(psi, a, p, 1) * (1 - Fraction(psi(p), p))
        val *= float(exact)
        extra_terms += 1
    tail_rel = math.expm1(4.0 / P)
    rel = tail_rel + L1.error_bound / max(abs(L1.value), 1e-300) + 1e-10
    err = abs(val) * rel * (1 + rel)
    return TruncatedValue(val, err, nprimes + extra_terms)


def beta_direct_series(psi: DirichletCharacter, a: int, n_max: int = 100_000) -> TruncatedValue:
    """Partial sum of sum_d psi(d) eta_a(d) / d^2 with a fitted tail bound.

    The tail estimate comes from summation by parts against the partial sums
    C(y) = sum_{n <= y} psi(n) eta_a(n), whose growth envelope K y log y is
    fitted on the computed range (the analytic bound hides its constant), so
    the result is oracle-grade for cross-checks, not acceptance-critical.
    """
    _require_beta_character(psi)
    if a == 0:
        raise ValueError("beta_direct_series requires a != 0")
    et = eta_table(a, n_max)[1:].astype(np.float64)
    n = np.arange(1, n_max + 1, dtype=np.int64)
    psiv = np.asarray(psi.values, dtype=np.float64)[n % psi.modulus]
    val = float(np.sum(psiv * et / n.astype(np.float64) ** 2))
    running = np.cumsum(psiv * et)
    y = n[999:].astype(np.float64)
    K = float(np.max(np.abs(running[999:]) / (y * np.log(y))))
    tail = 3.0 * K * (3 * math.log(n_max) + 2) / n_max
    return TruncatedValue(val, tail, n_max)


def eta_star(psi: DirichletCharacter, a: int) -> PiMultiple:
    """eta*(psi, a): sum of pi * eta_j(b) / (2 b^2) over j in [1, b] with
    psi(j - a) = 1.  Exact as a rational multiple of pi."""
    _require_beta_character(psi)
    b = psi.modulus
    coeff = Fraction(0)
    for j in range(1, b + 1):
        if psi((j - a) % b) == 1:
            coeff += Fraction(eta(j, b), 2 * b * b)
    return PiMultiple(coeff)


def main_term(psi: DirichletCharacter, a: int, eps: float = 1e-6) -> TruncatedValue:
    """Coefficient beta(psi, a) * eta*(psi, a) of x in the correlation sum."""
    es = eta_star(psi, a)
    if es.coeff == 0:
        return TruncatedValue(0.0, 0.0, 0)
    eps_beta = eps / (2 * es.value)
    b = beta(psi, a, eps_beta)
    return TruncatedValue(b.value * es.value, b.error_bound * es.value, b.terms_used)


def P_part(a: int, k: int) -> int:
    """The k-part of a: the product of p^nu_p(a) over the primes p dividing k."""
    if a < 1 or k <= 1:
        raise ValueError("P_part requires a >= 1 and k > 1")
    t = 1
    for p, e in factorize(a).factors:
        if k % p == 0:
            t *= p ** e
    return t


def _compose_rel_error(value: float, parts: list[tuple[float, float]]) -> float:
    rel = 0.0
    for v, e in parts:
        rel += e / max(abs(v) - e, 1e-300) if abs(v) > e else float("inf")
    if not math.isfinite(rel):
        return float("inf") if value else 0.0
    return abs(value) * rel * (1 + rel) + 1e-15


def muller_C(
    psi: DirichletCharacter, rho: DirichletCharacter, a: int, eps: float = 1e-8
) -> TruncatedValue:
    """C_{psi,rho}(a) = L(1,rho) L(1,psi) / L(2, rho psi) * sum_{d|a} psi(d) rho(d) / d."""
    if psi.modulus != rho.modulus or psi.modulus <= 1:
        raise ValueError("muller_C requires equal moduli k > 1")
    if not (psi.is_primitive and rho.is_primitive):
        raise ValueError("muller_C requires primitive characters")
    if a < 1:
        raise ValueError("muller_C requires a >= 1")
    from .arith import divisors

    dsum = Fraction(0)
    for d in divisors(factorize(a)):
        dsum += Fraction(psi(d) * rho(d), d)
    L1r = L_value(rho, 1.0, eps / 8)
    L1p = L_value(psi, 1.0, eps / 8)
    L2 = L_value(product_character(psi, rho), 2.0, eps / 8)
    value = L1r.value * L1p.value / L2.value * float(dsum)
    err = _compose_rel_error(
        value,
        [(L1r.value, L1r.error_bound), (L1p.value, L1p.error_bound), (L2.value, L2.error_bound)],
    )
    return TruncatedValue(value, err, L1r.terms_used + L1p.terms_used + L2.terms_used)


def muller_main(
    psi: DirichletCharacter, rho: DirichletCharacter, a: int, eps: float = 1e-8
) -> TruncatedValue:
    """Full main-term coefficient M_{psi,rho}(a) of sum_{n<=x} F_psi(n) F_rho(n+a).

    Only a >= 1 is admitted; negative shifts are rejected rather than extended.
    """
    if a < 1:
        raise ValueError("muller_main requires a >= 1")
    k = psi.modulus
    C = muller_C(psi, rho, a, eps / 2)
    psi_bar, rho_bar = conjugate_character(psi), conjugate_character(rho)
    if psi_bar is psi and rho_bar is rho:
        C_bar = C
    else:
        C_bar = muller_C(psi_bar, rho_bar, a, eps / 2)
    bracket = Fraction(0)
    from .arith import divisors

    for t in divisors(factorize(P_part(a, k))):
        inner = sum(psi(j) * rho((a // t + j) % k) for j in range(1, k + 1))
        bracket += Fraction(inner, t)
    bracket = bracket / k
    value = C.value + float(bracket) * C_bar.value
    err = C.error_bound + abs(float(bracket)) * C_bar.error_bound
    return TruncatedValue(value, err, C.terms_used + C_bar.terms_used)


def G_series(
    rho: DirichletCharacter, a: int, s: float, n_max: int = 100_000
) -> TruncatedValue:
    """Partial sum of G(rho, b, a, s) = sum rho(n) lambda_a(n) / n^s, s > 0.

    The tail bound fits the constant of the |sum_{n<=x} rho(n) eta_a(n)|
    <= K x log x envelope empirically, so this is diagnostic-grade: useful
    for convergence pictures and cross-checks, never acceptance-critical.
    """
    if s <= 0:
        raise ValueError("G_series requires s > 0")
    if rho.is_trivial:
        raise ValueError("G_series requires a non-trivial character")
    if rho.modulus % 2:
        raise ValueError("G_series requires an even modulus")
    if a == 0:
        raise ValueError("G_series requires a != 0")
    et = eta_table(a, n_max)[1:].astype(np.float64)
    n = np.arange(1, n_max + 1, dtype=np.int64)
    rhov = np.asarray(rho.values, dtype=np.float64)[n % rho.modulus]
    val = float(np.sum(rhov * et / n.astype(np.float64) ** (1.0 + s)))
    running = np.cumsum(rhov * et)
    y = n[999:].astype(np.float64)
    K = float(np.max(np.abs(running[999:]) / (y * np.log(y))))
    tail = (
        2.0
        * K
        * n_max ** -s
        * (math.log(n_max) * (1 + (1 + s) / s) + (1 + s) / s ** 2)
    )
    return TruncatedValue(val, tail, n_max)
