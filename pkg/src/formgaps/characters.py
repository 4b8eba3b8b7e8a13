"""Dirichlet characters as dense residue tables, and the divisor transform

    F_psi(n) = sum_{d | n} psi(d).

Moduli used here are tiny (3, 4, 5, 6, 12, |D|), so a character is stored as
a value table indexed by residue, giving O(1) lookups inside sieve loops.
psi is completely multiplicative and periodic; it is extended to the reals by
psi(w) = 0 for non-integer w, which is what the square-root shortcut for F
relies on.  F itself is multiplicative, with per-prime geometric sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import divisors, factorize
from .errors import BudgetError
from .util import DEFAULT_CHUNK, chunk_ranges, map_ordered

F_SIEVE_MAX = 150_000_000  # materialized-array guard; windows go further

_FULL_VALIDATE_MAX = 600  # moduli above this get spot-checked, not O(k^2)


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1."""
    if n < 1 or n % 2 == 0:
        raise ValueError("jacobi_symbol requires odd n >= 1")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 0, with the usual rules at 2 and 0."""
    if n < 0:
        raise ValueError("kronecker_symbol here only takes n >= 0")
    if n == 0:
        return 1 if a in (1, -1) else 0
    e = (n & -n).bit_length() - 1
    odd = n >> e
    if e and a % 2 == 0:
        return 0
    s = 1
    if e % 2 == 1 and a % 8 in (3, 5):
        s = -1
    return s * jacobi_symbol(a, odd)


def is_fundamental_discriminant(D: int) -> bool:
    """Discriminant of a quadratic field: squarefree D = 1 mod 4 (D != 1),
    or D = 4m with m squarefree and m = 2 or 3 mod 4."""
    if D in (0, 1):
        return False

    def squarefree(m: int) -> bool:
        return all(e == 1 for _, e in factorize(abs(m)).factors) if m not in (1, -1) else True

    if D % 4 == 1:
        return squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree(m)
    return False


@dataclass(frozen=True)
class DirichletCharacter:
    """Completely multiplicative periodic function mod `modulus`, as a table.

    values[r] is psi(r); it is 0 exactly when gcd(r, modulus) > 1.  The
    primitivity flag is computed by the induced-modulus test at construction.
    """

    name: str
    modulus: int
    values: tuple
    is_trivial: bool
    is_primitive: bool
    is_real: bool

    def __call__(self, n: int):
        return self.values[n % self.modulus]

    def table(self) -> np.ndarray:
        dtype = np.int64 if self.is_real else complex
        return np.array(self.values, dtype=dtype)


def _check_table(k: int, values: tuple) -> None:
    if len(values) != k:
        raise ValueError("value table length must equal the modulus")
    for r in range(k):
        on_unit = math.gcd(r, k) == 1
        if (values[r] != 0) != on_unit:
            raise ValueError("values must vanish exactly off the units")
    if values[1 % k] != 1:
        raise ValueError("psi(1) must be 1")
    if k <= _FULL_VALIDATE_MAX:
        pairs = ((r, s) for r in range(k) for s in range(r, k))
    else:
        step = max(1, k // 48)
        pairs = ((r, s) for r in range(1, k, step) for s in range(1, k, step))
    for r, s in pairs:
        if values[(r * s) % k] != values[r] * values[s]:
            raise ValueError("table is not completely multiplicative")


def _is_primitive(k: int, values: tuple) -> bool:
    if k == 1:
        return True
    for d in divisors(factorize(k)):
        if d == k:
            continue
        induced = all(
            values[n % k] == 1
            for n in range(1, k + 1)
            if math.gcd(n, k) == 1 and n % d == 1 % d
        )
        if induced:
            return False
    return True


def _build(name: str, k: int, values: tuple, validate: bool = True) -> DirichletCharacter:
    if k < 1:
        raise ValueError("modulus must be >= 1")
    values = tuple(values)
    if validate:
        _check_table(k, values)
    trivial = all(values[r] == 1 for r in range(k) if math.gcd(r, k) == 1)
    real = all(isinstance(v, int) or getattr(v, "imag", 0) == 0 for v in values)
    if real:
        values = tuple(int(v.real) if not isinstance(v, int) else v for v in values)
    return DirichletCharacter(
        name=name,
        modulus=k,
        values=values,
        is_trivial=trivial,
        is_primitive=_is_primitive(k, values),
        is_real=real,
    )


@lru_cache(maxsize=None)
def chi4() -> DirichletCharacter:
    """The primitive character mod 4: (1, 0, -1, 0) on residues (1, 2, 3, 0)."""
    return _build("chi4", 4, (0, 1, 0, -1))


@lru_cache(maxsize=None)
def chi3() -> DirichletCharacter:
    """The non-trivial character mod 3."""
    return _build("chi3", 3, (0, 1, -1))


@lru_cache(maxsize=None)
def chi6() -> DirichletCharacter:
    """The non-trivial real character mod 6: +1 at 1, -1 at 5."""
    return _build("chi6", 6, (0, 1, 0, 0, 0, -1))


@lru_cache(maxsize=None)
def trivial_character(k: int) -> DirichletCharacter:
    """The principal character mod k (identically 1 when k = 1)."""
    vals = tuple(1 if math.gcd(r, k) == 1 else 0 for r in range(k))
    return _build(f"trivial({k})", k, vals)


@lru_cache(maxsize=None)
def kronecker_character(D: int) -> DirichletCharacter:
    """The quadratic character r -> (D/r) for a fundamental discriminant D."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    k = abs(D)
    vals = tuple(kronecker_symbol(D, r) for r in range(k))
    return _build(f"kronecker({D})", k, vals)


def table_character(k: int, values, name: str | None = None) -> DirichletCharacter:
    """A character from an explicit residue-indexed value table (validated)."""
    return _build(name or f"table({k})", k, tuple(values))


def product_character(psi: DirichletCharacter, rho: DirichletCharacter) -> DirichletCharacter:
    """Pointwise product of two characters with the same modulus."""
    if psi.modulus != rho.modulus:
        raise ValueError("product_character requires equal moduli")
    vals = tuple(p * r for p, r in zip(psi.values, rho.values))
    return _build(f"{psi.name}*{rho.name}", psi.modulus, vals, validate=False)


def conjugate_character(psi: DirichletCharacter) -> DirichletCharacter:
    if psi.is_real:
        return psi
    vals = tuple(v.conjugate() for v in psi.values)
    return _build(f"conj({psi.name})", psi.modulus, vals, validate=False)


def make_character(spec: str) -> DirichletCharacter:
    """Parse a character spec string: chi3 | chi4 | chi6 | trivial:K | kronecker:D."""
    spec = spec.strip()
    if spec == "chi3":
        return chi3()
    if spec == "chi4":
        return chi4()
    if spec == "chi6":
        return chi6()
    if spec.startswith("trivial:"):
        return trivial_character(int(spec.split(":", 1)[1]))
    if spec.startswith("kronecker:"):
        return kronecker_character(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown character spec: {spec!r}")


def F(psi: DirichletCharacter, n: int):
    """F_psi(n) = sum of psi over the divisors of n, evaluated multiplicatively."""
    if n < 1:
        raise ValueError("F requires n >= 1")
    total = 1
    for p, e in factorize(n).factors:
        v = psi(p)
        if v == 0:
            continue
        if v == 1:
            s = e + 1
        elif v == -1:
            s = 1 - (e % 2)
        else:
            s = sum(v ** i for i in range(e + 1))
        if s == 0:
            return 0
        total = total * s
    return total


def sqrt_trick_F(psi: DirichletCharacter, n: int):
    """F_psi(n) from divisors below sqrt(n) only; valid when psi(n) = 1.

    Uses the pairing d <-> n/d, under which psi(n/d) = psi(d) when psi(n) = 1:
    F = 2 * sum over divisors d with d < sqrt(n) of psi(d), plus psi(sqrt(n)).
    """
    if not psi.is_real:
        raise ValueError("sqrt_trick_F is for real characters")
    if n < 1 or psi(n) != 1:
        raise ValueError("sqrt_trick_F requires psi(n) = 1")
    total = 0
    for d in divisors(factorize(n)):
        if d * d >= n:
            break
        total += psi(d)
    r = math.isqrt(n)
    return 2 * total + (psi(r) if r * r == n else 0)


def F_window(psi: DirichletCharacter, lo: int, hi: int) -> np.ndarray:
    """F_psi on the closed window [lo, hi] (lo >= 1), as an array.

    Divisor pairs are split at B = isqrt(hi): divisors d <= B by strided
    constant adds, divisors d > B through their cofactor e = n/d <= hi/(B+1),
    where the added value psi(n/e) varies and is gathered from the table.
    Each divisor is counted exactly once; O(W log hi + sqrt(hi)) additions.
    """
    if lo < 1 or hi < lo:
        raise ValueError("window must satisfy 1 <= lo <= hi")
    k = psi.modulus
    width = hi - lo + 1
    table = psi.table()
    out = np.zeros(width, dtype=table.dtype)
    B = math.isqrt(hi)
    for d in range(1, min(B, hi) + 1):
        v = table[d % k]
        if v == 0:
            continue
        out[(-lo) % d :: d] += v
    emax = hi // (B + 1)
    for e in range(1, emax + 1):
        mlo = max(B + 1, -(-lo // e))
        mhi = hi // e
        if mlo > mhi:
            continue
        m = np.arange(mlo, mhi + 1, dtype=np.int64)
        out[e * m - lo] += table[m % k]
    return out


def F_sieve(psi: DirichletCharacter, x: int, budget: int = F_SIEVE_MAX, threads: int = 1) -> np.ndarray:
    """Array a with a[n] = F_psi(n) for n = 1..x (a[0] is a zero pad)."""
    if x < 1:
        raise ValueError("F_sieve requires x >= 1")
    if x > budget:
        raise BudgetError(f"F_sieve of length {x} exceeds the budget of {budget}")
    parts = map_ordered(
        lambda c: F_window(psi, c[0], c[1]), chunk_ranges(1, x, DEFAULT_CHUNK), threads
    )
    pad = np.zeros(1, dtype=parts[0].dtype)
    return np.concatenate([pad] + parts)
