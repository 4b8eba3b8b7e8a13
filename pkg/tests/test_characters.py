import math

import numpy as np
import pytest

from formgaps.characters import (
    F,
    F_sieve,
    F_window,
    chi3,
    chi4,
    chi6,
    is_fundamental_discriminant,
    jacobi_symbol,
    kronecker_character,
    kronecker_symbol,
    make_character,
    product_character,
    sqrt_trick_F,
    table_character,
    trivial_character,
)
from formgaps.errors import BudgetError

REALS = (chi3(), chi4(), chi6())


def test_chi4_table_and_flags():
    c = chi4()
    assert [c(r) for r in (1, 2, 3, 4)] == [1, 0, -1, 0]
    assert c.is_primitive and c.is_real and not c.is_trivial


def test_chi6_table_and_flags():
    c = chi6()
    assert c(1) == 1 and c(5) == -1
    assert all(c(r) == 0 for r in (0, 2, 3, 4))
    assert not c.is_primitive  # induced from the character mod 3


def test_kronecker_minus3_agrees_with_chi3():
    k = kronecker_character(-3)
    assert all(k(n) == chi3()(n) for n in range(101))
    assert k.is_primitive


def test_fundamental_discriminants():
    assert all(is_fundamental_discriminant(D) for D in (-3, -4, -8, 5, 8, 12, -20))
    assert not any(is_fundamental_discriminant(D) for D in (0, 1, 2, 3, 4, -2, 9, -9, 25))
    with pytest.raises(ValueError):
        kronecker_character(9)


def test_jacobi_and_kronecker_basics():
    assert jacobi_symbol(2, 15) == 1
    assert jacobi_symbol(7, 15) == -1
    assert kronecker_symbol(-3, 2) == -1
    assert kronecker_symbol(5, 2) == -1
    assert kronecker_symbol(-4, 0) == 0
    assert kronecker_symbol(1, 0) == 1


def test_trivial_characters():
    t1 = trivial_character(1)
    assert t1(0) == t1(17) == 1 and t1.is_trivial
    t6 = trivial_character(6)
    assert [t6(r) for r in range(6)] == [0, 1, 0, 0, 0, 1]
    assert t6.is_trivial and not t6.is_primitive


def test_table_character_validation():
    ok = table_character(4, (0, 1, 0, -1))
    assert ok.values == chi4().values
    with pytest.raises(ValueError):
        table_character(4, (0, 1, 0, 2))  # not multiplicative: 3*3 = 1 but 2*2 != 1
    with pytest.raises(ValueError):
        table_character(4, (0, 1, 1, -1))  # nonzero value off the units
    with pytest.raises(ValueError):
        table_character(3, (0, -1, 1))  # psi(1) must be 1


def test_make_character_dispatch():
    assert make_character("chi6") is chi6()
    assert make_character("trivial:4") is trivial_character(4)
    assert make_character("kronecker:-3") is kronecker_character(-3)
    with pytest.raises(ValueError):
        make_character("nope")


def test_product_character_of_real_pair_is_principal():
    chi5 = kronecker_character(5)
    sq = product_character(chi5, chi5)
    assert sq.is_trivial and sq.modulus == 5


def test_F_examples():
    assert F(chi4(), 5) == 2
    assert F(chi6(), 1) == 1
    assert F(chi6(), 5) == 0
    assert F(chi3(), 7) == 2


def test_F_multiplicative_on_coprime_pairs():
    for psi in REALS:
        for m in range(1, 32):
            for n in range(1, 1000 // max(m, 1)):
                if math.gcd(m, n) == 1:
                    assert F(psi, m * n) == F(psi, m) * F(psi, n)


def test_F_nonnegative_for_chi3_chi4():
    for psi in (chi3(), chi4()):
        sv = F_sieve(psi, 100_000)
        assert int(sv.min()) >= 0


def test_vanishing_when_psi_is_minus_one():
    for psi in REALS:
        for n in range(1, 20_001):
            if psi(n) == -1:
                assert F(psi, n) == 0


def test_sqrt_trick_examples():
    assert sqrt_trick_F(chi6(), 7) == 2
    assert sqrt_trick_F(chi6(), 25) == 1
    assert sqrt_trick_F(chi4(), 25) == 3
    with pytest.raises(ValueError):
        sqrt_trick_F(chi4(), 3)  # chi4(3) = -1


def test_sqrt_trick_agrees_with_F():
    for psi in REALS:
        for n in range(1, 20_001):
            if psi(n) == 1:
                assert sqrt_trick_F(psi, n) == F(psi, n)


def test_F_sieve_row():
    # divisor-by-divisor: F_chi4 over n = 1..10 (cross-checked by r2(n) = 4 F)
    sv = F_sieve(chi4(), 10)
    assert list(sv[1:]) == [1, 1, 0, 1, 2, 0, 0, 1, 1, 2]
    assert F_sieve(chi3(), 7)[7] == 2
    assert list(F_sieve(trivial_character(1), 5)[1:]) == [1, 2, 2, 3, 2]


def test_F_sieve_matches_per_n():
    for psi in REALS:
        sv = F_sieve(psi, 10_000)
        for n in range(1, 10_001):
            assert int(sv[n]) == F(psi, n)


def test_F_window_deep_offsets():
    for lo, hi in ((1, 400), (9_973, 11_000), (249_489, 250_011)):
        w = F_window(chi6(), lo, hi)
        for n in range(lo, hi + 1):
            assert int(w[n - lo]) == F(chi6(), n)


def test_F_sieve_budget_guard():
    with pytest.raises(BudgetError):
        F_sieve(chi4(), 10 ** 9 + 1, budget=10 ** 9)


def test_F_sieve_threaded_identical():
    a = F_sieve(chi6(), 30_000, threads=1)
    b = F_sieve(chi6(), 30_000, threads=4)
    assert np.array_equal(a, b)
