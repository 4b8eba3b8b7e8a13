import math
from fractions import Fraction

import pytest

from formgaps.analytic_constants import (
    G_series,
    L_value,
    P_part,
    PiMultiple,
    TruncatedValue,
    beta,
    beta_direct_series,
    eta_star,
    euler_factor_Gp,
    main_term,
    muller_C,
    muller_main,
)
from formgaps.characters import chi3, chi4, chi6, kronecker_character, trivial_character
from formgaps.errors import BudgetError
from formgaps.local_densities import eta_brute


def test_L_value_closed_forms():
    L4 = L_value(chi4(), 1.0, 1e-9)
    assert abs(L4.value - math.pi / 4) <= L4.error_bound + 1e-12
    L3 = L_value(chi3(), 1.0, 1e-9)
    assert abs(L3.value - math.pi / (3 * math.sqrt(3))) <= L3.error_bound + 1e-12
    # L(2, chi4) is Catalan's constant
    L42 = L_value(chi4(), 2.0, 1e-10)
    assert abs(L42.value - 0.915965594177219) <= L42.error_bound + 1e-12


def test_L_value_principal():
    # literal series with zeros retained: zeta(s) times the removed factors
    L = L_value(trivial_character(5), 2.0, 1e-10)
    assert abs(L.value - (math.pi ** 2 / 6) * (1 - 1 / 25)) <= L.error_bound + 1e-12
    with pytest.raises(ValueError):
        L_value(trivial_character(5), 1.0)


def test_L_value_refinement():
    a = L_value(chi6(), 1.0, 1e-4)
    b = L_value(chi6(), 1.0, 1e-10)
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound


def test_euler_factor_examples():
    g = euler_factor_Gp(chi6(), 1, 5, 1.0)
    assert g.value == pytest.approx(1 - 2 / 15, abs=1e-15)
    assert g.error_bound == 0
    assert euler_factor_Gp(chi6(), 3, 3, 1.0).value == 1.0
    assert euler_factor_Gp(chi6(), 5, 7, 2.0).value > 0


def test_euler_factor_lower_bound():
    for p in (5, 7, 11, 13, 101):
        for a in (1, 2, 12):
            g = euler_factor_Gp(chi6(), a, p, 1.0)
            assert abs(g.value) >= 1 - 2 / (p - 1)


def test_euler_factor_positive_for_real_characters():
    for p in (3, 5, 7, 97, 997):
        for s in (1.0, 1.5, 2.0):
            assert euler_factor_Gp(chi6(), 1, p, s).value > 0


def test_beta_positive_and_consistent():
    b6 = beta(chi6(), 1, 1e-6)
    assert b6.value - b6.error_bound > 0
    # beta(chi6, 1) agrees with 3/pi to within its bound (observed closed form)
    assert abs(b6.value - 3 / math.pi) < 1e-6
    coarse = beta(chi6(), 1, 1e-3)
    assert abs(coarse.value - b6.value) <= 2e-3


def test_beta_against_direct_series():
    for a in (1, 2, 5, -7):
        e = beta(chi6(), a, 1e-6)
        d = beta_direct_series(chi6(), a, 50_000)
        assert abs(e.value - d.value) <= e.error_bound + d.error_bound, a


def test_beta_validation():
    with pytest.raises(ValueError):
        beta(chi6(), 0)
    with pytest.raises(ValueError):
        beta(chi3(), 1)  # odd modulus
    with pytest.raises(ValueError):
        beta(trivial_character(6), 1)  # trivial
    with pytest.raises(BudgetError):
        beta(chi6(), 1, 1e-12)


def test_eta_star_values():
    assert [eta_brute(j, 6) for j in range(6)] == [2, 8, 8, 2, 8, 8]
    assert eta_star(chi6(), 1).coeff == Fraction(1, 9)
    assert eta_star(chi6(), 0).coeff == Fraction(1, 9)
    assert eta_star(chi6(), 3).coeff == Fraction(1, 9)
    for a in range(6):
        es = eta_star(chi6(), a)
        assert es.coeff > 0
        assert es.coeff.denominator <= 2 * 36
        assert es.value == pytest.approx(float(es.coeff) * math.pi)
    # periodicity in the shift
    assert eta_star(chi6(), 1).coeff == eta_star(chi6(), 7).coeff


def test_main_term():
    m = main_term(chi6(), 1, 1e-6)
    b = beta(chi6(), 1, 1e-7)
    assert m.value == pytest.approx(b.value * math.pi / 9, rel=1e-6)
    assert m.value > 0 and m.error_bound < 1e-6


def test_P_part():
    assert P_part(12, 6) == 12
    assert P_part(5, 6) == 1
    assert P_part(18, 4) == 2
    with pytest.raises(ValueError):
        P_part(0, 6)
    with pytest.raises(ValueError):
        P_part(4, 1)


def test_muller_C_closed_form():
    chi5 = kronecker_character(5)
    C = muller_C(chi5, chi5, 1, 1e-9)
    L1 = 2 * math.log((1 + math.sqrt(5)) / 2) / math.sqrt(5)
    L2 = (math.pi ** 2 / 6) * (1 - 1 / 25)
    assert C.value == pytest.approx(L1 * L1 / L2, abs=1e-7)


def test_muller_main_single_bracket_term():
    chi5 = kronecker_character(5)
    # P(1, 5) = 1, so the bracket is k^-1 sum_j psi(j) rho(1 + j)
    M = muller_main(chi5, chi5, 1, 1e-9)
    C = muller_C(chi5, chi5, 1, 1e-9)
    bracket = sum(chi5(j) * chi5(1 + j) for j in range(1, 6)) / 5
    assert M.value == pytest.approx(C.value * (1 + bracket), abs=1e-8)
    assert isinstance(M.value, float)  # real-valued for real characters


def test_muller_validation():
    chi5 = kronecker_character(5)
    with pytest.raises(ValueError):
        muller_main(chi5, chi5, 0)
    with pytest.raises(ValueError):
        muller_main(chi5, chi5, -2)
    with pytest.raises(ValueError):
        muller_C(chi6(), chi6(), 1)  # chi6 is imprimitive


def test_G_series_consistency():
    g2 = G_series(chi6(), 1, 2.0, 20_000)
    b = beta(chi6(), 1, 1e-6)
    g1 = G_series(chi6(), 1, 1.0, 80_000)
    assert abs(g1.value - b.value) <= g1.error_bound + b.error_bound
    assert g2.error_bound < g1.error_bound
    # partial sums stay bounded in the critical strip (diagnostic)
    vals = [G_series(chi6(), 1, 0.6, n).value for n in (1000, 10_000, 100_000)]
    assert all(abs(v) < 10 for v in vals)
    with pytest.raises(ValueError):
        G_series(chi6(), 1, 0.0, 100)
    with pytest.raises(ValueError):
        G_series(trivial_character(6), 1, 1.0, 100)


def test_truncated_value_guard():
    with pytest.raises(ValueError):
        TruncatedValue(1.0, -1.0, 3)
    with pytest.raises(ValueError):
        TruncatedValue(1.0, math.inf, 3)


def test_pi_multiple():
    pm = PiMultiple(Fraction(1, 2))
    assert pm.value == pytest.approx(math.pi / 2)
