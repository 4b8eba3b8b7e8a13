import math
import random
from fractions import Fraction

import pytest

from formgaps.errors import InvariantError
from formgaps.gaps import (
    BRANCH_GENERIC,
    BRANCH_REPRESENTABLE,
    BRANCH_SQ2_SQ2,
    GapWitness,
    _generic_state,
    empirical_D,
    f_vd,
    gap_square2_square2,
    gap_triangle_square2,
    represent_norm_form,
    upsilon,
    x_min,
)
from formgaps.repr_sets import SQUARE2, TRIANGLE, is_member


def test_represent_norm_form_examples():
    n, m = represent_norm_form(1)
    assert n * n - 3 * m * m == 1
    assert represent_norm_form(5) is None
    n, m = represent_norm_form(-2)
    assert n * n - 3 * m * m == -2


def test_represent_norm_form_against_exhaustive_oracle():
    for a in range(-1000, 1001):
        if a == 0:
            continue
        mine = represent_norm_form(a)
        if mine is not None:
            n, m = mine
            assert n * n - 3 * m * m == a
        M = 10 * math.isqrt(abs(a)) + 10
        oracle = any(
            (t := a + 3 * m * m) >= 0 and math.isqrt(t) ** 2 == t for m in range(M + 1)
        )
        assert (mine is not None) == oracle, a


def test_upsilon():
    assert upsilon(1) == Fraction(1, 2)
    assert upsilon(2) == Fraction(5, 8)
    assert upsilon(-2) == Fraction(1, 2)
    with pytest.raises(ValueError):
        upsilon(0)


def test_gap_sq2_worked_examples():
    w = gap_square2_square2(3, 100)
    assert w.n == 101 and w.params["s"] == 10 and w.branch == BRANCH_SQ2_SQ2
    w = gap_square2_square2(1, 1)
    assert w.n == 4 and w.params["s"] == 2
    w = gap_square2_square2(-3, 100)
    assert w.n == 104


def test_gap_sq2_even_shift_scales():
    w = gap_square2_square2(12, 500)
    assert w.params["t"] == 2 and w.params["odd_shift"] == 3
    assert w.n % 4 == 0 and w.n > 500


def test_f_vd():
    assert f_vd(1, 0, 2) == 0
    assert f_vd(3, 0, 2) == 16
    with pytest.raises(ValueError):
        f_vd(2, 0, 2)  # 4 - 0 - 2 is even
    # always lands in the c^2 + 3 d^2 set
    from formgaps.repr_sets import TRIANGLE_STAR

    for v, d in ((1, 2), (3, 4), (5, 0)):
        assert is_member(TRIANGLE_STAR, f_vd(v, d, 2))


def test_gap_triangle_worked_examples():
    w = gap_triangle_square2(1, 10 ** 6)
    assert w.branch == BRANCH_REPRESENTABLE
    assert w.offset <= 2 * math.isqrt(10 ** 6) + 4
    st = _generic_state(2, 10 ** 6)
    assert st["Q"] == 26 and st["Qstar"] == 28
    w = gap_triangle_square2(2, 10 ** 6)
    assert w.branch == BRANCH_GENERIC
    assert w.params["l1"] == 1 and w.params["l2"] == 0 and w.params["Qstar"] == 28


def test_generic_q_minimality_and_vstar_sandwich():
    for a in (2, 5, 7, -4):
        for x in (10 ** 4, 10 ** 6, 10 ** 9):
            st = _generic_state(a, x)
            q = st["Q"]
            f4 = lambda d: (3 * d * d + a - 1) ** 2 + 12 * d * d
            assert f4(q) > 4 * x
            if q >= 2:
                assert f4(q - 2) <= 4 * x
            w = gap_triangle_square2(a, x)
            if w.branch == BRANCH_GENERIC and "vstar" in w.params:
                v, ws = w.params["vstar"], w.params["wstar"]
                assert v * v < 2 * ws <= (v + 2) * (v + 2)


def test_h_decreasing_on_window():
    for a in (2, 5, -4):
        qs = _generic_state(a, 10 ** 6)["Qstar"]
        f4 = [(y * y - 3 * qs * qs - a + 1) ** 2 + 12 * qs * qs for y in range(qs)]
        assert all(f4[i] > f4[i + 1] for i in range(len(f4) - 1))


def test_gap_triangle_small_x_scan_fallback():
    for a in (2, 5, -46):
        xm = x_min(a)
        assert xm >= 1
        for x in (1, 2, max(1, xm - 1)):
            w = gap_triangle_square2(a, x)
            assert w.n > x
            assert is_member(TRIANGLE, w.n) and is_member(SQUARE2, w.n + a)


def test_gap_batch_reverification():
    rng = random.Random(99)
    for _ in range(300):
        a = rng.choice([v for v in range(-50, 51) if v])
        x = max(int(10 ** rng.uniform(0, 10)), 1)
        w1 = gap_square2_square2(a, x)
        assert w1.offset > 0
        assert is_member(SQUARE2, w1.n) and is_member(SQUARE2, w1.n + a)
        w2 = gap_triangle_square2(a, x)
        assert w2.offset > 0
        assert is_member(TRIANGLE, w2.n) and is_member(SQUARE2, w2.n + a)


def test_offsets_track_the_exponent():
    xs = [10 ** k for k in range(4, 11)]
    d1 = empirical_D(1, xs)
    d2 = empirical_D(2, xs)
    assert 0 < d1 < 10
    assert 0 < d2 < 60
    single = empirical_D(2, [10 ** 6])
    w = gap_triangle_square2(2, 10 ** 6)
    assert single == pytest.approx(w.offset / (10 ** 6) ** 0.625)
    # reruns are deterministic
    assert empirical_D(1, xs) == d1


def test_gap_witness_invariant():
    with pytest.raises(InvariantError):
        GapWitness(a=1, x=10, n=10, offset=0, branch=BRANCH_SQ2_SQ2, params={})
    with pytest.raises(InvariantError):
        GapWitness(a=1, x=10, n=12, offset=1, branch=BRANCH_SQ2_SQ2, params={})


def test_input_validation():
    with pytest.raises(ValueError):
        gap_square2_square2(0, 10)
    with pytest.raises(ValueError):
        gap_triangle_square2(1, 0)
    with pytest.raises(ValueError):
        empirical_D(1, [])
