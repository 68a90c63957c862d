from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from trihom.arith import (INDETERMINATE, INFINITY, DivisionByZeroSeries, EpsSeries, PrecisionExhausted,
                          ProjectiveValue, format_limit, limit_at_zero, series_arith)

E = lambda *cs, lead=0, trunc=None: EpsSeries(cs, lead, trunc)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def test_difference_of_squares():
    assert series_arith(E(1, 1), E(1, -1), "mul") == E(1, 0, -1)


def test_monomial_inverse():
    s = series_arith(E(1), E(1, lead=1), "div")
    assert s.lead == -1 and s.coeffs == (1,)


def test_division_against_sympy():
    eps = sympy.Symbol("eps")
    want = sympy.series((1 + eps) / (1 - eps), eps, 0, 4).removeO()
    got = E(1, 1, trunc=3) / E(1, -1, trunc=3)
    assert [got.coeff(k) for k in range(4)] == [F(int(want.coeff(eps, k))) for k in range(4)]
    assert [got.coeff(k) for k in range(4)] == [1, 2, 2, 2]


def test_coefficient_beyond_order_raises():
    with pytest.raises(PrecisionExhausted):
        E(1, 2, trunc=1).coeff(2)


def test_division_by_exact_zero():
    with pytest.raises(DivisionByZeroSeries):
        E(1) / EpsSeries.zero()


@pytest.mark.parametrize("num, den, want", [
    (E(0, 1), E(1), F(0)),
    (E(1), E(0, 1), INFINITY),
    (E(0, 1, 1), E(0, 1), F(1)),
    (E(3, 1), E(6), F(1, 2)),
])
def test_limit_at_zero(num, den, want):
    assert limit_at_zero(ProjectiveValue(num, den)) == want


def test_limit_undecidable():
    with pytest.raises(PrecisionExhausted):
        limit_at_zero(ProjectiveValue(EpsSeries.zero(3), EpsSeries.zero(3)))
    assert limit_at_zero(ProjectiveValue(E(1, lead=5, trunc=6), EpsSeries.zero(2))) is INDETERMINATE


def test_normalized_removes_common_power():
    v = ProjectiveValue(E(2, 1, lead=2, trunc=8), E(4, lead=2, trunc=8)).normalized()
    assert v.num.lead == 0 and limit_at_zero(v) == F(1, 2)


def test_format_limit():
    assert format_limit(F(-3, 4)) == "-3/4" and format_limit(INFINITY) == "inf"


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=6), st.lists(rationals, min_size=1, max_size=6))
def test_quotient_times_divisor(a, b):
    if b[0] == 0:
        b[0] = F(1)
    sa, sb = EpsSeries(a, 0, 10), EpsSeries(b, 0, 10)
    assert (sa / sb) * sb == sa


@settings(max_examples=60, deadline=None)
@given(st.lists(rationals, max_size=5), st.lists(rationals, max_size=5), st.lists(rationals, max_size=5))
def test_ring_laws(a, b, c):
    x, y, z = EpsSeries(a), EpsSeries(b), EpsSeries(c)
    assert x * (y + z) == x * y + x * z
    assert (x - y) + y == x
