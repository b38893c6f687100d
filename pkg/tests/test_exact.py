from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from synczeta import exact
from synczeta.errors import ConstantTermNonzero, NeedMoreTerms, NotMonic
from synczeta.exact import PowerSeries, RationalFunction

Z = sympy.symbols("z")


def sym_series(expr, order):
    s = sympy.series(expr, Z, 0, order + 1).removeO()
    return [Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in
            (s.coeff(Z, k) for k in range(order + 1))]


@pytest.mark.parametrize("n,expected", [(1, 1), (4, 0), (30, -1), (7, -1), (6, 1), (12, 0)])
def test_mobius_values(n, expected):
    assert exact.mobius(n) == expected


def test_mobius_divisor_sum_is_indicator():
    for n in range(1, 1001):
        assert sum(exact.mobius(d) for d in exact.divisors(n)) == (1 if n == 1 else 0)


def test_mobius_matches_sympy():
    for n in range(1, 300):
        assert exact.mobius(n) == sympy.mobius(n)


def test_series_exp_geometric():
    log = PowerSeries((0,) + tuple(Fraction(2 ** n, n) for n in range(1, 5)))
    assert exact.series_exp(log).coeffs == (1, 2, 4, 8, 16)


def test_series_exp_zero_is_one():
    assert exact.series_exp(PowerSeries.zero(6)).coeffs == (1,) + (0,) * 6


def test_series_exp_circle_counts():
    log = exact.log_series_from_counts([2 ** n - 1 for n in range(1, 4)], 3)
    got = exact.series_exp(log)
    assert list(got.coeffs) == sym_series((1 - Z) / (1 - 2 * Z), 3)
    assert got.coeffs == (1, 1, 2, 4)


def test_series_exp_rejects_constant_term():
    with pytest.raises(ConstantTermNonzero):
        exact.series_exp(PowerSeries((1, 1)))


def test_series_exp_against_sympy():
    s = PowerSeries((0, 1, Fraction(1, 2), -3))
    expected = sym_series(sympy.exp(Z + Z ** 2 / 2 - 3 * Z ** 3), 3)
    assert list(exact.series_exp(s).coeffs) == expected


small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_fracs, min_size=1, max_size=12))
def test_exp_log_round_trip(tail):
    s = PowerSeries((1,) + tuple(tail))
    assert exact.series_exp(exact.series_log(s)) == s


@settings(max_examples=40, deadline=None)
@given(st.lists(small_fracs, min_size=1, max_size=10), small_fracs)
def test_series_pow_is_exp_of_scaled_log(tail, a):
    s = PowerSeries((1,) + tuple(tail))
    assert exact.series_pow(s, a) == exact.series_exp(exact.series_log(s) * a)


def test_series_pow_binomial():
    s = PowerSeries.from_poly((1, 0, -1), 6)
    got = exact.series_pow(s, Fraction(-3, 2))
    assert list(got.coeffs) == sym_series((1 - Z ** 2) ** sympy.Rational(-3, 2), 6)


@pytest.mark.parametrize("values,expected", [
    ([2 ** n - (-1) ** n for n in range(1, 25)], (-2, -1, 1)),
    ([5] * 24, (-1, 1)),
    ([2 ** n for n in range(24)], (-2, 1)),
])
def test_find_recurrence_examples(values, expected):
    assert exact.find_recurrence(values, 8) == expected


def test_find_recurrence_needs_margin():
    with pytest.raises(NeedMoreTerms):
        exact.find_recurrence([1, 2, 4, 8], 4)


def test_find_recurrence_absent_when_too_long():
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71]
    assert exact.find_recurrence(primes, 4) is None


def test_find_recurrence_zero_sequence():
    assert exact.find_recurrence([0] * 12, 2) == (1,)


def test_pade_recovers_circle_form():
    f = RationalFunction.make((1, -1), (1, -2))
    got = exact.pade_reconstruct(f.expand(12), 1, 1)
    assert got == f


def test_pade_rejects_exp():
    s = PowerSeries(tuple(Fraction(1, sympy.factorial(k)) for k in range(13)))
    assert exact.pade_reconstruct(s, 2, 2) is None


def test_pade_rejects_algebraic_series_all_small_degrees():
    # (1 - z^2)^(-3/2): margin 8 allows n + m <= 8 on 16 terms
    s = exact.series_pow(PowerSeries.from_poly((1, 0, -1), 16), Fraction(-3, 2))
    for n in range(7):
        for m in range(7):
            if n + m + exact.VERIFY_MARGIN <= 16:
                assert exact.pade_reconstruct(s, n, m) is None
    s64 = exact.series_pow(PowerSeries.from_poly((1, 0, -1), 64), Fraction(-3, 2))
    for n in range(7):
        for m in range(7):
            assert exact.pade_reconstruct(s64, n, m) is None


def test_pade_precondition():
    with pytest.raises(NeedMoreTerms):
        exact.pade_reconstruct(PowerSeries.zero(10), 2, 2)


int_coef = st.integers(min_value=-4, max_value=4)


@settings(max_examples=50, deadline=None)
@given(st.lists(int_coef, min_size=1, max_size=7), st.lists(int_coef, min_size=0, max_size=6))
def test_pade_round_trip_random_rational(num, den_tail):
    num = exact.poly_trim(num)
    den = exact.poly_trim((1,) + tuple(den_tail))
    if not num:
        return
    f = RationalFunction.make(num, den)
    got = exact.pade_reconstruct(f.expand(40), exact.degree(f.num), exact.degree(f.den))
    assert got is not None and got.same_function(f)


@pytest.mark.parametrize("p,expected", [
    ((-2, 1), ((2,),)),
    ((-1, -1, 1), ((0, 1), (1, 1))),
    ((1, 0, 1), ((0, -1), (1, 0))),
])
def test_companion_examples(p, expected):
    assert exact.companion(p) == expected


def test_companion_rejects_non_monic():
    with pytest.raises(NotMonic):
        exact.companion((1, 2))


@settings(max_examples=50, deadline=None)
@given(st.lists(int_coef, min_size=1, max_size=8))
def test_companion_trace_det_and_charpoly(lower):
    p = tuple(lower) + (1,)
    m = exact.companion(p)
    d = len(lower)
    assert exact.trace(m) == -p[-2]
    assert exact.det(m) == (-1) ** d * p[0]
    assert exact.charpoly(m) == p


def test_det_and_charpoly_against_sympy():
    a = ((2, -1, 3), (0, 4, 1), (5, -2, -3))
    sm = sympy.Matrix(a)
    assert exact.det(a) == sm.det()
    cp = sm.charpoly(Z).all_coeffs()[::-1]
    assert exact.charpoly(a) == tuple(int(c) for c in cp)


def test_rational_function_normalization():
    f = RationalFunction.make((2, -2), (2, -4))
    assert (f.num, f.den) == ((1, -1), (1, -2))
    g = RationalFunction.make((-1, 1), (-1, 2))
    assert g == f
    h = RationalFunction.make(exact.poly_mul((1, -1), (1, 1)), exact.poly_mul((1, -2), (1, 1)))
    assert h == f


def test_squarefree_decomposition():
    p = exact.poly_mul(exact.poly_pow((-1, 1), 3), exact.poly_mul((1, 0, 1), (-2, 1)))
    parts = dict((m, f) for f, m in exact.squarefree_decomposition(p))
    assert parts[3] == (-1, 1)
    assert parts[1] == exact.poly_primitive(exact.poly_mul((1, 0, 1), (-2, 1)))


def test_poly_divmod_identity():
    a, b = (3, 0, -2, 5, 1), (1, 0, 2)
    q, r = exact.poly_divmod(a, b)
    assert exact.poly_add(exact.poly_mul(q, b), r) == a
    assert exact.degree(r) < exact.degree(b)
