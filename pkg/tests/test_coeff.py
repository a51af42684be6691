from fractions import Fraction

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from kinv.coeff import (
    HSeries,
    LaurentPoly,
    NotInvertibleError,
    TruncationError,
    q_minus_qinv,
    qnum,
    solve_rational,
)

small = st.integers(min_value=-5, max_value=5)
laurent = st.dictionaries(st.integers(-4, 4), small, max_size=5).map(lambda d: LaurentPoly.from_dict(d, "t"))
ORDER = 5
series = st.lists(laurent, min_size=ORDER + 1, max_size=ORDER + 1).map(lambda cs: HSeries(cs, ORDER, "t"))
unit_series = st.tuples(st.integers(1, 4), series).map(
    lambda p: HSeries([LaurentPoly.const(p[0], "t")] + p[1].c[1:], ORDER, "t")
)


@given(laurent, laurent, laurent)
def test_laurent_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == LaurentPoly.from_dict({}, "t")


@given(laurent, st.integers(-3, 3))
def test_shift_is_multiplication_by_monomial(p, k):
    assert p.shift(k) == p * LaurentPoly.monomial(k, 1, "t")


@given(laurent, laurent)
def test_divexact_inverts_multiplication(p, q):
    if q.is_zero():
        return
    assert (p * q).divexact(q) == p


@given(laurent)
def test_reflect_twice_and_symmetry(p):
    assert p.reflect().reflect() == p
    assert (p + p.reflect()).is_symmetric()


def test_non_monomial_has_no_laurent_inverse():
    with pytest.raises(NotInvertibleError):
        LaurentPoly.from_dict({0: 1, 1: 1}, "t").inverse()
    assert LaurentPoly.monomial(3, 2, "t").inverse() == LaurentPoly.monomial(-3, Fraction(1, 2), "t")


@given(laurent, laurent)
def test_derivative_leibniz(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(series, series, series)
@settings(max_examples=40)
def test_series_ring_axioms(a, b, c):
    assert ((a + b) * c).equals(a * c + b * c)
    assert ((a * b) * c).equals(a * (b * c))


@given(unit_series)
@settings(max_examples=40)
def test_series_inverse(a):
    assert (a * a.inv()).equals(HSeries.const(1, ORDER, "t"))


@given(series)
@settings(max_examples=30)
def test_exp_log_roundtrip(a):
    a = a.shift(1).truncate(ORDER)  # zero constant term
    assert a.exp().log().equals(a)


def test_exp_linear_is_multiplicative():
    x = HSeries.exp_linear(2, 6, "t")
    y = HSeries.exp_linear(-3, 6, "t")
    assert (x * y).equals(HSeries.exp_linear(-1, 6, "t"))


def test_reading_past_order_raises():
    s = HSeries.const(1, 2, "t")
    with pytest.raises(TruncationError):
        s[3]
    with pytest.raises(TruncationError):
        HSeries.const(1, 2, "t").equals(HSeries.const(1, 4, "t"), order=4)


def test_qnum_small_values():
    # [2] = q + 1/q, [3] = q^2 + 1 + q^-2 at q = e^h
    n = 6
    q = lambda k: HSeries.exp_linear(k, n, "t")
    assert qnum(2, n, "t").equals(q(1) + q(-1))
    assert qnum(3, n, "t").equals(q(2) + q(0) + q(-2))
    assert q_minus_qinv(n, "t").equals(q(1) - q(-1))


@given(st.integers(-6, 6))
def test_qnum_symbolic_matches_numeric(k):
    lam = LaurentPoly.monomial(1, 1, "t")
    assert qnum(lam, 5, "t").subs_var(k).equals(qnum(k, 5, "t"))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=6), st.lists(small, min_size=3, max_size=3))
def test_solve_rational_consistent_systems(rows, x0):
    rhs = [sum(Fraction(a) * b for a, b in zip(r, x0)) for r in rows]
    x, rank, ok = solve_rational(rows, rhs)
    assert ok
    assert all(sum(Fraction(a) * b for a, b in zip(r, x)) == v for r, v in zip(rows, rhs))
    assert rank <= 3


def test_solve_rational_detects_inconsistency():
    _, rank, ok = solve_rational([[1, 1], [2, 2]], [1, 3])
    assert rank == 1 and not ok


def test_exact_division_of_sinh_ratio():
    lam = LaurentPoly.monomial(1, 1, "lam")
    num = HSeries.exp_linear(lam, 6, "lam") - HSeries.exp_linear(-lam, 6, "lam")
    den = HSeries.exp_linear(1, 6, "lam") - HSeries.exp_linear(-1, 6, "lam")
    q = num.div_exact(den)
    assert q.order == 5
    assert q[0] == lam


def test_substitute_series_for_variable():
    # eps*h with eps -> 2h is 2h^2
    eps_h = HSeries([0, LaurentPoly.monomial(1, 1, "eps")], 4, "eps")
    two_h = HSeries.h(4, "h", 2)
    assert eps_h.subs_var(two_h).equals(HSeries([0, 0, 2], 4, "h"))


def test_geometric_inverse():
    s = HSeries([1, 1], 6, "t").inv()
    assert [s.coeff_of(i) for i in range(7)] == [(-1) ** i for i in range(7)]
