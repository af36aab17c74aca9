"""Adams-character classes and the Newton recursion for symmetric powers."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bunmotives.adams import (
    AdamsClass,
    count_class,
    newton_sym_values,
    odd_poincare,
    poincare_class,
    sym_n,
    sym_star,
    tate_count,
    tate_poincare,
    unit_count,
)
from bunmotives.errors import InsufficientDepth, NegativeTwistInPoincare
from bunmotives.series import TruncSeries

rats = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def line_sum(scalars, depth):
    """Class whose character is psi^r = sum of c^r: a direct sum of lines."""
    psi = tuple(sum(Fraction(c) ** r for c in scalars) for r in range(1, depth + 1))
    return AdamsClass(psi, Fraction(1))


def complete_homogeneous(scalars, n):
    """Independent oracle: h_n = sum of all degree-n monomials in the c_i."""
    total = Fraction(0)
    for combo in itertools.combinations_with_replacement(scalars, n):
        prod = Fraction(1)
        for c in combo:
            prod *= c
        total += prod
    return total


def elementary_symmetric(scalars, n):
    total = Fraction(0)
    for combo in itertools.combinations(scalars, n):
        prod = Fraction(1)
        for c in combo:
            prod *= c
        total += prod
    return total


# -- Newton recursion against the line-sum oracle


@given(st.lists(rats, min_size=1, max_size=4), st.integers(0, 5))
def test_sym_of_line_sum_is_complete_homogeneous(scalars, n):
    cls = line_sum(scalars, depth=max(n, 1))
    assert cls.sym(n) == complete_homogeneous(scalars, n)


def test_sym_of_single_line_is_power():
    cls = line_sum([Fraction(3)], depth=5)
    for n in range(6):
        assert cls.sym(n) == Fraction(3) ** n


def test_newton_requires_depth():
    with pytest.raises(InsufficientDepth):
        newton_sym_values([Fraction(2)], Fraction(1), 2)
    with pytest.raises(InsufficientDepth):
        line_sum([2, 3], depth=2).sym(3)


def test_newton_rejects_negative_order():
    with pytest.raises(ValueError):
        newton_sym_values([], Fraction(1), -1)


def test_sigma_zero_and_one():
    cls = count_class([7, 11, 13])
    assert cls.sym(0) == 1
    assert cls.sym(1) == 7


# -- ring structure


@given(st.lists(rats, min_size=3, max_size=3), st.lists(rats, min_size=3, max_size=3))
def test_add_mul_are_pointwise(a, b):
    x, y = count_class(a), count_class(b)
    for r in (1, 2, 3):
        assert (x + y).character(r) == x.character(r) + y.character(r)
        assert (x * y).character(r) == x.character(r) * y.character(r)


def test_depth_is_min_under_ops():
    x, y = count_class([1, 2, 3]), count_class([4, 5])
    assert (x + y).depth == 2
    assert (x * y).depth == 2
    with pytest.raises(InsufficientDepth):
        (x + y).character(3)


@given(st.lists(rats, min_size=4, max_size=4), st.lists(rats, min_size=4, max_size=4))
def test_sym_series_multiplicative_over_sum(a, b):
    x, y = count_class(a), count_class(b)
    lhs = (x + y).sym_series(4)
    rhs = x.sym_series(4).convolve(y.sym_series(4))
    assert lhs == rhs


def test_sym_star_alias_matches_method():
    cls = count_class([2, 4, 8])
    assert sym_star(cls, 3) == cls.sym_series(3)
    assert sym_n(cls, 2) == cls.sym(2)


# -- standard classes


def test_unit_class():
    u = unit_count(4)
    assert [u.character(r) for r in (1, 2, 3, 4)] == [1, 1, 1, 1]
    assert u.sym(3) == 1


def test_tate_count_characters_and_syms():
    t = tate_count(2, q=3, depth=4)
    assert [t.character(r) for r in (1, 2, 3, 4)] == [9, 81, 729, 6561]
    assert t.sym(3) == 3 ** (2 * 3)
    neg = tate_count(-1, q=2, depth=2)
    assert neg.character(2) == Fraction(1, 4)


def test_tate_poincare_weight_and_guard():
    t = tate_poincare(1, order=8, depth=3)
    assert t.sym(3) == TruncSeries.monomial(1, 6, 8)
    with pytest.raises(NegativeTwistInPoincare):
        tate_poincare(-1, order=4, depth=2)


def test_odd_class_sym_series_is_binomial_then_zero():
    # dimension 4, count-free series model: (1 + z)^4 with nothing above
    cls = odd_poincare(4, order=8, depth=7)
    sig = cls.sym_series(7)
    expect = [1, 4, 6, 4, 1, 0, 0, 0]
    for n, c in enumerate(expect):
        assert sig[n] == TruncSeries.monomial(c, n, 8), n


def test_odd_dimension_validation():
    with pytest.raises(ValueError):
        odd_poincare(-1, order=4, depth=2)


@given(st.lists(rats, min_size=2, max_size=4))
def test_alternating_signs_give_elementary_symmetric(scalars):
    # psi^r = -sum((-c)^r) is the odd version of a line sum; its symmetric
    # powers are the elementary symmetric functions, vanishing above the rank
    k = len(scalars)
    psi = tuple(-sum((-Fraction(c)) ** r for c in scalars) for r in range(1, k + 2))
    cls = AdamsClass(psi, Fraction(1))
    for n in range(k + 1):
        assert cls.sym(n) == elementary_symmetric(scalars, n)
    assert cls.sym(k + 1) == 0


def test_poincare_class_requires_depth_one():
    with pytest.raises(ValueError):
        poincare_class([])


def test_series_valued_newton_matches_scalar_specialization():
    # evaluate the series characters at a point, then take Sym: same answer
    order = 6
    series_cls = poincare_class(
        [TruncSeries.of([1, r, r * r, 0, 0, 0, 0], order) for r in (1, 2, 3)]
    )
    x = Fraction(1, 2)
    scalar_cls = count_class(
        [series_cls.character(r).eval_partial(x) for r in (1, 2, 3)]
    )
    for n in (0, 1, 2, 3):
        s = series_cls.sym(n)
        assert s.eval_partial(x) == scalar_cls.sym(n)
