"""Bundle-stack formulas: closed form, approximation route, section spaces,
compactly-supported counts, and the index combinatorics."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bunmotives import errors as err
from bunmotives.bundles import (
    BSummand,
    bun_closed,
    bun_colimit,
    bun_compact,
    compositions,
    div_decomposition,
    div_motive,
    flag_div_motive,
    harder_count,
    hecke_motive,
    m_c_n,
    section_length,
    shift_tuple,
    stable_level,
    tau,
    transition_support,
)
from bunmotives.census import split_bundle_count_p1
from bunmotives.curves import CurveSpec
from bunmotives.expr import (
    CountContext,
    MC,
    PoincareContext,
    Tensor,
    parse,
    realize,
    sum_of,
    to_text,
)


def elliptic_q2():
    return CurveSpec.hyperelliptic(2, h=[1], f=[0, 0, 0, 1])


def test_building_blocks_print():
    assert to_text(m_c_n(1)) == "Mbar(C)"
    assert to_text(m_c_n(3)) == "Mbar(C) + M(C){1} + M(C){2}"
    assert to_text(bun_closed(1)) == "Jac * BGm"
    assert to_text(bun_closed(2)) == "Jac * BGm * Z(C,L^1)"
    assert to_text(bun_compact(2, 0)) == "Jac * BGmC{-3} * Z(C,L^-2)"
    assert to_text(bun_compact(1, 1)) == "Jac * BGmC"
    assert to_text(div_motive(2, 1, 3)) == "Sym^5(M(C) * P(1))"


def test_colimit_equals_closed_form():
    for n in (1, 2, 3):
        for g in (0, 1, 2):
            closed = realize(bun_closed(n), PoincareContext(genus=g, order=10))
            for d in (0, 1, 5, -3):
                assert bun_colimit(n, d, g, 10) == closed, (n, d, g)


def test_colimit_is_degree_independent():
    series = {d: bun_colimit(2, d, 2, 14) for d in range(-2, 3)}
    first = series[-2]
    assert all(s == first for s in series.values())


def test_stable_level_and_section_length():
    assert stable_level(2, 1, 10) == 6
    assert section_length(2, 1, 6) == 11
    assert stable_level(3, 0, 9) == 3
    assert stable_level(1, -4, 0) == -4
    with pytest.raises(err.NegativeLength):
        section_length(2, 5, 1)
    with pytest.raises(err.ArityError):
        stable_level(0, 0, 4)


def test_closed_form_is_sym_star_of_building_block():
    # the product formula is the full symmetric algebra on M_{C,n}
    from bunmotives.expr import sym_star

    for n in (1, 2):
        ctx = PoincareContext(genus=2, order=8)
        assert realize(sym_star(m_c_n(n)), ctx) == realize(bun_closed(n), ctx)


def test_div_decomposition_sums_to_whole():
    ell = elliptic_q2()
    for n, d, l in [(1, 0, 4), (2, 1, 2), (2, 0, 3), (3, 0, 1), (3, 2, 2)]:
        parts = div_decomposition(n, d, l)
        whole = div_motive(n, d, l)
        total = sum_of([p.expr for p in parts])
        pc = PoincareContext(genus=1, order=8)
        assert realize(total, pc) == realize(whole, pc), (n, d, l)
        cc = CountContext.for_curve(ell)
        assert realize(total, cc) == realize(whole, cc), (n, d, l)


def test_div_decomposition_indices_are_compositions():
    parts = div_decomposition(2, 1, 2)  # k = 3
    assert [p.index for p in parts] == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert all(isinstance(p, BSummand) for p in parts)


def test_kunneth_square_frozen_value():
    # Sym^2 of the product surface over F_2, counted by orbit enumeration
    p1 = CurveSpec.p1(2)
    assert realize(div_motive(2, 0, 1), CountContext.for_curve(p1)) == 53


@given(st.integers(0, 7), st.integers(1, 4))
def test_compositions_count(total, parts):
    from math import comb

    found = list(compositions(total, parts))
    assert len(found) == comb(total + parts - 1, parts - 1)
    assert len(set(found)) == len(found)
    assert all(sum(c) == total and len(c) == parts and min(c) >= 0 for c in found)


def test_transition_support_embeds_levels():
    k, n = 4, 3
    level = set(compositions(k, n))
    nxt = set(compositions(k + n, n))
    image = {transition_support(m) for m in level}
    assert image <= nxt
    assert len(image) == len(level)


def test_tau_and_shift():
    assert tau((2, 0, 2, 1)) == ((2, 2), (1, 1), (0, 1))
    assert tau(()) == ()
    assert shift_tuple((5, 1), 3) == (0, 0, 0, 5, 1)
    assert tau(shift_tuple((5, 1), 3)) == ((5, 1), (1, 1), (0, 3))
    with pytest.raises(err.ArityError):
        transition_support(())


def test_hecke_and_flag():
    assert hecke_motive(0, 2) == parse("1")
    step = parse("M(C) * P(1)")
    assert hecke_motive(2, 2) == Tensor((parse("1"), step, step))
    p1 = CurveSpec.p1(2)
    cc = CountContext.for_curve(p1)
    # flags refine the symmetric structure: count is the plain power
    assert realize(flag_div_motive(2, 1, 2), cc) == 9**3
    assert realize(hecke_motive(2, 3, MC()), cc) == 3 * (3 * 7) ** 2
    with pytest.raises(err.NegativeLength):
        hecke_motive(-1, 2)


def test_compact_count_equals_mass_formula():
    cases = [
        (2, CurveSpec.p1(2), Fraction(1, 3)),
        (2, CurveSpec.p1(3), Fraction(1, 32)),
        (3, CurveSpec.p1(2), Fraction(1, 63)),
        (3, CurveSpec.p1(3), Fraction(1, 6656)),
        (1, elliptic_q2(), Fraction(3)),
        (2, elliptic_q2(), Fraction(9)),
    ]
    for n, curve, expect in cases:
        mass = harder_count(n, curve)
        assert mass == expect, (n, curve.q)
        got = realize(bun_compact(n, curve.genus), CountContext.for_curve(curve))
        assert got == expect, (n, curve.q)


def test_compact_count_matches_oracle_interval():
    eps = Fraction(1, 10**9)
    for q in (2, 3):
        curve = CurveSpec.p1(q)
        value = realize(bun_compact(2, 0), CountContext.for_curve(curve))
        lo, hi = split_bundle_count_p1(2, 0, q, eps)
        assert lo <= value <= hi


def test_compact_has_no_series_realization():
    with pytest.raises(err.LaurentRequired):
        realize(bun_compact(2, 0), PoincareContext(genus=0, order=4))


def test_truncated_compact_brackets_exact_value():
    curve = CurveSpec.p1(2)
    coarse = realize(bun_compact(2, 0), CountContext.for_curve(curve, truncation=30))
    assert coarse.contains(Fraction(1, 3))
    assert coarse.err < Fraction(1, 10**3)
    fine = realize(bun_compact(2, 0), CountContext.for_curve(curve, truncation=90))
    assert fine.contains(Fraction(1, 3))
    assert fine.err < Fraction(1, 10**6)


def test_rank_validation():
    for fn in (m_c_n, bun_closed):
        with pytest.raises(err.ArityError):
            fn(0)
    with pytest.raises(err.ArityError):
        bun_compact(2, -1)
    with pytest.raises(err.ArityError):
        harder_count(0, CurveSpec.p1(2))
