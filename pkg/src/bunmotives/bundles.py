"""Formulas for the moduli stack of rank-n degree-d bundles on a curve.

Three routes to the same class, kept separate so they can check each other:

  * bun_closed(n): the product formula
        Jac * BGm * Z(C,L^1) * ... * Z(C,L^(n-1)),
    i.e. SymStar of the class M_{C,n} = Mbar(C) + M(C) L + ... + M(C) L^(n-1)
    after factoring the symmetric algebra over the direct sum.
  * bun_colimit(n, d, genus, order): the approximation route.  The stack is
    exhausted by section spaces of length k = n*l - d; their classes are the
    partial sums sigma_0 + ... + sigma_k of the symmetric powers of M_{C,n}.
    Each sigma_j sits in z-degree >= j, so the series realization stabilizes
    degreewise; the function checks one more level before returning.
  * bun_compact(n, genus): the compactly-supported count form
        Jac * BGmC{(n^2-1)(genus-1)} * Z(C,L^-2) * ... * Z(C,L^-n),
    whose count realization is the mass of rank-n bundles weighted by
    1/#Aut, matching harder_count (an independent arithmetic evaluation).

Section spaces come with a direct-sum decomposition (div_decomposition) and
a full-flag refinement (hecke_motive); their index combinatorics live in
compositions, transition_support, tau and shift_tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .adams import newton_sym_values
from .curves import CurveSpec
from .errors import ArityError, NegativeLength, NonConvergent
from .expr import (
    BGm,
    BGmC,
    Jac,
    MC,
    MbarC,
    MotiveExpr,
    PoincareContext,
    ProjSpace,
    Realizer,
    Unit,
    sym,
    sum_of,
    tensor_of,
    twist,
    zeta_twist,
)
from .series import TruncSeries


def _check_rank(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ArityError(f"rank must be a positive integer, got {n!r}")


def m_c_n(n: int) -> MotiveExpr:
    """M_{C,n} = Mbar(C) + M(C) L + ... + M(C) L^(n-1)."""
    _check_rank(n)
    return sum_of([MbarC()] + [twist(MC(), i) for i in range(1, n)])


def bun_closed(n: int) -> MotiveExpr:
    """Closed product form of the rank-n bundle stack class."""
    _check_rank(n)
    return tensor_of([Jac(), BGm()] + [zeta_twist(i) for i in range(1, n)])


@lru_cache(maxsize=None)
def _sym_row(n: int, genus: int, order: int) -> tuple[TruncSeries, ...]:
    # sigma_0 .. sigma_(order + 2n) of M_{C,n} in the series realization;
    # one Newton pass serves every degree d at this (n, genus, order)
    upto = order + 2 * n
    rz = Realizer(PoincareContext(genus=genus, order=order))
    m = m_c_n(n)
    psi = [rz.char(m, r) for r in range(1, upto + 1)]
    one = rz.one()
    assert isinstance(one, TruncSeries)
    return tuple(newton_sym_values(psi, one, upto))


def section_length(n: int, d: int, l: int) -> int:
    """k = n*l - d, the length of the section spaces at level l."""
    _check_rank(n)
    k = n * l - d
    if k < 0:
        raise NegativeLength(f"section length n*l - d = {k} is negative")
    return k


def stable_level(n: int, d: int, order: int) -> int:
    """Smallest twisting level l with section length n*l - d >= order."""
    _check_rank(n)
    if order < 0:
        raise ArityError("order must be non-negative")
    return -((-(order + d)) // n)


def bun_colimit(n: int, d: int, genus: int, order: int) -> TruncSeries:
    """Series realization of the bundle stack through the approximation
    route; independent of d once the level is past stable_level."""
    if genus < 0:
        raise ArityError("genus must be non-negative")
    l = stable_level(n, d, order)
    k = section_length(n, d, l)
    row = _sym_row(n, genus, order)
    partial = TruncSeries.zero(order)
    for j in range(k + 1):
        partial = partial + row[j]
    nxt = partial
    for j in range(k + 1, k + n + 1):
        nxt = nxt + row[j]
    if partial != nxt:
        raise NonConvergent(
            f"approximation did not stabilize at level {l} (order {order})"
        )
    return partial


# -- section spaces and their decomposition


def div_motive(n: int, d: int, l: int) -> MotiveExpr:
    """Class of the level-l section space: Sym^(nl-d)(M(C) * P(n-1))."""
    k = section_length(n, d, l)
    return sym(tensor_of([MC(), ProjSpace(n - 1)]), k)


@dataclass(frozen=True)
class BSummand:
    """One direct summand of a section space, indexed by the composition
    (m_0, ..., m_(n-1)) of nl - d recording how many sections land in
    each twist line."""

    index: tuple[int, ...]
    expr: MotiveExpr


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts < 1:
        raise ArityError("need at least one part")
    if total < 0:
        raise ArityError("total must be non-negative")
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def div_decomposition(n: int, d: int, l: int) -> tuple[BSummand, ...]:
    """Direct-sum decomposition of div_motive(n, d, l): the summand at
    composition m is the product over i of Sym^(m_i)(M(C)) L^(i m_i)."""
    k = section_length(n, d, l)
    out = []
    for m in compositions(k, n):
        factors = [twist(sym(MC(), m[i]), i * m[i]) for i in range(n) if m[i] > 0]
        out.append(BSummand(m, tensor_of(factors)))
    return tuple(out)


def transition_support(index: tuple[int, ...]) -> tuple[int, ...]:
    """Index map induced by passing from level l to level l+1: the n new
    sections land in the untwisted line, so m_0 grows by n."""
    if not index:
        raise ArityError("empty index")
    return (index[0] + len(index),) + tuple(index[1:])


def tau(index: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Multiplicity profile of an index tuple: (value, count) pairs,
    largest value first."""
    counts: dict[int, int] = {}
    for v in index:
        counts[v] = counts.get(v, 0) + 1
    return tuple(sorted(counts.items(), reverse=True))


def shift_tuple(index: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Embed an index tuple into n more coordinates by prepending zeros."""
    if n < 0:
        raise ArityError("shift must be non-negative")
    return (0,) * n + tuple(index)


def hecke_motive(l: int, n: int, base: MotiveExpr = Unit()) -> MotiveExpr:
    """Iterated single-point modifications: each of the l steps contributes
    a point on C and a line in the rank-n fibre."""
    _check_rank(n)
    if l < 0:
        raise NegativeLength(f"modification length {l} is negative")
    step = tensor_of([MC(), ProjSpace(n - 1)])
    return tensor_of([base] + [step] * l)


def flag_div_motive(n: int, d: int, l: int) -> MotiveExpr:
    """Full-flag refinement of the level-l section space."""
    return hecke_motive(section_length(n, d, l), n)


# -- compactly-supported form and the independent mass count


def bun_compact(n: int, genus: int) -> MotiveExpr:
    """Compactly-supported class of the rank-n bundle stack (count
    realization only; the series realization is rejected)."""
    _check_rank(n)
    if genus < 0:
        raise ArityError("genus must be non-negative")
    shift = (n * n - 1) * (genus - 1)
    return tensor_of(
        [Jac(), twist(BGmC(), shift)] + [zeta_twist(-i) for i in range(2, n + 1)]
    )


def harder_count(n: int, curve: CurveSpec) -> Fraction:
    """Mass of rank-n bundles over the curve's field, each weighted by
    1/#Aut: #Jac/(q-1) * q^((n^2-1)(g-1)) * prod_{i=2..n} zeta_C(i).
    Computed from the curve data alone, bypassing the expression engine."""
    _check_rank(n)
    q, g = curve.q, curve.genus
    val = Fraction(curve.jac_count(), q - 1) * Fraction(q) ** ((n * n - 1) * (g - 1))
    for i in range(2, n + 1):
        val *= curve.zeta_special_value(i)
    return val
