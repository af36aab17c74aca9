"""Lambda-ring classes presented by their Adams character.

A class a is stored as the finite vector psi^1(a), ..., psi^R(a) of its Adams
operation values inside a realization ring -- exact rationals for point
counts, truncated power series for Poincare series.  R is the depth; it is
demanded up front and never silently extended.

Direct sum is pointwise addition of characters, tensor product is pointwise
multiplication, and twisting by a line class c multiplies psi^r by c^r (which
is just the product with the line's own character).  Symmetric powers come
from the Newton recursion

    n * sigma_n = sum_{r=1}^{n} psi^r * sigma_{n-r},    sigma_0 = 1,

so computing Sym^n needs depth >= n.

An odd class of dimension m in the series realization has
psi^r = (-1)^(r+1) * m * z^r; its symmetric powers form the exterior algebra
(1 + s z)^m and vanish above m.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InsufficientDepth, NegativeTwistInPoincare
from .series import Scalar, TruncSeries, as_rat

Value = Union[Fraction, TruncSeries]


def newton_sym_values(psi: Sequence[Value], one: Value, order: int) -> list[Value]:
    """sigma_0..sigma_order from psi^1..psi^order via the Newton recursion."""
    if order < 0:
        raise ValueError("order must be >= 0")
    if len(psi) < order:
        raise InsufficientDepth(f"depth {len(psi)} < requested symmetric power {order}")
    sig: list[Value] = [one]
    for n in range(1, order + 1):
        acc = psi[0] * sig[n - 1]
        for r in range(2, n + 1):
            acc = acc + psi[r - 1] * sig[n - r]
        sig.append(acc * Fraction(1, n))
    return sig


@dataclass(frozen=True, eq=False)
class AdamsClass:
    psi: tuple[Value, ...]  # psi[r-1] = psi^r
    one: Value  # the unit of the realization ring, seeds sigma_0

    @property
    def depth(self) -> int:
        return len(self.psi)

    def character(self, r: int) -> Value:
        if not 1 <= r <= self.depth:
            raise InsufficientDepth(f"psi^{r} beyond depth {self.depth}")
        return self.psi[r - 1]

    def __add__(self, other: AdamsClass) -> AdamsClass:
        n = min(self.depth, other.depth)
        return AdamsClass(tuple(self.psi[i] + other.psi[i] for i in range(n)), self.one)

    def __mul__(self, other: AdamsClass) -> AdamsClass:
        n = min(self.depth, other.depth)
        return AdamsClass(tuple(self.psi[i] * other.psi[i] for i in range(n)), self.one)

    def sym(self, n: int) -> Value:
        """Realization of Sym^n of this class."""
        return newton_sym_values(self.psi, self.one, n)[n]

    def sym_series(self, order: int) -> SymSeries:
        return SymSeries(tuple(newton_sym_values(self.psi, self.one, order)))


@dataclass(frozen=True, eq=False)
class SymSeries:
    """Realizations of Sym^0, Sym^1, ..., Sym^order of a single class."""

    coeffs: tuple[Value, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Value:
        return self.coeffs[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymSeries):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def convolve(self, other: SymSeries) -> SymSeries:
        """Cauchy product; Sym of a direct sum is the convolution of Sym series."""
        n = min(self.order, other.order)
        out = []
        for m in range(n + 1):
            acc = self.coeffs[0] * other.coeffs[m]
            for i in range(1, m + 1):
                acc = acc + self.coeffs[i] * other.coeffs[m - i]
            out.append(acc)
        return SymSeries(tuple(out))


def sym_n(a: AdamsClass, n: int) -> Value:
    return a.sym(n)


def sym_star(a: AdamsClass, order: int) -> SymSeries:
    return a.sym_series(order)


# -- stock classes


def count_class(values: Sequence[Scalar]) -> AdamsClass:
    return AdamsClass(tuple(as_rat(v) for v in values), Fraction(1))

def poincare_class(series: Sequence[TruncSeries]) -> AdamsClass:
    if not series:
        raise ValueError("need at least depth 1 to fix the series order")
    return AdamsClass(tuple(series), TruncSeries.one(series[0].order))


def unit_count(depth: int) -> AdamsClass:
    return count_class([1] * depth)


def tate_count(i: int, q: int, depth: int) -> AdamsClass:
    """Line class with point count q^i (i may be negative)."""
    qi = Fraction(q) ** i
    return count_class([qi**r for r in range(1, depth + 1)])


def tate_poincare(i: int, order: int, depth: int) -> AdamsClass:
    """Line class of series weight z^(2i); only i >= 0 stays a power series."""
    if i < 0:
        raise NegativeTwistInPoincare(f"twist {i} < 0 has no power-series realization")
    return poincare_class(
        [TruncSeries.monomial(1, 2 * i * r, order) for r in range(1, depth + 1)]
    )


def odd_poincare(m: int, order: int, depth: int) -> AdamsClass:
    """Odd class of dimension m concentrated in series weight z."""
    if m < 0:
        raise ValueError("odd class dimension must be >= 0")
    return poincare_class(
        [
            TruncSeries.monomial((-1) ** (r + 1) * m, r, order)
            for r in range(1, depth + 1)
        ]
    )
