"""Exact univariate arithmetic: polynomials, truncated power series, rational functions.

All coefficients are `fractions.Fraction` (kept in lowest terms with positive
denominator by the stdlib), so every computation in this package is exact.

Representations:
  * Poly        -- dense coefficient tuple, lowest degree first, trailing zeros
                   trimmed; the empty tuple is the zero polynomial.
  * TruncSeries -- coefficients 0..N of a power series known modulo z^(N+1).
                   The truncation order N is explicit; binary operations on
                   mixed orders truncate to the smaller one, and coefficients
                   above the order are never fabricated or reported.
  * RatFunc     -- num/den with den(0) != 0, stored in a normal form with
                   gcd(num, den) = 1 and den scaled so its leading coefficient
                   is +-1 and its constant term is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .errors import PoleAtOrigin, PoleAtPoint, ZeroConstantTerm

Rat = Fraction
Scalar = Union[int, Fraction]


def as_rat(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class Poly:
    """Dense polynomial over the rationals."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def of(cs: Iterable[Scalar]) -> Poly:
        out = [as_rat(c) for c in cs]
        while out and out[-1] == 0:
            out.pop()
        return Poly(tuple(out))

    @staticmethod
    def zero() -> Poly:
        return Poly(())

    @staticmethod
    def one() -> Poly:
        return Poly.of([1])

    @staticmethod
    def monomial(c: Scalar, k: int) -> Poly:
        if k < 0:
            raise ValueError("monomial degree must be non-negative")
        return Poly.of([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other: Poly) -> Poly:
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.of([self[k] + other[k] for k in range(n)])

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Union[Poly, Scalar]) -> Poly:
        if isinstance(other, (int, Fraction)):
            return Poly.of([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly.of(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative polynomial power")
        out, base = Poly.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def eval(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> Poly:
        return Poly.of([k * c for k, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        q: list[Fraction] = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lc = other.degree, other.coeffs[-1]
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for j in range(d + 1):
                rem[k + j] -= f * other.coeffs[j]
        return Poly.of(q), Poly.of(rem)

    @staticmethod
    def gcd(a: Poly, b: Poly) -> Poly:
        """Monic gcd (1 for coprime inputs, 0 only if both are 0)."""
        while b:
            a, b = b, a.divmod(b)[1]
        if a and a.coeffs[-1] != 1:
            a = a * (1 / a.coeffs[-1])
        return a

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*T" if c != 1 else "T")
            else:
                parts.append(f"{c}*T^{k}" if c != 1 else f"T^{k}")
        return " + ".join(parts)


@dataclass(frozen=True, eq=False)
class TruncSeries:
    """Power series known exactly through its truncation order."""

    coeffs: tuple[Fraction, ...]  # index j is the z^j coefficient; len = order+1

    @staticmethod
    def of(cs: Iterable[Scalar], order: int) -> TruncSeries:
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        out = [as_rat(c) for c in cs][: order + 1]
        out += [Fraction(0)] * (order + 1 - len(out))
        return TruncSeries(tuple(out))

    @staticmethod
    def zero(order: int) -> TruncSeries:
        return TruncSeries.of([], order)

    @staticmethod
    def one(order: int) -> TruncSeries:
        return TruncSeries.of([1], order)

    @staticmethod
    def monomial(c: Scalar, k: int, order: int) -> TruncSeries:
        # a monomial beyond the order truncates to 0
        if k < 0:
            raise ValueError("monomial degree must be non-negative")
        if k > order:
            return TruncSeries.zero(order)
        return TruncSeries.of([0] * k + [c], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> Fraction:
        if not 0 <= j <= self.order:
            raise IndexError(f"coefficient {j} outside truncation order {self.order}")
        return self.coeffs[j]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def truncate(self, order: int) -> TruncSeries:
        if order > self.order:
            raise ValueError("cannot raise a truncation order")
        return TruncSeries(self.coeffs[: order + 1])

    def __add__(self, other: TruncSeries) -> TruncSeries:
        n = min(self.order, other.order)
        return TruncSeries(tuple(self.coeffs[j] + other.coeffs[j] for j in range(n + 1)))

    def __neg__(self) -> TruncSeries:
        return TruncSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        return self + (-other)

    def __mul__(self, other: Union[TruncSeries, Scalar]) -> TruncSeries:
        if isinstance(other, (int, Fraction)):
            return TruncSeries(tuple(c * other for c in self.coeffs))
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] += a * b
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> TruncSeries:
        return self * (Fraction(1) / as_rat(other))

    def __pow__(self, e: int) -> TruncSeries:
        if e < 0:
            raise ValueError("negative series power; use inverse() first")
        out, base = TruncSeries.one(self.order), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> TruncSeries:
        """Multiplicative inverse; requires an invertible constant term."""
        if self.coeffs[0] == 0:
            raise ZeroConstantTerm("series has zero constant term")
        n = self.order
        inv0 = Fraction(1) / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * n
        for m in range(1, n + 1):
            s = Fraction(0)
            for k in range(1, m + 1):
                if self.coeffs[k] != 0:
                    s += self.coeffs[k] * out[m - k]
            out[m] = -inv0 * s
        return TruncSeries(tuple(out))

    def substitute(self, k: int, c: Scalar) -> TruncSeries:
        """Return a(c*z^k).  Exact through z^(k*(order+1)-1)."""
        if k < 1:
            raise ValueError("substitution exponent must be >= 1")
        c = as_rat(c)
        new_order = k * (self.order + 1) - 1
        # coefficient j maps to c^j at exponent j*k
        out = [Fraction(0)] * (new_order + 1)
        power = Fraction(1)
        for j, a in enumerate(self.coeffs):
            out[j * k] = a * power
            power *= c
        return TruncSeries(tuple(out))

    def eval_partial(self, x: Scalar) -> Fraction:
        """Sum of the known coefficients at x (a partial sum, not a limit)."""
        x = as_rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other: object) -> bool:
        """Agreement on all coefficients up to the smaller order."""
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def agrees_through(self, other: TruncSeries, k: int) -> bool:
        """Equality of coefficients 0..k; both series must know them."""
        if self.order < k or other.order < k:
            raise ValueError(f"comparison through degree {k} exceeds a truncation order")
        return self.coeffs[: k + 1] == other.coeffs[: k + 1]

    def __str__(self) -> str:
        body = " ".join(str(c) for c in self.coeffs)
        return f"[{body}] + O(z^{self.order + 1})"


@dataclass(frozen=True)
class RatFunc:
    """Rational function regular at the origin, in normal form."""

    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly) -> RatFunc:
        if den.eval(0) == 0:
            raise PoleAtOrigin("denominator vanishes at 0")
        g = Poly.gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        scale = Fraction(1) / den.coeffs[-1]
        if (den.eval(0) * scale) < 0:
            scale = -scale
        return RatFunc(num * scale, den * scale)

    @staticmethod
    def of(num: Iterable[Scalar], den: Iterable[Scalar]) -> RatFunc:
        return RatFunc.make(Poly.of(num), Poly.of(den))

    def expand(self, order: int) -> TruncSeries:
        """Power-series expansion at the origin through z^order."""
        num = TruncSeries.of(self.num.coeffs, order)
        den = TruncSeries.of(self.den.coeffs, order)
        return num * den.inverse()

    def eval_at(self, x: Scalar) -> Fraction:
        x = as_rat(x)
        d = self.den.eval(x)
        if d == 0:
            raise PoleAtPoint(f"pole at {x}")
        return self.num.eval(x) / d

    def __mul__(self, other: RatFunc) -> RatFunc:
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __add__(self, other: RatFunc) -> RatFunc:
        return RatFunc.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"
