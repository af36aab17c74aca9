"""Motive expressions: a small AST of geometric classes with two realizations.

Atoms:
    Unit            the point class (prints as 1)
    Tate(i)         the i-th Tate line L^i (L prints as L, general i as 1{i})
    MC              the class of the curve C
    MbarC           the reduced curve class, MC minus the point
    M1Jac           the weight-one part of MC (odd, dimension 2g)
    Jac             the Jacobian class, the full exterior algebra on M1Jac
    BGm             classifying stack of the multiplicative group
    BGmC            its compactly-supported counterpart, sum_{i>=1} L^(-i)
    ProjSpace(m)    projective m-space (prints as P(m))

Nodes: Sum, Tensor, Twist(e, i) = e * L^i, Sym(e, n), SymStar(e) = sum of all
symmetric powers, and ZetaTwist(i) = sum_j Sym^j(MC) * L^(ij), the motivic
zeta value at L^i.

Grammar (whitespace-insensitive):

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom | atom '{' int '}' | 'Sym' '^' nat '(' expr ')'
            | 'SymStar' '(' expr ')' | 'Z' '(' 'C' ',' 'L' '^' int ')'
    atom   := '1' | 'L' | 'M(C)' | 'Mbar(C)' | 'M1(Jac)' | 'Jac' | 'BGm'
            | 'BGmC' | 'P(' nat ')' | '(' expr ')'

Realization is the Adams character at level 1; to_adams returns the character
vector to a requested depth.  The character of a composite node at level r is
computed by index-stretching: psi^r(Sym^n e) is the n-th Newton value of the
sequence j -> psi^(rj)(e), which is valid because psi^r is a ring map with
psi^r psi^j = psi^(rj).

Poincare realization (series in z, fixed truncation order, needs only the
genus): MC has psi^r = 1 + (-1)^(r+1) 2g z^r + z^(2r); ZetaTwist(i) needs
i >= 1; BGmC and negative twists are rejected (LaurentRequired).

Count realization (exact rationals, needs a curve and its q): MC has
psi^r = p_r; Jac gives #Jac(F_{q^r}); BGm/BGmC take their geometric-series
values 1/(1-q^r) and 1/(q^r-1); ZetaTwist(i) is the zeta value Z(q^(ir)) of
the base-changed curve and is rejected exactly at the poles i in {0, 1, -1}.
A truncated count context replaces the two infinite-sum atoms by partial
sums carrying certified tail bounds (CountApprox).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .adams import AdamsClass, Value, newton_sym_values
from .curves import CurveSpec, base_change_numerator
from .errors import (
    ArityError,
    CurveDataRequired,
    DomainError,
    LaurentRequired,
    NonConvergent,
    ParseError,
    PoleAtTwist,
)
from .series import Poly, RatFunc, TruncSeries


class MotiveExpr:
    """Base class; all nodes are frozen dataclasses and hash by value."""

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Unit(MotiveExpr):
    pass


@dataclass(frozen=True)
class Tate(MotiveExpr):
    i: int


@dataclass(frozen=True)
class MC(MotiveExpr):
    pass


@dataclass(frozen=True)
class MbarC(MotiveExpr):
    pass


@dataclass(frozen=True)
class M1Jac(MotiveExpr):
    pass


@dataclass(frozen=True)
class Jac(MotiveExpr):
    pass


@dataclass(frozen=True)
class BGm(MotiveExpr):
    pass


@dataclass(frozen=True)
class BGmC(MotiveExpr):
    pass


@dataclass(frozen=True)
class ProjSpace(MotiveExpr):
    dim: int


@dataclass(frozen=True)
class Sum(MotiveExpr):
    terms: tuple[MotiveExpr, ...]


@dataclass(frozen=True)
class Tensor(MotiveExpr):
    factors: tuple[MotiveExpr, ...]


@dataclass(frozen=True)
class Twist(MotiveExpr):
    expr: MotiveExpr
    i: int


@dataclass(frozen=True)
class Sym(MotiveExpr):
    expr: MotiveExpr
    n: int


@dataclass(frozen=True)
class SymStar(MotiveExpr):
    expr: MotiveExpr


@dataclass(frozen=True)
class ZetaTwist(MotiveExpr):
    i: int


# -- smart constructors (used by the parser and the formula pipelines);
#    they keep ASTs in the normal form that the printer round-trips.


def tate(i: int) -> MotiveExpr:
    return Unit() if i == 0 else Tate(i)


def twist(e: MotiveExpr, i: int) -> MotiveExpr:
    if i == 0:
        return e
    if isinstance(e, Unit):
        return tate(i)
    if isinstance(e, Tate):
        return tate(e.i + i)
    return Twist(e, i)


def sum_of(terms: Iterable[MotiveExpr]) -> MotiveExpr:
    ts = tuple(terms)
    if not ts:
        raise ArityError("empty sum")
    return ts[0] if len(ts) == 1 else Sum(ts)


def tensor_of(factors: Iterable[MotiveExpr]) -> MotiveExpr:
    fs = tuple(factors)
    if not fs:
        return Unit()
    return fs[0] if len(fs) == 1 else Tensor(fs)


def sym(e: MotiveExpr, n: int) -> MotiveExpr:
    if n < 0:
        raise ArityError("negative symmetric power")
    if n == 0:
        return Unit()
    if n == 1:
        return e
    return Sym(e, n)


def sym_star(e: MotiveExpr) -> MotiveExpr:
    return SymStar(e)


def zeta_twist(i: int) -> MotiveExpr:
    return ZetaTwist(i)


# -- realization contexts


@dataclass(frozen=True)
class PoincareContext:
    """Series realization: genus of the curve, truncation order."""

    genus: int
    order: int
    sym_budget: int = 64

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.order < 0:
            raise ValueError("truncation order must be non-negative")


@dataclass(frozen=True)
class CountContext:
    """Point-count realization over F_q; curve may be omitted for curve-free
    expressions.  truncation = J switches to partial sums with tail bounds."""

    q: int
    curve: CurveSpec | None = None
    truncation: int | None = None
    sym_budget: int = 16

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if self.truncation is not None and self.truncation < 0:
            raise ValueError("truncation depth must be non-negative")

    @staticmethod
    def for_curve(curve: CurveSpec, truncation: int | None = None) -> CountContext:
        return CountContext(q=curve.q, curve=curve, truncation=truncation)


Context = Union[PoincareContext, CountContext]


@dataclass(frozen=True)
class CountApprox:
    """An exact partial value with a certified error bound: |true - value| <= err."""

    value: Fraction
    err: Fraction

    @staticmethod
    def exact(v: Fraction) -> CountApprox:
        return CountApprox(v, Fraction(0))

    def __add__(self, other: CountApprox) -> CountApprox:
        return CountApprox(self.value + other.value, self.err + other.err)

    def __mul__(self, other: CountApprox) -> CountApprox:
        err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return CountApprox(self.value * other.value, err)

    def contains(self, x: Fraction) -> bool:
        return abs(x - self.value) <= self.err


RealizeResult = Union[Fraction, TruncSeries, CountApprox]


# -- validation


_CURVE_ATOMS = (MC, MbarC, M1Jac, Jac)


def validate(e: MotiveExpr, ctx: Context) -> None:
    """Structural and admissibility checks; raises before any computation."""
    poincare = isinstance(ctx, PoincareContext)
    if isinstance(e, (Unit, MC, MbarC, M1Jac, Jac, BGm)):
        pass
    elif isinstance(e, Tate):
        if not isinstance(e.i, int):
            raise ArityError("Tate twist must be an integer")
        if poincare and e.i < 0:
            raise LaurentRequired(f"L^{e.i} has no power-series realization")
    elif isinstance(e, BGmC):
        if poincare:
            raise LaurentRequired("BGmC only has a compactly-supported (count) realization")
    elif isinstance(e, ProjSpace):
        if not isinstance(e.dim, int) or e.dim < 0:
            raise ArityError("projective space dimension must be a natural number")
    elif isinstance(e, Sum):
        if not e.terms:
            raise ArityError("empty sum")
        for t in e.terms:
            validate(t, ctx)
    elif isinstance(e, Tensor):
        if not e.factors:
            raise ArityError("empty tensor")
        for f in e.factors:
            validate(f, ctx)
    elif isinstance(e, Twist):
        if not isinstance(e.i, int):
            raise ArityError("twist must be an integer")
        if poincare and e.i < 0:
            raise LaurentRequired(f"twist by {e.i} has no power-series realization")
        validate(e.expr, ctx)
    elif isinstance(e, Sym):
        if not isinstance(e.n, int) or e.n < 0:
            raise ArityError("symmetric power must be a natural number")
        validate(e.expr, ctx)
    elif isinstance(e, SymStar):
        validate(e.expr, ctx)
    elif isinstance(e, ZetaTwist):
        if not isinstance(e.i, int):
            raise ArityError("zeta twist must be an integer")
        if poincare and e.i < 1:
            raise LaurentRequired(f"Z(C,L^{e.i}) needs i >= 1 for a power series")
        if not poincare and e.i in (0, 1, -1):
            raise PoleAtTwist(f"Z(C,L^{e.i}) is a pole of the zeta function")
    else:
        raise ArityError(f"not a motive expression: {e!r}")
    if not poincare and isinstance(e, _CURVE_ATOMS + (ZetaTwist,)) and ctx.curve is None:
        raise CurveDataRequired(f"{to_text(e)} needs curve data in a count context")


# -- the realization engine


class Realizer:
    def __init__(self, ctx: Context):
        self.ctx = ctx
        self._memo: dict[tuple[MotiveExpr, int], Value] = {}

    # ring constants

    def one(self) -> Value:
        if isinstance(self.ctx, PoincareContext):
            return TruncSeries.one(self.ctx.order)
        return Fraction(1)

    def zero(self) -> Value:
        if isinstance(self.ctx, PoincareContext):
            return TruncSeries.zero(self.ctx.order)
        return Fraction(0)

    # public entry points

    def realize(self, e: MotiveExpr) -> RealizeResult:
        validate(e, self.ctx)
        if isinstance(self.ctx, CountContext) and self.ctx.truncation is not None:
            return self._approx(e)
        return self.char(e, 1)

    def to_adams(self, e: MotiveExpr, depth: int) -> AdamsClass:
        if depth < 1:
            raise ValueError("depth must be >= 1")
        if isinstance(self.ctx, CountContext) and self.ctx.truncation is not None:
            raise DomainError("Adams characters need the exact count mode")
        validate(e, self.ctx)
        return AdamsClass(tuple(self.char(e, r) for r in range(1, depth + 1)), self.one())

    # Adams character at level r

    def char(self, e: MotiveExpr, r: int) -> Value:
        key = (e, r)
        if key not in self._memo:
            self._memo[key] = self._char(e, r)
        return self._memo[key]

    def _char(self, e: MotiveExpr, r: int) -> Value:
        ctx = self.ctx
        if isinstance(e, Sum):
            acc = self.char(e.terms[0], r)
            for t in e.terms[1:]:
                acc = acc + self.char(t, r)
            return acc
        if isinstance(e, Tensor):
            acc = self.char(e.factors[0], r)
            for f in e.factors[1:]:
                acc = acc * self.char(f, r)
            return acc
        if isinstance(e, Twist):
            return self.char(e.expr, r) * self.char(Tate(e.i), r)
        if isinstance(e, Sym):
            psi = [self.char(e.expr, r * j) for j in range(1, e.n + 1)]
            return newton_sym_values(psi, self.one(), e.n)[e.n]
        if isinstance(e, SymStar):
            return self._sym_star_char(e.expr, r)
        if isinstance(ctx, PoincareContext):
            return self._atom_poincare(e, r)
        return self._atom_count(e, r)

    def _atom_poincare(self, e: MotiveExpr, r: int) -> Value:
        ctx = self.ctx
        assert isinstance(ctx, PoincareContext)
        N, g = ctx.order, ctx.genus
        odd = TruncSeries.monomial((-1) ** (r + 1) * 2 * g, r, N)
        if isinstance(e, Unit):
            return TruncSeries.one(N)
        if isinstance(e, Tate):
            return TruncSeries.monomial(1, 2 * e.i * r, N)
        if isinstance(e, MC):
            return TruncSeries.one(N) + odd + TruncSeries.monomial(1, 2 * r, N)
        if isinstance(e, MbarC):
            return odd + TruncSeries.monomial(1, 2 * r, N)
        if isinstance(e, M1Jac):
            return odd
        if isinstance(e, Jac):
            unit_plus = TruncSeries.one(N) + TruncSeries.monomial((-1) ** (r + 1), r, N)
            return unit_plus ** (2 * g)
        if isinstance(e, BGm):
            return TruncSeries.of(
                [1 if (2 * r and j % (2 * r) == 0) else 0 for j in range(N + 1)], N
            )
        if isinstance(e, ProjSpace):
            coeffs = [0] * (N + 1)
            for i in range(e.dim + 1):
                if 2 * r * i <= N:
                    coeffs[2 * r * i] = 1
            return TruncSeries.of(coeffs, N)
        if isinstance(e, ZetaTwist):
            # sum_j Sym^j(MC) z^(2 i j) at stretch r, truncated degreewise
            out = TruncSeries.zero(N)
            step = 2 * e.i * r
            j_max = N // step if step else 0
            psi = [self.char(MC(), r * j) for j in range(1, j_max + 1)]
            sig = newton_sym_values(psi, self.one(), j_max)
            for j in range(j_max + 1):
                out = out + sig[j] * TruncSeries.monomial(1, step * j, N)
            return out
        raise ArityError(f"no Poincare realization rule for {e!r}")

    def _atom_count(self, e: MotiveExpr, r: int) -> Value:
        ctx = self.ctx
        assert isinstance(ctx, CountContext)
        q = Fraction(ctx.q)
        if isinstance(e, Unit):
            return Fraction(1)
        if isinstance(e, Tate):
            return q ** (e.i * r)
        if isinstance(e, BGm):
            return Fraction(1) / (1 - q**r)
        if isinstance(e, BGmC):
            return Fraction(1) / (q**r - 1)
        if isinstance(e, ProjSpace):
            return sum((q ** (i * r) for i in range(1, e.dim + 1)), Fraction(1))
        curve = ctx.curve
        assert curve is not None
        if isinstance(e, MC):
            return Fraction(curve.point_count(r))
        if isinstance(e, MbarC):
            return Fraction(curve.point_count(r) - 1)
        if isinstance(e, M1Jac):
            return Fraction(curve.point_count(r) - 1) - q**r
        if isinstance(e, Jac):
            return Fraction(curve.jac_count(r))
        if isinstance(e, ZetaTwist):
            num = base_change_numerator(curve.numerator, r)
            den = Poly.of([1, -1]) * Poly.of([1, -(ctx.q**r)])
            return RatFunc.make(num, den).eval_at(q ** (e.i * r))
        raise ArityError(f"no count realization rule for {e!r}")

    def _sym_star_char(self, e: MotiveExpr, r: int) -> Value:
        ctx = self.ctx
        if isinstance(ctx, PoincareContext):
            N = ctx.order
            # degreewise convergence: psi^m of the argument must vanish
            # below degree m, so that Sym^n sits in degree >= n
            psi = []
            for j in range(1, N + 1):
                c = self.char(e, r * j)
                assert isinstance(c, TruncSeries)
                low = min(r * j - 1, c.order)
                if any(c.coeffs[d] != 0 for d in range(low + 1)):
                    raise NonConvergent(
                        "SymStar diverges: argument has weight-0 content"
                    )
                psi.append(c)
            sig = newton_sym_values(psi, self.one(), N)
            acc = TruncSeries.zero(N)
            for s in sig:
                acc = acc + s
            return acc
        budget = ctx.sym_budget
        psi = [self.char(e, r * j) for j in range(1, budget + 1)]
        sig = newton_sym_values(psi, self.one(), budget)
        last_nonzero = max((n for n, v in enumerate(sig) if v != 0), default=0)
        if last_nonzero >= budget:
            raise NonConvergent(
                f"SymStar did not terminate within the sym budget {budget}"
            )
        return sum(sig[: last_nonzero + 1], Fraction(0))

    # truncated counts

    def _approx(self, e: MotiveExpr) -> CountApprox:
        ctx = self.ctx
        assert isinstance(ctx, CountContext) and ctx.truncation is not None
        J = ctx.truncation
        q = ctx.q
        if isinstance(e, Sum):
            acc = self._approx(e.terms[0])
            for t in e.terms[1:]:
                acc = acc + self._approx(t)
            return acc
        if isinstance(e, Tensor):
            acc = self._approx(e.factors[0])
            for f in e.factors[1:]:
                acc = acc * self._approx(f)
            return acc
        if isinstance(e, Twist):
            return self._approx(e.expr) * CountApprox.exact(Fraction(q) ** e.i)
        if isinstance(e, BGmC):
            # sum_{i=1..J} q^(-i), geometric tail
            val = sum((Fraction(1, q**i) for i in range(1, J + 1)), Fraction(0))
            return CountApprox(val, Fraction(1, q**J * (q - 1)))
        if isinstance(e, ZetaTwist) and e.i <= -2:
            value, bound = ctx.curve.zeta_partial_sum(-e.i, J)
            return CountApprox(value, bound)
        if isinstance(e, (Sym, SymStar)):
            raise DomainError("symmetric powers need the exact count mode")
        exact = Realizer(CountContext(q=q, curve=ctx.curve)).realize(e)
        assert isinstance(exact, Fraction)
        return CountApprox.exact(exact)


def realize(e: MotiveExpr, ctx: Context) -> RealizeResult:
    return Realizer(ctx).realize(e)


def to_adams(e: MotiveExpr, ctx: Context, depth: int) -> AdamsClass:
    return Realizer(ctx).to_adams(e, depth)


def zeta_twist_series_closed_form(i: int, genus: int, order: int) -> TruncSeries:
    """Independent route for the series realization of Z(C, L^i), i >= 1:
    (1 + z^(2i+1))^(2g) / ((1 - z^(2i)) (1 - z^(2i+2)))."""
    if i < 1:
        raise LaurentRequired("the closed form needs i >= 1")
    num = Poly.monomial(1, 2 * i + 1) + Poly.one()
    num = num ** (2 * genus)
    den = (Poly.one() - Poly.monomial(1, 2 * i)) * (Poly.one() - Poly.monomial(1, 2 * i + 2))
    return RatFunc.make(num, den).expand(order)


# -- parser and printer


_ATOM_NAMES = {
    "Jac": Jac,
    "BGm": BGm,
    "BGmC": BGmC,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(f"{message} (at position {self.pos})", self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def natural(self) -> int:
        self.skip_ws()
        if self.peek() == "-":
            raise self.error("expected a natural number")
        return self.integer()

    def parse(self) -> MotiveExpr:
        e = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return e

    def expr(self) -> MotiveExpr:
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        return sum_of(terms)

    def term(self) -> MotiveExpr:
        factors = [self.factor()]
        while self.peek() == "*":
            self.pos += 1
            factors.append(self.factor())
        return tensor_of(factors)

    def factor(self) -> MotiveExpr:
        self.skip_ws()
        save = self.pos
        word = self.name()
        if word == "Sym":
            self.expect("^")
            n = self.natural()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return sym(inner, n)
        if word == "SymStar":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return sym_star(inner)
        if word == "Z":
            self.expect("(")
            if self.name() != "C":
                raise self.error("expected 'C' in Z(C, L^i)")
            self.expect(",")
            if self.name() != "L":
                raise self.error("expected 'L' in Z(C, L^i)")
            self.expect("^")
            i = self.integer()
            self.expect(")")
            return zeta_twist(i)
        self.pos = save
        a = self.atom()
        if self.peek() == "{":
            self.pos += 1
            i = self.integer()
            self.expect("}")
            return twist(a, i)
        return a

    def atom(self) -> MotiveExpr:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return inner
        if ch.isdigit():
            n = self.natural()
            if n != 1:
                raise self.error("the only numeric atom is the unit 1")
            return Unit()
        save = self.pos
        word = self.name()
        if word == "M":
            self.expect("(")
            if self.name() != "C":
                raise self.error("expected M(C)")
            self.expect(")")
            return MC()
        if word == "Mbar":
            self.expect("(")
            if self.name() != "C":
                raise self.error("expected Mbar(C)")
            self.expect(")")
            return MbarC()
        if word == "M1":
            self.expect("(")
            if self.name() != "Jac":
                raise self.error("expected M1(Jac)")
            self.expect(")")
            return M1Jac()
        if word == "L":
            return Tate(1)
        if word == "P":
            self.expect("(")
            d = self.natural()
            self.expect(")")
            return ProjSpace(d)
        if word in _ATOM_NAMES:
            return _ATOM_NAMES[word]()
        self.pos = save
        raise self.error(f"expected an atom, found {word!r}" if word else "expected an atom")


def parse(text: str) -> MotiveExpr:
    """Parse an expression; ParseError carries the offending position."""
    return _Parser(text).parse()


def to_text(e: MotiveExpr) -> str:
    """Canonical printing; parse(to_text(e)) == e for constructor-built ASTs."""
    return _text(e, 0)


def _text(e: MotiveExpr, level: int) -> str:
    # level 0: sum context, 1: tensor context, 2: atom context
    if isinstance(e, Unit):
        return "1"
    if isinstance(e, Tate):
        return "L" if e.i == 1 else "1{%d}" % e.i
    if isinstance(e, MC):
        return "M(C)"
    if isinstance(e, MbarC):
        return "Mbar(C)"
    if isinstance(e, M1Jac):
        return "M1(Jac)"
    if isinstance(e, Jac):
        return "Jac"
    if isinstance(e, BGm):
        return "BGm"
    if isinstance(e, BGmC):
        return "BGmC"
    if isinstance(e, ProjSpace):
        return f"P({e.dim})"
    if isinstance(e, Sum):
        body = " + ".join(_text(t, 1) for t in e.terms)
        return f"({body})" if level >= 1 else body
    if isinstance(e, Tensor):
        body = " * ".join(_text(f, 2) for f in e.factors)
        return f"({body})" if level >= 2 else body
    if isinstance(e, Twist):
        inner = e.expr
        if isinstance(inner, (Sum, Tensor, Twist, Sym, SymStar, ZetaTwist)):
            return f"({_text(inner, 0)}){{{e.i}}}"
        return f"{_text(inner, 2)}{{{e.i}}}"
    if isinstance(e, Sym):
        return f"Sym^{e.n}({_text(e.expr, 0)})"
    if isinstance(e, SymStar):
        return f"SymStar({_text(e.expr, 0)})"
    if isinstance(e, ZetaTwist):
        return f"Z(C,L^{e.i})"
    raise ArityError(f"not a motive expression: {e!r}")
