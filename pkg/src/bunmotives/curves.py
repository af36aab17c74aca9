"""Curve arithmetic data: point counts, Weil numerators, zeta functions.

A curve enters the calculator either through its Weil numerator P (the degree
2g numerator of the zeta function Z(T) = P(T) / ((1-T)(1-qT)), with P(0) = 1
and the functional equation P(T) = q^g T^(2g) P(1/(qT))), or through an
explicit plane model that is enumerated over small field extensions:

  * kind "p1"                 -- the projective line, p_r = q^r + 1;
  * kind "hyperelliptic-odd"  -- y^2 + h(x) y = f(x), deg f = 2g+1 odd,
                                 one point at infinity;
  * kind "hyperelliptic-even" -- deg f = 2g+2 even, 0/1/2 points at infinity
                                 depending on the splitting of the leading
                                 quadratic v^2 + h_(g+1) v = f_(2g+2).

Enumeration refuses fields beyond 10^6 elements.  Counting p_1..p_g pins the
numerator: Newton's identities turn counts into power sums of the inverse
roots, the functional equation completes the upper half of the coefficients,
and any extra supplied counts are cross-checked.  Sign convention for g = 1:
P(T) = 1 - aT + qT^2 with a = q + 1 - p_1, so P(1) = #Jac(F_q).

For Adams characters over extension fields the numerator is base-changed:
P_m has inverse roots alpha_i^m, computed from power sums s_(mj).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence, Union

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import (
    CurveFileError,
    DomainError,
    InconsistentCounts,
    NonIntegralCount,
    PoleAtPoint,
    SingularModel,
    TooLarge,
)
from .gf import FiniteField, pp_derivative, pp_gcd, pp_mul, pp_trim, prime_power
from .series import Poly, RatFunc, Scalar, as_rat

ENUMERATION_GUARD = 10**6

MODEL_KINDS = ("p1", "hyperelliptic-odd", "hyperelliptic-even")


@dataclass(frozen=True)
class ExplicitModel:
    kind: str
    h: tuple[int, ...] = ()
    f: tuple[int, ...] = ()

    @staticmethod
    def p1() -> ExplicitModel:
        return ExplicitModel("p1")

    @staticmethod
    def hyperelliptic(h: Sequence[int], f: Sequence[int]) -> ExplicitModel:
        if not f or f[-1] == 0:
            raise ValueError("f must have a nonzero leading coefficient")
        kind = "hyperelliptic-odd" if (len(f) - 1) % 2 == 1 else "hyperelliptic-even"
        return ExplicitModel(kind, tuple(h), tuple(f))

    @property
    def genus(self) -> int:
        if self.kind == "p1":
            return 0
        deg_f = len(self.f) - 1
        return (deg_f - 1) // 2 if self.kind == "hyperelliptic-odd" else deg_f // 2 - 1


def _validate_model(model: ExplicitModel, q: int) -> None:
    """Degree sanity plus a discriminant-style smoothness check."""
    if model.kind not in MODEL_KINDS:
        raise SingularModel(f"unknown model kind {model.kind!r}")
    if model.kind == "p1":
        if model.h or model.f:
            raise ValueError("the p1 model takes no h/f data")
        return
    p, _ = prime_power(q)
    f = [c % p for c in model.f]
    h = [c % p for c in model.h]
    deg_f = len(model.f) - 1
    if model.f == () or model.f[-1] % p == 0:
        raise SingularModel("leading coefficient of f vanishes")
    g = model.genus
    if model.kind == "hyperelliptic-odd":
        if deg_f % 2 != 1 or deg_f < 3:
            raise SingularModel(f"odd model needs odd deg f >= 3, got {deg_f}")
        if len(model.h) - 1 > g:
            raise SingularModel("odd model needs deg h <= g")
    else:
        if deg_f % 2 != 0 or deg_f < 4:
            raise SingularModel(f"even model needs even deg f >= 4, got {deg_f}")
        if len(model.h) - 1 > g + 1:
            raise SingularModel("even model needs deg h <= g+1")
    if p == 2:
        # char 2: a singular affine point has h(x) = 0, y^2 = f(x) and
        # h'(x)^2 f(x) = f'(x)^2
        if not any(h):
            raise SingularModel("char-2 model needs h != 0")
        hp = pp_derivative(h, p)
        fp = pp_derivative(f, p)
        lhs = pp_mul(pp_mul(hp, hp, p), f, p)
        rhs = pp_mul(fp, fp, p)
        width = max(len(lhs), len(rhs))
        lhs += [0] * (width - len(lhs))
        rhs += [0] * (width - len(rhs))
        crit = pp_trim([(a + b) % p for a, b in zip(lhs, rhs)])
        if not crit:
            # h'^2 f + f'^2 = 0 identically: every root of h is singular
            if len(pp_trim(list(h))) > 1:
                raise SingularModel("char-2 model singular along h = 0")
        elif len(pp_gcd(h, crit, p)) != 1:
            raise SingularModel("char-2 affine singularity: gcd(h, h'^2 f + f'^2) != 1")
        if model.kind == "hyperelliptic-even":
            h_top = h[g + 1] if len(h) > g + 1 else 0
            h_sub = h[g] if len(h) > g else 0
            f_sub = f[deg_f - 1] if deg_f - 1 < len(f) else 0
            if h_top == 0 and (h_sub * h_sub * f[deg_f] - f_sub * f_sub) % p == 0:
                raise SingularModel("char-2 even model singular at infinity")
        return
    # odd characteristic: complete the square; y^2 = G(x) with G = h^2 + 4f
    G = [0] * max(len(f), 2 * len(h) - 1 if h else 0)
    for i, c in enumerate(f):
        G[i] = (G[i] + 4 * c) % p
    for i, a in enumerate(h):
        for j, b in enumerate(h):
            G[i + j] = (G[i + j] + a * b) % p
    G = pp_trim(G)
    if len(G) - 1 != deg_f:
        raise SingularModel("h^2 + 4f degenerates in this characteristic")
    if len(pp_gcd(G, pp_derivative(G, p), p)) != 1:
        raise SingularModel("h^2 + 4f is not squarefree")


def count_points(model: ExplicitModel, q: int, r: int) -> int:
    """#C(F_{q^r}) by brute-force enumeration of the smooth model."""
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    if q**r > ENUMERATION_GUARD:
        raise TooLarge(f"{q}^{r} exceeds the enumeration guard {ENUMERATION_GUARD}")
    _validate_model(model, q)
    if model.kind == "p1":
        return q**r + 1
    p, e = prime_power(q)
    field = FiniteField(p, e * r)
    squares = field.squares() if p != 2 else None
    affine = 0
    for x in field.elements():
        c = field.eval_poly(model.h, x)
        d = field.eval_poly(model.f, x)
        affine += field.quadratic_solution_count(c, d, squares)
    if model.kind == "hyperelliptic-odd":
        return affine + 1
    g = model.genus
    c_inf = field.from_int(model.h[g + 1] if len(model.h) > g + 1 else 0)
    d_inf = field.from_int(model.f[-1])
    return affine + field.quadratic_solution_count(c_inf, d_inf, squares)


# -- Weil numerators and Newton identities


def power_sums_from_weil(P: Poly, upto: int) -> list[Fraction]:
    """s_r = sum of r-th powers of the inverse roots of P, for r = 1..upto."""
    s: list[Fraction] = []
    for r in range(1, upto + 1):
        acc = -r * P[r]
        for k in range(1, r):
            acc -= P[k] * s[r - k - 1]
        s.append(acc)
    return s


def weil_from_counts(counts: Sequence[int], genus: int, q: int) -> Poly:
    """The unique admissible numerator matching p_1..p_g; extra counts checked.

    Raises InconsistentCounts when no integer numerator fits or when counts
    beyond r = g contradict the functional-equation completion.
    """
    if len(counts) < genus:
        raise ValueError(f"need counts to depth {genus}, got {len(counts)}")
    s = [Fraction(q**r + 1 - counts[r - 1]) for r in range(1, len(counts) + 1)]
    c: list[Fraction] = [Fraction(1)]
    for r in range(1, genus + 1):
        acc = s[r - 1]
        for k in range(1, r):
            acc += c[k] * s[r - k - 1]
        cr = -acc / r
        if cr.denominator != 1:
            raise InconsistentCounts(f"coefficient c_{r} = {cr} is not an integer")
        c.append(cr)
    # functional equation: c_(2g-i) = q^(g-i) c_i
    full = c + [Fraction(0)] * genus
    for i in range(genus):
        full[2 * genus - i] = q ** (genus - i) * c[i]
    P = Poly.of(full)
    expect = power_sums_from_weil(P, len(counts))
    for r in range(genus + 1, len(counts) + 1):
        if expect[r - 1] != s[r - 1]:
            raise InconsistentCounts(
                f"count p_{r} = {counts[r - 1]} contradicts the completed numerator"
            )
    return P


def validate_weil(P: Poly, genus: int, q: int) -> None:
    if P[0] != 1:
        raise InconsistentCounts("numerator must have constant term 1")
    if P.degree != 2 * genus:
        raise InconsistentCounts(f"numerator degree {P.degree} != 2*genus = {2 * genus}")
    if any(c.denominator != 1 for c in P.coeffs):
        raise InconsistentCounts("numerator must have integer coefficients")
    for i in range(2 * genus + 1):
        if P[2 * genus - i] != q ** (genus - i) * P[i]:
            raise InconsistentCounts("functional equation fails")


def base_change_numerator(P: Poly, m: int) -> Poly:
    """Numerator over F_{q^m}: inverse roots are the m-th powers."""
    deg = P.degree if P.degree >= 0 else 0
    t = power_sums_from_weil(P, m * deg) if deg else []
    b: list[Fraction] = [Fraction(1)]
    for j in range(1, deg + 1):
        acc = Fraction(0)
        for k in range(j):
            acc += b[k] * t[m * (j - k) - 1]
        b.append(-acc / j)
    return Poly.of(b)


@dataclass(frozen=True)
class CurveSpec:
    """A smooth projective curve, described by numerator or explicit model."""

    genus: int
    q: int
    weil: Poly | None = None
    model: ExplicitModel | None = None

    def __post_init__(self) -> None:
        if (self.weil is None) == (self.model is None):
            raise ValueError("exactly one of weil/model must be given")
        prime_power(self.q)  # raises on a non-prime-power
        if self.genus < 0:
            raise ValueError("genus must be >= 0")
        if self.weil is not None:
            validate_weil(self.weil, self.genus, self.q)
        else:
            _validate_model(self.model, self.q)
            if self.model.genus != self.genus:
                raise InconsistentCounts(
                    f"model has genus {self.model.genus}, spec says {self.genus}"
                )

    @staticmethod
    def from_weil(genus: int, q: int, coeffs: Sequence[Scalar]) -> CurveSpec:
        return CurveSpec(genus, q, weil=Poly.of(coeffs))

    @staticmethod
    def p1(q: int) -> CurveSpec:
        return CurveSpec(0, q, model=ExplicitModel.p1())

    @staticmethod
    def hyperelliptic(q: int, h: Sequence[int], f: Sequence[int]) -> CurveSpec:
        model = ExplicitModel.hyperelliptic(h, f)
        return CurveSpec(model.genus, q, model=model)

    @cached_property
    def numerator(self) -> Poly:
        """Weil numerator; for explicit models, from enumerating r <= genus."""
        if self.weil is not None:
            return self.weil
        counts = [count_points(self.model, self.q, r) for r in range(1, self.genus + 1)]
        return weil_from_counts(counts, self.genus, self.q)

    @cached_property
    def has_rational_point(self) -> bool:
        # recorded for information; never enforced
        return self.point_count(1) > 0

    def point_count(self, r: int) -> int:
        """p_r = #C(F_{q^r}), from the numerator (no enumeration guard)."""
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        s = power_sums_from_weil(self.numerator, r)
        val = Fraction(self.q**r + 1) - s[r - 1]
        if val.denominator != 1:
            raise InconsistentCounts(f"p_{r} = {val} is not an integer")
        return int(val)

    def base_change(self, m: int) -> CurveSpec:
        """The same curve over F_{q^m}."""
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        if m == 1:
            return self
        return CurveSpec(
            self.genus, self.q**m, weil=base_change_numerator(self.numerator, m)
        )

    def jac_count(self, m: int = 1) -> int:
        """#Jac(F_{q^m}) = P_m(1)."""
        val = self.base_change(m).numerator.eval(1)
        if val.denominator != 1 or val <= 0:
            raise InconsistentCounts(f"Jacobian count {val} is not a positive integer")
        return int(val)

    def zeta_ratfunc(self) -> RatFunc:
        den = Poly.of([1, -1]) * Poly.of([1, -self.q])
        return RatFunc.make(self.numerator, den)

    def sym_counts(self, j_max: int) -> list[int]:
        """#Sym^j C(F_q) for j = 0..j_max, from the zeta expansion."""
        coeffs = self.zeta_ratfunc().expand(j_max).coeffs
        out = []
        for j, cval in enumerate(coeffs):
            if cval.denominator != 1 or cval < 0:
                raise NonIntegralCount(f"Sym^{j} count {cval} is not a natural number")
            out.append(int(cval))
        return out

    def zeta_special_value(self, i: int) -> Fraction:
        """Z_C(q^(-i)) for i >= 2 (i = 0, 1 are the poles)."""
        if i in (0, 1):
            raise PoleAtPoint(f"zeta has a pole at q^(-{i})")
        if i < 0:
            raise DomainError("special values are taken at i >= 2")
        return self.zeta_ratfunc().eval_at(Fraction(1, self.q**i))

    def zeta_partial_sum(self, i: int, j_max: int) -> tuple[Fraction, Fraction]:
        """Partial sum of sum_j #Sym^j C * q^(-ij) with a certified tail bound.

        Positivity majorant: #Sym^j C <= Z(t0)/t0^j for any 0 < t0 < 1/q;
        with t0 = 2/(3q) the term ratio is at most (3/2) q^(1-i) < 1.
        """
        if i < 2:
            raise DomainError("partial sums converge only for i >= 2")
        cs = self.sym_counts(j_max)
        x = Fraction(1, self.q**i)
        value = sum((c * x**j for j, c in enumerate(cs)), Fraction(0))
        t0 = Fraction(2, 3 * self.q)
        z0 = self.zeta_ratfunc().eval_at(t0)
        rho = x / t0
        bound = z0 * rho ** (j_max + 1) / (1 - rho)
        return value, bound


# -- curve-spec files


def parse_curve_text(text: str) -> CurveSpec:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:  # type: ignore[attr-defined]
        raise CurveFileError(f"bad curve file: {exc}") from exc
    return _curve_from_mapping(data)


def load_curve(path: Union[str, Path]) -> CurveSpec:
    return parse_curve_text(Path(path).read_text())


def _require_int(value: object, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise CurveFileError(f"{where} must be an integer, got {value!r}")
    return value


def _curve_from_mapping(data: dict) -> CurveSpec:
    allowed = {"genus", "q", "weil", "model"}
    unknown = set(data) - allowed
    if unknown:
        raise CurveFileError(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("genus", "q"):
        if key not in data:
            raise CurveFileError(f"missing field {key!r}")
    genus = _require_int(data["genus"], "genus")
    q = _require_int(data["q"], "q")
    if ("weil" in data) == ("model" in data):
        raise CurveFileError("exactly one of 'weil' or 'model' is required")
    try:
        if "weil" in data:
            coeffs = data["weil"]
            if not isinstance(coeffs, list):
                raise CurveFileError("weil must be a list of integers")
            return CurveSpec.from_weil(
                genus, q, [_require_int(c, "weil coefficient") for c in coeffs]
            )
        model = data["model"]
        if not isinstance(model, dict):
            raise CurveFileError("model must be a table")
        munknown = set(model) - {"kind", "h", "f"}
        if munknown:
            raise CurveFileError(f"unknown model field(s): {', '.join(sorted(munknown))}")
        kind = model.get("kind")
        if kind not in MODEL_KINDS:
            raise CurveFileError(f"model kind must be one of {MODEL_KINDS}, got {kind!r}")
        h = [_require_int(c, "h coefficient") for c in model.get("h", [])]
        f = [_require_int(c, "f coefficient") for c in model.get("f", [])]
        spec = CurveSpec(genus, q, model=ExplicitModel(kind, tuple(h), tuple(f)))
        return spec
    except ValueError as exc:
        raise CurveFileError(str(exc)) from exc
