"""Small finite fields GF(p^k), built as F_p[x] modulo a fixed irreducible.

Elements are coefficient tuples of length k (ints in [0, p), lowest degree
first), so they hash and compare cheaply.  Everything here is deliberately
naive: fields in this package stay below the enumeration guard of 10^6
elements, and the point-count oracle wants code that is easy to audit, not
fast.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Sequence

Element = tuple[int, ...]


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^e with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, m = 0, q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# -- polynomials over F_p as int lists (lowest degree first, no trailing zeros)


def pp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def pp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return pp_trim(out)


def pp_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        a = pp_trim(a)
        if len(a) < len(m):
            break
        f = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for j, c in enumerate(m):
            a[shift + j] = (a[shift + j] - f * c) % p
        a = pp_trim(a)
    return a


def pp_powmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    out, base = [1], pp_mod(a, m, p)
    while e:
        if e & 1:
            out = pp_mod(pp_mul(out, base, p), m, p)
        base = pp_mod(pp_mul(base, base, p), m, p)
        e >>= 1
    return out


def pp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = pp_trim(list(a)), pp_trim(list(b))
    while b:
        a, b = b, pp_mod(a, b, p)
    if a and a[-1] != 1:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def pp_derivative(a: Sequence[int], p: int) -> list[int]:
    return pp_trim([k * c % p for k, c in enumerate(a)][1:])


def _is_irreducible(m: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial of degree k >= 1 over F_p."""
    k = len(m) - 1
    x = [0, 1]
    # x^(p^k) == x mod m  (m has degree >= 2 here, so x is already reduced)
    if pp_powmod(x, p**k, m, p) != x:
        return False
    # gcd(x^(p^(k/t)) - x, m) = 1 for every prime t | k
    t = 2
    kk = k
    primes = set()
    while t * t <= kk:
        if kk % t == 0:
            primes.add(t)
            while kk % t == 0:
                kk //= t
        t += 1
    if kk > 1:
        primes.add(kk)
    for t in primes:
        w = pp_powmod(x, p ** (k // t), m, p)
        diff = list(w) + [0] * (2 - len(w))
        diff[1] = (diff[1] - 1) % p
        if len(pp_gcd(diff, m, p)) != 1:
            return False
    return True


def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Deterministic search: first monic irreducible of degree k in counting order."""
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        low = []
        c = code
        for _ in range(k):
            low.append(c % p)
            c //= p
        m = low + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FiniteField:
    """GF(p^k) with tuple-encoded elements."""

    p: int
    k: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.modulus:
            object.__setattr__(self, "modulus", _find_irreducible(self.p, self.k))

    @property
    def size(self) -> int:
        return self.p**self.k

    def zero(self) -> Element:
        return (0,) * self.k

    def one(self) -> Element:
        return (1,) + (0,) * (self.k - 1)

    def from_int(self, n: int) -> Element:
        return (n % self.p,) + (0,) * (self.k - 1)

    def elements(self) -> Iterator[Element]:
        for tup in product(range(self.p), repeat=self.k):
            yield tup

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a: Element, b: Element) -> Element:
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % self.p for x in a)

    def mul(self, a: Element, b: Element) -> Element:
        raw = pp_mul(a, b, self.p)
        red = pp_mod(raw, list(self.modulus), self.p)
        return tuple(red) + (0,) * (self.k - len(red))

    def pow(self, a: Element, e: int) -> Element:
        out, base = self.one(), a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a: Element) -> Element:
        if a == self.zero():
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self.pow(a, self.size - 2)

    def eval_poly(self, coeffs: Sequence[int], x: Element) -> Element:
        """Evaluate an integer-coefficient polynomial (reduced into the field)."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), self.from_int(c))
        return acc

    def trace_to_f2(self, a: Element) -> int:
        """Absolute trace GF(2^k) -> F_2 (only for p = 2)."""
        assert self.p == 2
        acc, t = a, a
        for _ in range(self.k - 1):
            t = self.mul(t, t)
            acc = self.add(acc, t)
        assert acc in (self.zero(), self.one())
        return acc[0]

    def squares(self) -> frozenset[Element]:
        return frozenset(self.mul(a, a) for a in self.elements())

    def quadratic_solution_count(self, c: Element, d: Element, squares: frozenset[Element] | None = None) -> int:
        """Number of y in the field with y^2 + c*y = d."""
        if self.p == 2:
            # y -> y^2 + cy is additive; kernel {0, c}
            if c == self.zero():
                return 1  # Frobenius is bijective
            u = self.mul(d, self.pow(self.inv(c), 2))
            return 2 if self.trace_to_f2(u) == 0 else 0
        # odd characteristic: complete the square
        if squares is None:
            squares = self.squares()
        inv4 = self.inv(self.from_int(4))
        e = self.add(d, self.mul(self.mul(c, c), inv4))
        if e == self.zero():
            return 1
        return 2 if e in squares else 0
