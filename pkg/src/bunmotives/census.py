"""Independent counting oracles.

Two brute-force routes that the motive engine is verified against:

  * ClosedPointCensus / divisor_count -- recover the number a_r of closed
    points of each degree r from point counts over field towers (Moebius
    inversion), then count effective divisors of degree j as multisets of
    closed points by pure-integer convolution.  No series inversion, no
    lambda-operations.

  * split_bundle_count_p1 -- the groupoid count of rank-n degree-d bundles
    on the projective line over F_q: every bundle splits as a sum of line
    bundles O(a_1) >= ... >= O(a_n), and each splitting type contributes
    1/#Aut.  Partial sums are monotone increasing and come with a certified
    geometric tail bound, so the result is a containment interval.

This module must stay independent of the Adams-operation engine and of the
moduli-formula pipelines; it may only use integer/rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import InconsistentCensus, InsufficientCensus


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    out, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


@dataclass(frozen=True)
class ClosedPointCensus:
    """Number of closed points of each degree, a_1..a_R."""

    by_degree: tuple[int, ...]

    @staticmethod
    def from_point_counts(counts: Sequence[int]) -> ClosedPointCensus:
        """Invert p_r = sum_{s | r} s * a_s.

        Raises InconsistentCensus unless every a_r is a non-negative integer.
        """
        out: list[int] = []
        for r in range(1, len(counts) + 1):
            total = sum(mobius(r // s) * counts[s - 1] for s in range(1, r + 1) if r % s == 0)
            if total % r != 0 or total < 0:
                raise InconsistentCensus(f"degree {r}: Moebius inversion gives {total}/{r}")
            out.append(total // r)
        return ClosedPointCensus(tuple(out))

    @property
    def depth(self) -> int:
        return len(self.by_degree)

    def __getitem__(self, r: int) -> int:
        if not 1 <= r <= self.depth:
            raise InsufficientCensus(f"census known through degree {self.depth}, asked for {r}")
        return self.by_degree[r - 1]


def divisor_count(census: ClosedPointCensus, j: int) -> int:
    """Number of effective divisors of degree j (multisets of closed points).

    A multiset with k points of degree r among a_r available ones can be
    chosen in C(a_r + k - 1, k) ways; convolve over degrees.
    """
    if j < 0:
        raise ValueError("divisor degree must be >= 0")
    if j > census.depth:
        raise InsufficientCensus(f"census known through degree {census.depth}, asked for {j}")
    ways = [0] * (j + 1)
    ways[0] = 1
    for r in range(1, j + 1):
        a = census[r]
        if a == 0:
            continue
        new = [0] * (j + 1)
        for m in range(j + 1):
            if ways[m] == 0:
                continue
            k = 0
            while m + k * r <= j:
                new[m + k * r] += ways[m] * comb(a + k - 1, k)
                k += 1
        ways = new
    return ways[j]


# -- splitting-type oracle on the projective line


def gl_order(m: int, q: int) -> int:
    out = 1
    for t in range(m):
        out *= q**m - q**t
    return out


def aut_order(splitting_type: Sequence[int], q: int) -> int:
    """#Aut of O(a_1) + ... + O(a_n), a_1 >= ... >= a_n.

    Block-diagonal part: GL_m over the repeated degrees.  Unipotent part:
    Hom(O(a_j), O(a_i)) for a_i > a_j has dimension a_i - a_j + 1.
    """
    a = list(splitting_type)
    if any(a[i] < a[i + 1] for i in range(len(a) - 1)):
        raise ValueError("splitting type must be non-increasing")
    u = sum(a[i] - a[j] + 1 for i in range(len(a)) for j in range(i + 1, len(a)) if a[i] > a[j])
    out = q**u
    run = 1
    for i in range(1, len(a) + 1):
        if i < len(a) and a[i] == a[i - 1]:
            run += 1
        else:
            out *= gl_order(run, q)
            run = 1
    return out


def splitting_types_with_spread(n: int, d: int, s: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing integer n-tuples with sum d and a_1 - a_n = s."""
    if n == 1:
        if s == 0:
            yield (d,)
        return
    if n == 2:
        if (d + s) % 2 == 0:
            yield ((d + s) // 2, (d - s) // 2)
        return
    if n == 3:
        for t in range(s + 1):  # t = a_2 - a_3
            rem = d - s - t
            if rem % 3 == 0:
                a3 = rem // 3
                yield (a3 + s, a3 + t, a3)
        return
    raise ValueError("splitting-type oracle implemented for n <= 3")


def _tail_bound(n: int, d: int, q: int, s_done: int) -> Fraction:
    """Certified upper bound for the mass of all types with spread > s_done.

    n = 2: a spread-s type (s > 0, s = d mod 2) has #Aut exactly
           q^(s+1) (q-1)^2, so the tail is an exact geometric sum.
    n = 3: every spread-s type has #Aut >= q^(2s+2) (q-1)^3 and there are
           at most s+1 of them; sum_{k >= K} k x^k = x^K (K - (K-1)x)/(1-x)^2.
    """
    if n == 1:
        return Fraction(0)
    if n == 2:
        s0 = s_done + 1
        if (d + s0) % 2 != 0:
            s0 += 1
        return Fraction(1, q ** (s0 + 1) * (q - 1) ** 2) / (1 - Fraction(1, q * q))
    x = Fraction(1, q * q)
    k0 = s_done + 2  # k = s + 1 over spreads s > s_done
    weighted = x**k0 * (k0 - (k0 - 1) * x) / (1 - x) ** 2
    return weighted * Fraction(1, (q - 1) ** 3)


def split_bundle_count_p1(n: int, d: int, q: int, tail_eps: Fraction) -> tuple[Fraction, Fraction]:
    """Interval [lo, hi] certified to contain sum over splitting types of 1/#Aut."""
    if not 1 <= n <= 3:
        raise ValueError("splitting-type oracle implemented for n <= 3")
    if tail_eps <= 0:
        raise ValueError("tail_eps must be positive")
    total = Fraction(0)
    s = 0
    while True:
        for atype in splitting_types_with_spread(n, d, s):
            total += Fraction(1, aut_order(atype, q))
        bound = _tail_bound(n, d, q, s)
        if bound < tail_eps:
            return total, total + bound
        s += 1
