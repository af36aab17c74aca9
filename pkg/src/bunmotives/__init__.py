"""Exact-arithmetic calculator and verifier for motive formulas of bundle
moduli stacks on smooth projective curves.

Everything is computed over the rationals; the two realization functors
(Poincare series, finite-field point counts) are checked against independent
brute-force oracles.
"""

__version__ = "0.1.0"
