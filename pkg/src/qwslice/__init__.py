"""Exact computational toolkit for quantized enveloping algebras:

root-system combinatorics, Carter decompositions and Cayley transforms,
adapted orderings of positive roots, Lusztig braid operators and PBW bases
with exact Laurent-polynomial coefficients, specialization at odd roots of
unity, and Whittaker-type quotients with their endomorphism algebras.
"""

__version__ = "0.1.0"
