"""Exact linear algebra over Fraction, RationalQ, and Cyclo scalars."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qwslice.coeffs import Cyclo, LaurentQ, RationalQ
from qwslice.linalg import (
    column_space_coords,
    identity_matrix,
    invert,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    row_echelon,
    solve,
)


def frac_matrix(n, m):
    entry = st.integers(-6, 6).map(Fraction)
    return st.lists(st.lists(entry, min_size=m, max_size=m), min_size=n, max_size=n)


class TestRankSolve:
    def test_rank_basic(self):
        a = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
        assert rank(a) == 1
        assert rank([[Fraction(0), Fraction(0)]]) == 0
        assert rank(identity_matrix(3, Fraction(1), Fraction(0))) == 3

    def test_solve_unique(self):
        a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
        b = [Fraction(5), Fraction(10)]
        x = solve(a, b)
        assert mat_vec(a, x) == b

    def test_solve_inconsistent(self):
        a = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
        assert solve(a, [Fraction(0), Fraction(1)]) is None

    def test_solve_underdetermined(self):
        a = [[Fraction(1), Fraction(1), Fraction(1)]]
        b = [Fraction(3)]
        x = solve(a, b)
        assert sum(x) == Fraction(3)

    def test_nullspace(self):
        a = [[Fraction(1), Fraction(2), Fraction(3)]]
        basis = nullspace(a)
        assert len(basis) == 2
        for v in basis:
            assert not any(mat_vec(a, v))

    def test_invert(self):
        a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
        inv = invert(a)
        assert mat_mul(a, inv) == identity_matrix(2, Fraction(1), Fraction(0))
        with pytest.raises(ValueError):
            invert([[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]])

    @given(frac_matrix(3, 3))
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity(self, a):
        assert rank(a) + len(nullspace(a)) == 3

    @given(frac_matrix(3, 4), st.lists(st.integers(-4, 4).map(Fraction), min_size=4, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_solve_verifies(self, a, x0):
        b = mat_vec(a, x0)
        x = solve(a, b)
        assert x is not None
        assert mat_vec(a, x) == b


class TestOverRationalQ:
    def test_rank_with_parameter(self):
        q = LaurentQ.q_power(1)
        one = RationalQ(1)
        a = [[RationalQ(q), one], [RationalQ(q * q), RationalQ(q)]]
        assert rank(a) == 1
        a[1][1] = RationalQ(q) + one
        assert rank(a) == 2

    def test_invert_parametric(self):
        q = RationalQ(LaurentQ.q_power(1))
        one = RationalQ(1)
        zero = RationalQ(0)
        a = [[q, one], [one, q]]
        inv = invert(a)
        assert mat_mul(a, inv) == identity_matrix(2, one, zero)


class TestOverCyclo:
    def test_solve_cyclotomic(self):
        m = 5
        e = Cyclo.root(m)
        one = Cyclo.one(m)
        a = [[e, one], [one, e]]
        b = [e * e, e + one]
        x = solve(a, b)
        assert x is not None
        assert mat_vec(a, x) == b

    def test_nullspace_cyclotomic(self):
        m = 3
        e = Cyclo.root(m)
        one = Cyclo.one(m)
        # rows are parallel: (1, e), (e^2, 1) = e^2 * (1, e)
        a = [[one, e], [e * e, one]]
        ns = nullspace(a)
        assert len(ns) == 1
        assert not any(mat_vec(a, ns[0]))


class TestColumnSpace:
    def test_in_span(self):
        cols = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]]
        coords = column_space_coords(cols, [Fraction(3), Fraction(2)])
        assert coords is not None
        got = [sum(c * v[i] for c, v in zip(coords, cols)) for i in range(2)]
        assert got == [Fraction(3), Fraction(2)]

    def test_not_in_span(self):
        cols = [[Fraction(1), Fraction(0), Fraction(0)]]
        assert column_space_coords(cols, [Fraction(0), Fraction(1), Fraction(0)]) is None

    def test_empty_basis(self):
        assert column_space_coords([], [Fraction(0)]) == []
        assert column_space_coords([], [Fraction(1)]) is None


class TestEchelon:
    def test_pivots_normalized(self):
        a = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(3)]]
        ech, pivots, _ = row_echelon(a)
        assert pivots == [0, 1]
        assert ech[0][0] == Fraction(1)
        assert ech[1][1] == Fraction(1)
        assert ech[0][1] == Fraction(0)
