"""Root-system combinatorics: generation, the form, Weyl elements, w0,
normal orderings, and elementary transpositions."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from qwslice.cartan import CartanDatum, CartanError, cartan_datum, datum_from_matrix, validate_datum
from qwslice.rootsys import (
    NormalOrdering,
    all_normal_orderings,
    elementary_transpositions,
    is_normal_ordering,
    longest_element,
    ordering_from_word,
    parse_word,
    root_system,
    word_from_ordering,
)


class TestCartanData:
    def test_series_shapes(self):
        a2 = cartan_datum("A2")
        assert a2.a == ((2, -1), (-1, 2))
        assert a2.d == (1, 1)
        b2 = cartan_datum("B2")
        assert b2.a == ((2, -1), (-2, 2))
        assert b2.d == (2, 1)
        c2 = cartan_datum("C2")
        assert c2.a == ((2, -2), (-1, 2))
        assert c2.d == (1, 2)
        g2 = cartan_datum("G2")
        assert g2.a == ((2, -3), (-1, 2))
        assert g2.d == (1, 3)
        f4 = cartan_datum("F4")
        assert f4.d == (2, 2, 1, 1)
        assert f4.a[1][2] == -1 and f4.a[2][1] == -2

    def test_b_symmetric(self):
        for name in ("A3", "B3", "C3", "D4", "F4", "G2", "E6"):
            datum = cartan_datum(name)
            b = datum.b
            assert all(b[i][j] == b[j][i] for i in range(datum.rank) for j in range(datum.rank))

    def test_invalid_rejected(self):
        with pytest.raises(CartanError):
            validate_datum(CartanDatum("X", 2, ((2, -1), (0, 2)), (1, 1)))  # asymmetric zeros
        with pytest.raises(CartanError):
            validate_datum(CartanDatum("X", 2, ((1, -1), (-1, 2)), (1, 1)))  # diagonal
        with pytest.raises(CartanError):
            validate_datum(CartanDatum("X", 2, ((2, 1), (1, 2)), (1, 1)))  # positive off-diag
        with pytest.raises(CartanError):
            cartan_datum("H3")

    def test_datum_from_matrix_recovers_d(self):
        for name in ("A2", "B2", "C3", "G2", "F4"):
            ref = cartan_datum(name)
            got = datum_from_matrix(ref.a)
            assert got.d == ref.d


class TestRootGeneration:
    def test_counts(self):
        for name, count in [("A1", 1), ("A2", 3), ("A3", 6), ("B2", 4),
                            ("B3", 9), ("C3", 9), ("G2", 6), ("D4", 12), ("F4", 24)]:
            assert root_system(name).num_positive == count

    def test_a2_roots(self):
        rs = root_system("A2")
        assert rs.positive_roots == ((1, 0), (0, 1), (1, 1))

    def test_g2_roots(self):
        rs = root_system("G2")
        expected = {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}
        assert set(rs.positive_roots) == expected

    def test_sign_coherence(self):
        for name in ("B3", "G2", "F4"):
            rs = root_system(name)
            for r in rs.positive_roots:
                assert all(c >= 0 for c in r)


class TestForm:
    def test_simple_pairings(self):
        a2 = root_system("A2")
        assert a2.pairing((1, 0), (1, 0)) == 2
        assert a2.pairing((1, 0), (0, 1)) == -1
        b2 = root_system("B2")
        assert b2.pairing((1, 0), (1, 0)) == 4  # long
        assert b2.pairing((0, 1), (0, 1)) == 2  # short
        assert b2.pairing((1, 0), (0, 1)) == -2

    def test_d_root(self):
        b2 = root_system("B2")
        assert b2.d_root((1, 0)) == 2
        assert b2.d_root((0, 1)) == 1
        assert b2.d_root((1, 1)) == 1  # short root
        assert b2.d_root((1, 2)) == 2  # long root

    def test_form_invariance_random(self):
        rng = random.Random(7)
        for name in ("A2", "B2", "G2", "A3"):
            rs = root_system(name)
            elements = rs.weyl_elements()
            roots = rs.positive_roots
            for _ in range(250):
                w = rng.choice(elements)
                x = rng.choice(roots)
                y = rng.choice(roots)
                assert rs.pairing(w.act(x), w.act(y)) == rs.pairing(x, y)

    def test_weyl_maps_roots_to_roots(self):
        for name in ("B2", "G2"):
            rs = root_system(name)
            for w in rs.weyl_elements():
                for r in rs.positive_roots:
                    assert rs.is_root(w.act(r))


class TestWeylGroup:
    def test_orders(self):
        for name, order in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48)]:
            assert len(root_system(name).weyl_elements()) == order

    def test_simple_reflection_action(self):
        rs = root_system("A2")
        s1 = rs.simple_reflection(1)
        assert s1.act((1, 0)) == (-1, 0)
        assert s1.act((0, 1)) == (1, 1)

    def test_reflection_by_root(self):
        rs = root_system("B2")
        theta = (1, 1)
        s = rs.reflection(theta)
        assert s.act(theta) == (-1, -1)
        # s_beta = w s_i w^{-1} whenever beta = w(alpha_i)
        w = rs.word_element((2,))
        assert rs.reflection(w.act((1, 0))).matrix == (w * rs.simple_reflection(1) * rs.inverse(w)).matrix

    def test_inverse_and_length(self):
        rs = root_system("B2")
        for w in rs.weyl_elements():
            inv = rs.inverse(w)
            assert (w * inv).is_identity()
            assert rs.length(w) == rs.length(inv)
            assert rs.length(w) == len(w.word)

    def test_conjugacy_classes(self):
        # S3 has 3 classes; W(B2) has 5
        assert len(root_system("A2").conjugacy_classes()) == 3
        assert len(root_system("B2").conjugacy_classes()) == 5
        classes = root_system("B2").conjugacy_classes()
        assert sum(len(c) for c in classes) == 8

    def test_parse_word(self):
        assert parse_word("s1 s2 s1") == (1, 2, 1)
        assert parse_word("1,2,1") == (1, 2, 1)
        assert parse_word("") == ()
        assert parse_word("e") == ()
        with pytest.raises(ValueError):
            parse_word("s0")


class TestLongestElement:
    def test_lengths(self):
        for name, D in [("A1", 1), ("A2", 3), ("B2", 4), ("G2", 6), ("A3", 6)]:
            rs = root_system(name)
            w0 = longest_element(rs)
            assert len(w0.word) == D
            assert rs.length(w0) == D
            for r in rs.positive_roots:
                assert not rs.is_positive_root(w0.act(r))

    def test_a2_word(self):
        rs = root_system("A2")
        assert longest_element(rs).word == (1, 2, 1)


class TestNormalOrderings:
    def test_a2_from_word(self):
        rs = root_system("A2")
        o = ordering_from_word(rs, (1, 2, 1))
        assert o.roots == ((1, 0), (1, 1), (0, 1))
        o2 = ordering_from_word(rs, (2, 1, 2))
        assert o2.roots == ((0, 1), (1, 1), (1, 0))

    def test_a3_word(self):
        rs = root_system("A3")
        o = ordering_from_word(rs, (1, 2, 3, 1, 2, 1))
        assert o.roots == ((1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 0), (0, 1, 1), (0, 0, 1))

    def test_b2_word(self):
        rs = root_system("B2")
        o = ordering_from_word(rs, (1, 2, 1, 2))
        assert o.roots == ((1, 0), (1, 1), (1, 2), (0, 1))

    def test_non_reduced_rejected(self):
        rs = root_system("A2")
        with pytest.raises(ValueError, match="not reduced"):
            ordering_from_word(rs, (1, 1, 2))
        with pytest.raises(ValueError):
            ordering_from_word(rs, (1, 2))

    def test_normality(self):
        for name in ("A2", "B2", "G2", "A3"):
            rs = root_system(name)
            o = ordering_from_word(rs, longest_element(rs).word)
            assert is_normal_ordering(rs, o.roots)

    def test_word_roundtrip(self):
        for name in ("A2", "B2", "G2", "A3"):
            rs = root_system(name)
            for o in all_normal_orderings(rs):
                word = word_from_ordering(rs, o.roots)
                assert ordering_from_word(rs, word).roots == o.roots


class TestElementaryTranspositions:
    def test_a2(self):
        rs = root_system("A2")
        o = ordering_from_word(rs, (1, 2, 1))
        ts = elementary_transpositions(rs, o)
        assert len(ts) == 1
        assert ts[0].roots == ((0, 1), (1, 1), (1, 0))

    def test_a1(self):
        rs = root_system("A1")
        o = ordering_from_word(rs, (1,))
        assert elementary_transpositions(rs, o) == []

    def test_b2_single_inversion(self):
        rs = root_system("B2")
        o = ordering_from_word(rs, (1, 2, 1, 2))
        ts = elementary_transpositions(rs, o)
        assert len(ts) == 1
        assert ts[0].roots == tuple(reversed(o.roots))

    def test_results_are_normal(self):
        for name in ("B2", "G2", "A3"):
            rs = root_system(name)
            for o in all_normal_orderings(rs):
                for t in elementary_transpositions(rs, o):
                    assert is_normal_ordering(rs, t.roots)

    def test_counts(self):
        # reduced words of w0 are in bijection with normal orderings
        for name, count in [("A1", 1), ("A2", 2), ("B2", 2), ("G2", 2), ("A3", 16)]:
            assert len(all_normal_orderings(root_system(name))) == count

    def test_connectivity_rank3(self):
        # BFS from the greedy word reaches every normal ordering; cross-check
        # by exhaustive normality filter over permutations for B2
        import itertools

        rs = root_system("B2")
        found = {o.roots for o in all_normal_orderings(rs)}
        brute = {
            p for p in itertools.permutations(rs.positive_roots) if is_normal_ordering(rs, p)
        }
        assert found == brute
