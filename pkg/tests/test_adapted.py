"""Adapted positive systems, orderings, segments, and dimension bookkeeping."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwslice import linalg
from qwslice.adapted import (
    AdaptedOrderingError,
    adapted_ordering,
    check_weight_separation,
    element_order,
    fixed_positive_roots,
    invariant_decomposition,
    positive_system,
    segment_length_formula,
    slice_dimensions,
    validate_adapted,
    weight_separation,
)
from qwslice.carter import enumerate_decompositions
from qwslice.rootsys import root_system


def elt(name, word):
    return root_system(name).word_element(word)


# -- invariant decomposition -------------------------------------------------

def test_element_orders():
    assert element_order(elt("A2", (1,))) == 2
    assert element_order(elt("A2", (1, 2))) == 3
    assert element_order(elt("B2", (1, 2))) == 4
    assert element_order(elt("G2", (1, 2))) == 6
    assert element_order(elt("A2", ())) == 1


def test_identity_decomposition_is_single_fixed_space():
    rs = root_system("A2")
    dec = invariant_decomposition(rs, rs.identity())
    assert len(dec.subspaces) == 1
    assert dec.subspaces[0].order == 1
    assert dec.subspaces[0].dim == 2


def test_a1_reflection_decomposition():
    rs = root_system("A1")
    dec = invariant_decomposition(rs, elt("A1", (1,)))
    assert [sp.order for sp in dec.subspaces] == [2]
    assert [sp.dim for sp in dec.subspaces] == [1]


def test_a2_coxeter_single_rotation_plane():
    rs = root_system("A2")
    dec = invariant_decomposition(rs, elt("A2", (1, 2)))
    assert [sp.order for sp in dec.subspaces] == [3]
    assert [sp.dim for sp in dec.subspaces] == [2]


def test_b2_simple_reflection_fixed_line_plus_moved_line():
    rs = root_system("B2")
    dec = invariant_decomposition(rs, elt("B2", (2,)))
    assert [sp.order for sp in dec.subspaces] == [1, 2]
    assert [sp.dim for sp in dec.subspaces] == [1, 1]
    # the fixed line is spanned by the root alpha1 + alpha2, which s2 fixes
    v = dec.subspaces[0].basis[0]
    assert v[0] != 0 and v[1] / v[0] == 1


def test_a3_longest_element_shapes():
    rs = root_system("A3")
    dec = invariant_decomposition(rs, elt("A3", (1, 2, 1, 3, 2, 1)))
    assert [sp.order for sp in dec.subspaces] == [1, 2, 2]
    assert [sp.dim for sp in dec.subspaces] == [1, 1, 1]


SYSTEMS = ["A1", "A2", "B2", "G2", "A3"]


@pytest.mark.parametrize("name", SYSTEMS)
def test_decomposition_invariance_orthogonality_dims(name):
    rs = root_system(name)
    for s in rs.weyl_elements():
        dec = invariant_decomposition(rs, s)
        assert sum(sp.dim for sp in dec.subspaces) == rs.rank
        m = [[Fraction(x) for x in row] for row in s.matrix]
        for sp in dec.subspaces:
            basis_cols = [list(v) for v in sp.basis]
            for v in sp.basis:
                img = [sum(m[i][j] * v[j] for j in range(rs.rank)) for i in range(rs.rank)]
                coords = linalg.column_space_coords(basis_cols, img)
                assert coords is not None, f"{name} {s}: subspace not invariant"
        for i, spa in enumerate(dec.subspaces):
            for spb in dec.subspaces[i + 1 :]:
                for u in spa.basis:
                    for v in spb.basis:
                        assert rs.pairing(u, v) == 0
        orders = [sp.order for sp in dec.subspaces]
        assert orders == sorted(orders)
        if orders and orders[0] == 1:
            assert orders.count(1) == 1


@pytest.mark.parametrize("name", SYSTEMS)
def test_heights_and_separation(name):
    rs = root_system(name)
    for s in rs.weyl_elements():
        dec = invariant_decomposition(rs, s)
        for sp, t in zip(dec.subspaces, dec.heights):
            basis_cols = [list(v) for v in sp.basis]
            assert linalg.column_space_coords(basis_cols, list(t)) is not None
            for r in rs.positive_roots:
                if any(rs.pairing(b, r) != 0 for b in sp.basis):
                    assert rs.pairing(t, r) != 0
        for r in rs.positive_roots:
            assert rs.pairing(dec.hbar, r) != 0
            # stratum = last subspace seeing the root; its height dominates
            vals = [rs.pairing(t, r) for t in dec.heights]
            stratum = max(k for k, v in enumerate(vals) if v != 0)
            partial = sum(vals[:stratum])
            assert abs(vals[stratum]) > abs(partial)
            # (6.wc): hbar-positivity equals stratum-height positivity
            assert (rs.pairing(dec.hbar, r) > 0) == (vals[stratum] > 0)


# -- positive system and conjugation ----------------------------------------

def test_identity_keeps_standard_chamber():
    for name in SYSTEMS:
        rs = root_system(name)
        dec = invariant_decomposition(rs, rs.identity())
        positives, w, simples = positive_system(rs, dec)
        assert w.is_identity()
        assert set(positives) == set(rs.positive_roots)
        assert simples == tuple(rs.simple_root(i) for i in range(1, rs.rank + 1))


@pytest.mark.parametrize("name", SYSTEMS)
def test_positive_system_is_chamber(name):
    rs = root_system(name)
    for s in rs.weyl_elements():
        dec = invariant_decomposition(rs, s)
        positives, w, simples = positive_system(rs, dec)
        pos_set = set(positives)
        for r in rs.positive_roots:
            neg = tuple(-c for c in r)
            assert (r in pos_set) != (neg in pos_set)
        assert {w.act(r) for r in rs.positive_roots} == pos_set
        assert simples == tuple(w.act(rs.simple_root(i)) for i in range(1, rs.rank + 1))


# -- adapted ordering anchors -------------------------------------------------

def test_a1_reflection_anchor():
    rs = root_system("A1")
    ao = adapted_ordering(rs, elt("A1", (1,)))
    assert ao.ordering.roots == ((1,),)
    assert (ao.seg_start, ao.seg_end) == (0, 1)
    assert ao.segment == ((1,),)
    assert ao.delta0 == ()
    assert ao.gammas == ((1,),)


def test_a2_coxeter_anchor():
    rs = root_system("A2")
    ao = adapted_ordering(rs, elt("A2", (1, 2)))
    # segment is the whole positive system; gammas sit at the two ends
    assert (ao.seg_start, ao.seg_end) == (0, 3)
    assert ao.delta0 == ()
    assert len(ao.gammas) == 2
    assert ao.ordering.roots[0] == ao.gammas[0]
    assert ao.ordering.roots[2] == ao.gammas[1]
    # both gammas are simple in the adapted coordinates
    simples = {rs.simple_root(1), rs.simple_root(2)}
    assert set(ao.gammas) == simples
    assert segment_length_formula(rs, ao) == 3


def test_a2_theta_reflection_anchor():
    rs = root_system("A2")
    ao = adapted_ordering(rs, elt("A2", (1, 2, 1)))
    # long-root reflection: l = 3, l' = 1, so the first root is outside
    assert (ao.seg_start, ao.seg_end) == (1, 3)
    assert ao.delta0 == ()
    assert len(ao.gammas) == 1
    assert ao.ordering.roots[1] == ao.gammas[0]


def test_b2_short_reflection_anchor():
    rs = root_system("B2")
    ao = adapted_ordering(rs, elt("B2", (2,)))
    # conjugates to the reflection in alpha1 + alpha2
    assert ao.s_adapted.matrix == rs.reflection((1, 1)).matrix
    assert ao.ordering.roots == ((1, 0), (1, 1), (1, 2), (0, 1))
    assert (ao.seg_start, ao.seg_end) == (1, 3)
    assert ao.delta0 == ((0, 1),)
    assert ao.gammas == ((1, 1),)


def test_g2_simple_reflection_anchor():
    rs = root_system("G2")
    ao = adapted_ordering(rs, elt("G2", (1,)))
    assert ao.s_adapted.matrix == rs.reflection((2, 1)).matrix
    assert (ao.seg_start, ao.seg_end) == (2, 5)
    assert ao.delta0 == ((0, 1),)
    assert ao.gammas == ((2, 1),)
    assert len(ao.segment) == 3


def test_g2_coxeter_anchor():
    rs = root_system("G2")
    ao = adapted_ordering(rs, elt("G2", (1, 2)))
    assert (ao.seg_start, ao.seg_end) == (0, 6)
    assert ao.ordering.roots[0] == ao.gammas[0]
    assert ao.ordering.roots[5] == ao.gammas[1]


def test_b2_longest_element_anchor():
    rs = root_system("B2")
    ao = adapted_ordering(rs, elt("B2", (1, 2, 1, 2)))
    # minus identity: two orthogonal reflections, one involution part
    assert ao.carter.gammas2 == ()
    assert (ao.seg_start, ao.seg_end) == (1, 4)
    assert ao.gammas[0] == ao.ordering.roots[1]


def test_identity_anchor():
    for name in SYSTEMS:
        rs = root_system(name)
        ao = adapted_ordering(rs, rs.identity())
        assert ao.seg_start == ao.seg_end == 0
        assert ao.segment == ()
        assert set(ao.delta0) == set(rs.positive_roots)
        assert ao.gammas == ()
        assert segment_length_formula(rs, ao) == 0


# -- exhaustive validity ------------------------------------------------------

@pytest.mark.parametrize("name", SYSTEMS)
def test_every_element_gets_valid_adapted_ordering(name):
    rs = root_system(name)
    for s in rs.weyl_elements():
        ao = adapted_ordering(rs, s)
        # conjugation is genuine
        w_inv = rs.inverse(ao.conjugator)
        assert (w_inv * s * ao.conjugator).matrix == ao.s_adapted.matrix
        # the final positions are exactly the fixed roots
        delta0 = set(fixed_positive_roots(rs, ao.s_adapted))
        assert set(ao.delta0) == delta0
        assert ao.num_fixed == len(delta0)
        assert set(ao.ordering.roots[rs.num_positive - ao.num_fixed :]) == delta0
        # the segment never overlaps the fixed tail
        assert ao.seg_end <= rs.num_positive - ao.num_fixed
        # measured segment length equals the closed formula
        assert ao.seg_end - ao.seg_start == segment_length_formula(rs, ao)
        # the validator accepts its own output
        assert validate_adapted(rs, ao.s_adapted, ao.carter, ao.ordering) is not None
        # gammas sit inside the segment, first part before second
        pos = {r: k for k, r in enumerate(ao.ordering.roots)}
        for g in ao.gammas:
            assert ao.seg_start <= pos[g] < ao.seg_end
        if ao.carter.gammas1 and ao.carter.gammas2:
            assert pos[ao.carter.gammas1[-1]] < pos[ao.carter.gammas2[0]]


def test_b3_class_representatives_get_valid_orderings():
    rs = root_system("B3")
    for cls in rs.conjugacy_classes():
        s = cls[0]
        ao = adapted_ordering(rs, s)
        assert ao.seg_end - ao.seg_start == segment_length_formula(rs, ao)
        sd = slice_dimensions(rs, ao)
        assert 2 * sd.dim_m_minus + sd.dim_slice == sd.dim_G


@pytest.mark.parametrize("name", SYSTEMS)
def test_segment_empty_iff_identity(name):
    rs = root_system(name)
    for s in rs.weyl_elements():
        ao = adapted_ordering(rs, s)
        assert (ao.seg_end == ao.seg_start) == s.is_identity()


def test_pinned_decomposition_roundtrip():
    rs = root_system("A2")
    s = elt("A2", (1, 2))
    ao = adapted_ordering(rs, s)
    ao2 = adapted_ordering(rs, s, decomposition=ao.carter)
    assert ao2.ordering.roots == ao.ordering.roots
    assert ao2.carter.gammas == ao.carter.gammas
    # a decomposition of some other element is rejected
    wrong = next(enumerate_decompositions(rs, elt("A2", (1,))))
    with pytest.raises(AdaptedOrderingError):
        adapted_ordering(rs, s, decomposition=wrong)


def test_search_budget_exhaustion():
    rs = root_system("A3")
    with pytest.raises(AdaptedOrderingError):
        adapted_ordering(rs, elt("A3", (1, 2, 1, 3, 2, 1)), search_budget=0)


# -- slice dimensions ---------------------------------------------------------

def test_slice_dimension_anchors():
    rs = root_system("A1")
    sd = slice_dimensions(rs, adapted_ordering(rs, elt("A1", (1,))))
    assert (sd.dim_G, sd.dim_m_minus, sd.dim_slice) == (3, 1, 1)

    rs = root_system("A2")
    sd = slice_dimensions(rs, adapted_ordering(rs, elt("A2", (1, 2))))
    assert (sd.dim_G, sd.dim_m_minus, sd.dim_slice) == (8, 3, 2)
    sd = slice_dimensions(rs, adapted_ordering(rs, rs.identity()))
    assert sd.dim_slice == sd.dim_G == 8
    assert sd.dim_m_minus == 0

    rs = root_system("B2")
    sd = slice_dimensions(rs, adapted_ordering(rs, elt("B2", (2,))))
    assert (sd.dim_G, sd.dim_m_minus, sd.dim_slice) == (10, 2, 6)

    rs = root_system("G2")
    sd = slice_dimensions(rs, adapted_ordering(rs, elt("G2", (1,))))
    assert (sd.dim_G, sd.dim_m_minus, sd.dim_slice) == (14, 3, 8)
    sd = slice_dimensions(rs, adapted_ordering(rs, elt("G2", (1, 2))))
    assert (sd.dim_G, sd.dim_m_minus, sd.dim_slice) == (14, 6, 2)


@pytest.mark.parametrize("name", SYSTEMS)
def test_dimension_identity_all_elements(name):
    rs = root_system(name)
    for s in rs.weyl_elements():
        sd = slice_dimensions(rs, adapted_ordering(rs, s))
        assert 2 * sd.dim_m_minus + sd.dim_slice == sd.dim_G
        assert sd.codim_slice == 2 * sd.dim_m_minus
        assert sd.dim_G == 2 * rs.num_positive + rs.rank


# -- weight separation --------------------------------------------------------

def test_a1_weight_separation():
    rs = root_system("A1")
    ao = adapted_ordering(rs, elt("A1", (1,)))
    for m in (3, 5):
        ok, witnesses = check_weight_separation(rs, ao, m)
        assert ok and witnesses == ()
        ok, witnesses = check_weight_separation(rs, ao, m, strict=True)
        assert ok


def test_a2_coxeter_weight_separation_modes():
    rs = root_system("A2")
    ao = adapted_ordering(rs, elt("A2", (1, 2)))
    ok, witnesses = check_weight_separation(rs, ao, 3)
    assert ok and witnesses == ()
    # the strict (all-j) reading fails on tuples with one zero entry
    ok, witnesses = check_weight_separation(rs, ao, 3, strict=True)
    assert not ok
    assert any(0 in t for t in witnesses)


def test_identity_vacuous_separation():
    rs = root_system("B2")
    ao = adapted_ordering(rs, rs.identity())
    assert check_weight_separation(rs, ao, 3) == (True, ())
    assert check_weight_separation(rs, ao, 3, strict=True) == (True, ())


def test_weight_separation_failure_path():
    rs = root_system("A2")
    ok, witnesses = weight_separation(rs, [(3, 3)], 3)
    assert not ok
    assert witnesses == ((1,), (2,))


def test_g2_simple_reflection_separation():
    rs = root_system("G2")
    ao = adapted_ordering(rs, elt("G2", (1,)))
    for m in (3, 5):
        ok, _ = check_weight_separation(rs, ao, m)
        assert ok


# -- randomized consistency ---------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(
    name=st.sampled_from(["A2", "B2", "A3"]),
    word=st.lists(st.integers(min_value=1, max_value=3), max_size=8),
)
def test_random_elements_validate(name, word):
    rs = root_system(name)
    word = tuple(i for i in word if i <= rs.rank)
    s = rs.word_element(word)
    ao = adapted_ordering(rs, s)
    assert validate_adapted(rs, ao.s_adapted, ao.carter, ao.ordering) is not None
    sd = slice_dimensions(rs, ao)
    assert 2 * sd.dim_m_minus + sd.dim_slice == sd.dim_G
