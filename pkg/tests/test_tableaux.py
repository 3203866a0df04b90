import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparsekl.errors import DomainError, ResourceCapError
from sparsekl.exactmath import binomial, catalan
from sparsekl.tableaux import (
    SkytFilling,
    SkytShape,
    count_bar_skyt,
    count_bar_skyt_alternating,
    count_disjoint_positive,
    count_skyt,
    count_skyt_fillings,
    count_skyt_positive,
    enumerate_bar_skyt,
    enumerate_skyt,
    skyt_i1_closed_form,
)


def permutation_filter(a, i, b):
    """Every permutation of the entries, kept when legal.  Only for tiny shapes."""
    shape = SkytShape(a, i, b)
    out = []
    for perm in itertools.permutations(range(1, shape.ncells + 1)):
        f = SkytFilling(shape, perm)
        if f.is_legal():
            out.append(perm)
    return sorted(out)


def test_shape_layout():
    s = SkytShape(3, 2, 3)
    assert s.ncells == 3 + 3 + 4 - 2
    assert s.cells == ((0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (-1, 2), (0, 2), (1, 2))
    assert s.column(2) == [5, 6, 7]
    # (0, 2) sits below (-1, 2) and right of (0, 1)
    assert s.predecessors[6] == (1 << 5) | (1 << 3)


def test_shape_rejects_degenerate():
    for args in [(1, 1, 2), (2, 0, 2), (2, 1, 1)]:
        with pytest.raises(DomainError):
            SkytShape(*args)


@pytest.mark.parametrize("a,i,b", [(2, 1, 2), (3, 1, 2), (2, 2, 2), (2, 1, 3), (3, 2, 2), (2, 2, 3)])
def test_enumeration_matches_permutation_filter(a, i, b):
    got = [f.entries for f in enumerate_skyt(a, i, b)]
    assert got == permutation_filter(a, i, b)


def test_enumeration_examples():
    assert len(enumerate_skyt(2, 1, 2)) == 2
    assert len(enumerate_skyt(3, 1, 2)) == 5
    assert len(enumerate_skyt(2, 2, 2)) == count_skyt(2, 2, 2)


def test_enumeration_is_sorted_and_legal():
    fillings = enumerate_skyt(3, 2, 3)
    entries = [f.entries for f in fillings]
    assert entries == sorted(set(entries))
    assert all(f.is_legal() for f in fillings)


def test_enumeration_cap():
    with pytest.raises(ResourceCapError, match="too large to enumerate"):
        enumerate_skyt(9, 4, 4)
    assert len(enumerate_skyt(2, 1, 2, cap=4)) == 2


def test_filling_picture():
    f = enumerate_skyt(2, 1, 3)[0]
    assert f.rows() == ["  3", "1 4", "2 5"]


@pytest.mark.parametrize("a,i,b,want", [(4, 1, 2, 9), (7, 0, 9, 1), (1, 3, 5, 0), (3, 2, 0, 0), (0, 0, 0, 1)])
def test_count_skyt_examples(a, i, b, want):
    assert count_skyt(a, i, b) == want


def test_count_skyt_negative():
    with pytest.raises(DomainError):
        count_skyt(-1, 1, 2)


@pytest.mark.parametrize("a,i,b", [(4, 1, 2), (2, 1, 2), (3, 2, 3), (6, 4, 6), (9, 5, 11)])
def test_positive_form_matches_alternating(a, i, b):
    assert count_skyt_positive(a, i, b) == count_skyt(a, i, b)


def test_positive_form_domain():
    with pytest.raises(DomainError):
        count_skyt_positive(1, 1, 2)


def test_bar_examples():
    assert len(enumerate_bar_skyt(1, 2)) == 2
    assert len(enumerate_bar_skyt(1, 4)) == 4
    assert len(enumerate_bar_skyt(2, 2)) == 5
    assert count_bar_skyt(0, 7) == 0
    assert count_bar_skyt(1, 2) == 2
    assert count_bar_skyt(1, 6) == 6
    assert count_bar_skyt(3, 1) == 0
    assert count_bar_skyt_alternating(1, 2) == 2
    assert count_bar_skyt_alternating(2, 2) == 5
    assert count_bar_skyt_alternating(3, 2) == count_bar_skyt(3, 2)


def test_bar_fillings_start_with_one():
    assert all(f.entries[0] == 1 for f in enumerate_bar_skyt(2, 3))


@pytest.mark.parametrize("i", range(1, 6))
def test_catalan_case(i):
    assert count_skyt(2, i, 2) == catalan(i + 1)


def test_i1_closed_form():
    for m in range(1, 7):
        for d in range(3, 9):
            assert count_skyt(m + 1, 1, d - 1) == skyt_i1_closed_form(m, d) == binomial(m + d, d - 1) - m - d
    with pytest.raises(DomainError):
        skyt_i1_closed_form(0, 3)


@given(st.integers(2, 30), st.integers(1, 12), st.integers(2, 30))
def test_two_closed_forms_agree(a, i, b):
    assert count_skyt_positive(a, i, b) == count_skyt(a, i, b)


@given(st.integers(1, 15), st.integers(2, 30))
def test_two_bar_forms_agree(i, b):
    assert count_bar_skyt(i, b) == count_bar_skyt_alternating(i, b)
    assert 0 <= count_bar_skyt(i, b) <= count_skyt(2, i, b)


@given(st.integers(2, 6), st.integers(1, 3), st.integers(2, 6))
def test_dp_count_matches_closed_form(a, i, b):
    assert count_skyt_fillings(a, i, b) == count_skyt(a, i, b)


# -- disjoint circuit-hyperplane interpretation ----------------------------------


def test_disjoint_examples():
    assert count_disjoint_positive(3, 3, 1, 0) == 9
    # every filling of Skyt(2, 1, 2) fails all three conditions when d + c = 4
    assert count_disjoint_positive(1, 3, 1, 1) == 0
    # c = 4 admits no disjoint family in [6]; by hand: left column 1,2,3 then 3 ways
    assert count_disjoint_positive(3, 3, 1, 4) == 3
    assert count_disjoint_positive(3, 3, 1, 2) == 9 - 2 * 2
    assert count_disjoint_positive(3, 5, 0, 1) == 1


def test_disjoint_preconditions():
    with pytest.raises(DomainError):
        count_disjoint_positive(3, 4, 2, 0)
    with pytest.raises(DomainError):
        count_disjoint_positive(3, 4, 1, -1)


def test_disjoint_matches_direct_filter():
    m, d, i, c = 2, 5, 2, 1
    a, b = m + 1, d - 2 * i + 1
    shape = SkytShape(a, i, b)
    right, left = shape.column(i), shape.column(0)
    want = sum(
        1
        for f in enumerate_skyt(a, i, b)
        if f.entries[right[0]] == 1 or f.entries[right[-1]] > d + c or f.entries[left[2]] < d + 1
    )
    assert count_disjoint_positive(m, d, i, c) == want
