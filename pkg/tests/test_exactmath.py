import pytest
from hypothesis import given
from hypothesis import strategies as st

from sparsekl.errors import DomainError, InvariantViolation
from sparsekl.exactmath import (
    IntPolynomial,
    binomial,
    catalan,
    exact_div,
    falling_factorial,
    from_mask,
    poly_add,
    poly_mul,
    poly_scale,
    popcount,
    reciprocal_shift,
    rising_factorial,
    to_mask,
)


def pascal(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


@pytest.mark.parametrize("n,k,want", [(6, 3, 20), (5, 7, 0), (40, 20, 137846528820), (4, -1, 0), (0, 0, 1)])
def test_binomial_examples(n, k, want):
    assert binomial(n, k) == want


def test_binomial_matches_pascal():
    for n in range(41):
        assert [binomial(n, k) for k in range(n + 1)] == pascal(n)


def test_binomial_negative_n():
    with pytest.raises(DomainError):
        binomial(-1, 0)


@given(st.integers(0, 200), st.integers(0, 200))
def test_binomial_symmetry(n, k):
    if k <= n:
        assert binomial(n, k) == binomial(n, n - k)


@pytest.mark.parametrize("x,n,want", [(5, 2, 20), (3, 0, 1), (4, 6, 0), (-2, 3, -24)])
def test_falling_factorial(x, n, want):
    assert falling_factorial(x, n) == want


def test_rising_and_falling_agree():
    for x in range(-3, 8):
        for n in range(6):
            assert rising_factorial(x, n) == falling_factorial(x + n - 1, n)


def test_factorial_negative_length():
    with pytest.raises(DomainError):
        falling_factorial(3, -1)


def test_catalan():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_exact_div_refuses_remainder():
    assert exact_div(12, 4) == 3
    with pytest.raises(InvariantViolation):
        exact_div(13, 4)


def test_masks_roundtrip():
    assert to_mask([1, 3]) == 0b101
    assert from_mask(0b101) == (1, 3)
    assert popcount(0b1011) == 3
    with pytest.raises(DomainError):
        to_mask([0])


@given(st.sets(st.integers(1, 30)))
def test_mask_property(elements):
    assert set(from_mask(to_mask(elements))) == elements


# -- polynomials ----------------------------------------------------------------

small_ints = st.integers(-50, 50)
polys = st.lists(small_ints, max_size=6).map(IntPolynomial)


def test_normalization():
    assert IntPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPolynomial([0, 0]).coeffs == ()
    assert IntPolynomial().degree == -1
    assert IntPolynomial([3]).degree == 0


def test_poly_examples():
    one_plus = IntPolynomial([1, 1])
    one_minus = IntPolynomial([1, -1])
    assert poly_mul(one_plus, one_minus) == IntPolynomial([1, 0, -1])
    p = IntPolynomial([2, -3, 1])
    assert poly_add(p, IntPolynomial()) == p
    assert IntPolynomial([-1, 1]) * IntPolynomial([-2, 1]) == p
    assert poly_scale(p, -2) == IntPolynomial([-4, 6, -2])
    assert str(IntPolynomial([-6, 11, -6, 1])) == "t^3 - 6t^2 + 11t - 6"
    assert p(1) == 0 and p(3) == 2


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert p - p == IntPolynomial()
    assert (p * q).degree == (-1 if p.degree < 0 or q.degree < 0 else p.degree + q.degree)


@given(polys, polys, st.integers(-5, 5))
def test_evaluation_is_a_homomorphism(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@pytest.mark.parametrize(
    "coeffs,d,want",
    [([1, 2], 3, [0, 0, 2, 1]), ([1], 0, [1]), ([1, 2, 1], 2, [1, 2, 1])],
)
def test_reciprocal_shift_examples(coeffs, d, want):
    assert reciprocal_shift(IntPolynomial(coeffs), d) == IntPolynomial(want)


def test_reciprocal_shift_degree_guard():
    with pytest.raises(DomainError):
        reciprocal_shift(IntPolynomial([1, 1, 1]), 1)


@given(polys, st.integers(0, 4))
def test_reciprocal_shift_involution(p, extra):
    d = max(p.degree, 0) + extra
    assert reciprocal_shift(reciprocal_shift(p, d), d) == p


def nested_sum(b, i):
    """i-fold sum b >= j_1 >= j_2 >= ... >= j_i >= 0 of 1, by direct loops."""
    def rec(depth, top):
        if depth == 0:
            return 1
        return sum(rec(depth - 1, j) for j in range(top + 1))

    return rec(i, b)


@pytest.mark.parametrize("b", range(7))
@pytest.mark.parametrize("i", range(7))
def test_nested_sum_identity(b, i):
    assert nested_sum(b, i) == binomial(b + i, i)
