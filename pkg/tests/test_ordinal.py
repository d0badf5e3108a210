import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdlcrank.errors import OrdinalDomainError, OrdinalError, OrdinalOverflowError
from tdlcrank.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    ConstantRepeated,
    FiniteSet,
    Linear,
    Ordinal,
    Ordering,
    PowerOfOmega,
    add,
    compare,
    depth,
    is_limit,
    is_successor,
    leading_exponent,
    mul,
    normalize,
    omega_power,
    power,
    predecessor,
    successor,
    sup,
    sup_plus,
)

W = OMEGA


def w(e=1, c=1):
    return omega_power(e, c)


# -- independent oracle below w^3 --------------------------------------------
# an ordinal w^2*a2 + w*a1 + a0 is the triple (a2, a1, a0)


def tri_add(x, y):
    if y[0]:
        return (x[0] + y[0], y[1], y[2])
    if y[1]:
        return (x[0], x[1] + y[1], y[2])
    return (x[0], x[1], x[2] + y[2])


def tri_cmp(x, y):
    return (x > y) - (x < y)


def from_tri(t):
    return normalize([(2, t[0]), (1, t[1]), (0, t[2])])


def test_triple_oracle_agrees_with_cnf():
    rng = random.Random(42)
    coeff = range(20)
    pairs = 0
    for _ in range(9000):
        x = tuple(rng.choice(coeff) for _ in range(3))
        y = tuple(rng.choice(coeff) for _ in range(3))
        a, b = from_tri(x), from_tri(y)
        assert add(a, b) == from_tri(tri_add(x, y))
        assert int(compare(a, b)) == tri_cmp(x, y)
        pairs += 1
    assert pairs >= 8000


def test_triple_oracle_exhaustive_small():
    small = list(itertools.product(range(3), repeat=3))
    for x, y in itertools.product(small, small):
        assert add(from_tri(x), from_tri(y)) == from_tri(tri_add(x, y))


# -- named identities ----------------------------------------------------------


def test_absorption_identities():
    assert add(2, W) == W
    assert mul(2, W) == W
    assert mul(W, 2) == add(W, W)
    assert power(2, W) == W
    assert add(W, 2) < mul(W, 2) < power(W, 2)


def test_printing():
    assert str(mul(W, 2)) == "w*2"
    assert str(add(W, 2)) == "w+2"
    assert str(w(W)) == "w^w"
    assert str(add(w(add(W, 1), 2), add(mul(W, 3), 5))) == "w^(w+1)*2+w*3+5"
    assert str(ZERO) == "0"


def test_non_commutativity():
    a, b = add(W, 1), mul(W, 2)
    assert add(a, b) == mul(W, 3)
    assert add(b, a) == add(mul(W, 3), 1)
    assert mul(add(W, 1), 2) == add(mul(W, 2), 1)
    assert mul(2, add(W, 1)) == add(W, 2)


def test_powers():
    assert power(add(W, 1), 3) == normalize([(3, 1), (2, 1), (1, 1), (0, 1)])
    e = normalize([(2, 1), (1, 3), (0, 4)])
    assert power(2, e) == w(add(W, 3), 16)
    assert power(w(W), W) == w(w(2))
    assert power(W, 0) == ONE
    assert power(0, 0) == ONE
    assert power(0, W) == ZERO
    assert power(1, w(W)) == ONE


def test_int_interop():
    assert Ordinal(5) == 5
    assert hash(Ordinal(5)) == hash(5)
    assert add(3, 4) == 7 and mul(3, 4) == 12 and power(3, 4) == 81
    assert Ordinal(3) + W == W
    assert 2 * W == W


def test_successor_predecessor():
    assert predecessor(add(W, 2)) == add(W, 1)
    assert successor(W) == add(W, 1)
    with pytest.raises(OrdinalDomainError):
        predecessor(W)
    with pytest.raises(OrdinalDomainError):
        predecessor(0)
    assert is_limit(W) and not is_successor(W)
    assert is_successor(add(W, 1))
    assert not is_limit(ZERO)


def test_leading_exponent_and_depth():
    assert leading_exponent(add(w(3), 1)) == 3
    with pytest.raises(OrdinalDomainError):
        leading_exponent(ZERO)
    assert depth(0) == 0
    assert depth(5) == 1
    assert depth(W) == 2
    assert depth(w(W)) == 3


def test_depth_cap():
    x = W
    for _ in range(30):
        x = w(x)
    with pytest.raises(OrdinalOverflowError):
        power(W, x)


def test_malformed_construction():
    with pytest.raises(OrdinalError):
        Ordinal(((ZERO, 1), (ONE, 1)))
    with pytest.raises(OrdinalError):
        Ordinal(((ONE, 0),))
    with pytest.raises(OrdinalError):
        Ordinal(-1)


def test_families():
    assert sup_plus(FiniteSet((W, add(W, 3)))) == add(W, 3)
    assert sup_plus(FiniteSet((w(2),))) == add(w(2), 1)
    assert sup(ConstantRepeated(add(W, 2))) == add(W, 2)
    assert sup_plus(Linear(0, 1)) == add(W, 1)
    assert sup(Linear(add(W, 1), W)) == w(2)
    assert Linear(add(W, 1), W)[2] == mul(W, 3)
    fam = PowerOfOmega(1, 2)
    assert fam[3] == add(w(3), 2)
    assert sup_plus(fam) == add(w(W), 1)
    with pytest.raises(OrdinalError):
        PowerOfOmega(1, w(W))
    with pytest.raises(OrdinalError):
        FiniteSet(())


def test_ordering_enum():
    assert compare(W, 3) is Ordering.GT
    assert compare(3, W) is Ordering.LT
    assert compare(add(2, W), W) is Ordering.EQ


# -- algebraic laws -----------------------------------------------------------


def ordinals(max_depth=2):
    """Ordinals below w^(w^2) with small coefficients."""
    if max_depth == 0:
        return st.integers(0, 6).map(Ordinal)
    term = st.tuples(ordinals(max_depth - 1), st.integers(1, 4))
    return st.lists(term, max_size=3).map(normalize)


ORD = ordinals()


@settings(max_examples=300, deadline=None)
@given(ORD, ORD, ORD)
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@settings(max_examples=300, deadline=None)
@given(ORD, ORD, ORD)
def test_mul_associative_and_left_distributive(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@settings(max_examples=300, deadline=None)
@given(ORD, ORD, ORD)
def test_monotone_in_right_argument(a, b, c):
    if b < c:
        assert add(a, b) < add(a, c)
        if a > 0:
            assert mul(a, b) < mul(a, c)


@settings(max_examples=300, deadline=None)
@given(ORD, ORD)
def test_order_is_total_and_add_is_increasing(a, b):
    assert sum([a < b, a == b, a > b]) == 1
    assert add(a, b) >= a
    assert add(a, b) >= b


@settings(max_examples=150, deadline=None)
@given(ordinals(1), ordinals(1), ordinals(1))
def test_power_laws(a, b, c):
    try:
        assert power(a, add(b, c)) == mul(power(a, b), power(a, c))
        assert power(power(a, b), c) == power(a, mul(b, c))
    except OrdinalOverflowError:
        pass


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 5))
def test_finite_ordinals_are_naturals(m, n, k):
    assert add(m, n) == m + n
    assert mul(m, n) == m * n
    assert power(m, k) == m ** k
    assert int(compare(m, n)) == (m > n) - (m < n)


@settings(max_examples=300, deadline=None)
@given(ORD)
def test_successor_predecessor_inverse(a):
    assert predecessor(successor(a)) == a
    assert is_successor(successor(a))
