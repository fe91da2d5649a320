import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mqunits.intarith import (
    RationalInterval,
    is_perfect_square,
    is_prime,
    is_squarefree,
    kronecker_symbol,
    primes_upto,
    sqrt_interval,
    squarefree_decompose,
)


def test_primes_upto_small():
    assert primes_upto(1) == []
    assert primes_upto(2) == [2]
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_primes_upto_grows_then_shrinks_consistently():
    big = primes_upto(10_000)
    small = primes_upto(100)
    assert small == [p for p in big if p <= 100]


def test_is_prime_small_table():
    table = {p for p in range(200) if is_prime(p)}
    assert table == set(primes_upto(199))


def test_squarefree_decompose_examples():
    assert squarefree_decompose(1) == (1, 1)
    assert squarefree_decompose(200) == (2, 10)
    assert squarefree_decompose(-12) == (-3, 2)
    assert squarefree_decompose(440) == (110, 2)
    assert squarefree_decompose(55) == (55, 1)


def test_squarefree_decompose_rejects_zero():
    with pytest.raises(ValueError):
        squarefree_decompose(0)


def test_squarefree_decompose_large_semiprime_square():
    # remainder after cube-root trial division is p*q and p**2 respectively
    p, q = 10007, 10009
    assert squarefree_decompose(p * q) == (p * q, 1)
    assert squarefree_decompose(p * p) == (1, p)
    assert squarefree_decompose(4 * p * p * q) == (q, 2 * p)


@given(st.integers(min_value=-(10**6), max_value=10**6).filter(lambda n: n != 0))
def test_squarefree_decompose_roundtrip(n):
    s, f = squarefree_decompose(n)
    assert s * f * f == n
    assert f > 0
    assert is_squarefree(s)


def test_is_perfect_square():
    assert is_perfect_square(0) == (True, 0)
    assert is_perfect_square(441) == (True, 21)
    assert is_perfect_square(440) == (False, None)
    assert is_perfect_square(-4) == (False, None)


def test_kronecker_examples():
    assert kronecker_symbol(5, 11) == 1
    assert kronecker_symbol(5, 3) == -1
    assert kronecker_symbol(0, 3) == 0
    assert kronecker_symbol(3, 2) == -1
    assert kronecker_symbol(2, 2) == 0
    with pytest.raises(ValueError):
        kronecker_symbol(3, 0)


def test_kronecker_matches_euler_criterion_on_odd_primes():
    for p in primes_upto(60):
        if p == 2:
            continue
        for a in range(1, p):
            euler = pow(a, (p - 1) // 2, p)
            expected = 1 if euler == 1 else -1
            assert kronecker_symbol(a, p) == expected


@given(
    st.integers(min_value=-500, max_value=500),
    st.integers(min_value=-500, max_value=500),
    st.integers(min_value=1, max_value=499).map(lambda k: 2 * k + 1),
)
def test_kronecker_multiplicative_in_numerator(a, b, n):
    assert kronecker_symbol(a * b, n) == kronecker_symbol(a, n) * kronecker_symbol(b, n)


@given(st.integers(min_value=-500, max_value=500))
def test_kronecker_unit_modulus(a):
    assert kronecker_symbol(a, 1) == 1


def test_interval_basics():
    iv = RationalInterval(Fraction(1, 3), Fraction(1, 2))
    assert iv.width == Fraction(1, 6)
    assert not iv.contains_zero()
    assert RationalInterval(Fraction(-1), Fraction(1)).contains_zero()
    with pytest.raises(ValueError):
        RationalInterval(Fraction(1), Fraction(0))


def test_interval_arithmetic():
    a = RationalInterval(Fraction(1), Fraction(2))
    b = RationalInterval(Fraction(-1), Fraction(3))
    s = a + b
    assert (s.lo, s.hi) == (Fraction(0), Fraction(5))
    neg = a.scaled(Fraction(-2))
    assert (neg.lo, neg.hi) == (Fraction(-4), Fraction(-2))


def test_sqrt_interval_exact_square():
    iv = sqrt_interval(4, Fraction(1, 10))
    assert iv.lo == iv.hi == 2


def test_sqrt_interval_brackets():
    iv = sqrt_interval(2, Fraction(1, 10**6))
    assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi
    assert iv.width <= Fraction(1, 10**6)


def test_sqrt_interval_rejects_bad_input():
    with pytest.raises(ValueError):
        sqrt_interval(0, Fraction(1, 10))
    with pytest.raises(ValueError):
        sqrt_interval(2, 0)


@given(
    st.integers(min_value=2, max_value=10**6),
    st.integers(min_value=1, max_value=12),
)
def test_sqrt_interval_nesting(n, k):
    wide = sqrt_interval(n, Fraction(1, 10**k))
    tight = sqrt_interval(n, Fraction(1, 10 ** (k + 6)))
    assert wide.lo <= tight.lo and tight.hi <= wide.hi
    assert wide.lo * wide.lo <= n <= wide.hi * wide.hi
    assert math.isqrt(n) <= wide.hi
