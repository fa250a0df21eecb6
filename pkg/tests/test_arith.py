from fractions import Fraction
import math

import pytest
from hypothesis import given, strategies as st

from cusp_atlas import arith
from cusp_atlas.errors import UnfactoredCofactor


@pytest.mark.parametrize(
    "n, sign, factors",
    [(1, 1, {}), (-12, -1, {2: 2, 3: 1}), (9800, 1, {2: 3, 5: 2, 7: 2})],
)
def test_factor_examples(n, sign, factors):
    f = arith.factor(n)
    assert f.sign == sign
    assert dict(f.factors) == factors


@given(st.integers(-10**6, 10**6).filter(bool))
def test_factor_multiplies_back(n):
    f = arith.factor(n)
    assert f.value() == n
    assert all(arith.is_prime(p) and e > 0 for p, e in f.factors.items())


def test_factor_zero_rejected():
    with pytest.raises(ValueError):
        arith.factor(0)


def test_unfactored_cofactor_reported():
    with pytest.raises(UnfactoredCofactor) as info:
        arith.factor(101 * 103, bound=10)
    assert info.value.cofactor == 101 * 103


def test_factor_bound_from_environment(monkeypatch):
    monkeypatch.setenv(arith.FACTOR_BOUND_ENV, "10")
    with pytest.raises(UnfactoredCofactor):
        arith.factor(101 * 103)
    monkeypatch.setenv(arith.FACTOR_BOUND_ENV, "1000")
    assert arith.factor(101 * 103).primes == [101, 103]


@pytest.mark.parametrize("n, p, k", [(8, 2, 3), (45, 3, 2), (7, 5, 0)])
def test_valuation(n, p, k):
    assert arith.valuation(n, p) == k


@pytest.mark.parametrize("x, d", [(4, 1), (Fraction(-49, 2), -2), (10, 10)])
def test_squarefree_part(x, d):
    assert arith.squarefree_part(x) == d


@given(st.integers(-500, 500).filter(bool), st.integers(1, 40), st.integers(1, 40))
def test_squarefree_part_ignores_squares(d, a, b):
    x = Fraction(d * a * a, b * b)
    s = arith.squarefree_part(x)
    assert s == arith.squarefree_part(d)
    assert arith.is_rational_square(x / s)


@pytest.mark.parametrize("u, p, value", [(3, 7, -1), (2, 7, 1), (14, 7, 0)])
def test_legendre_examples(u, p, value):
    assert arith.legendre(u, p) == value


@given(st.sampled_from(arith.primes_up_to(200)[1:]))
def test_legendre_of_one(p):
    assert arith.legendre(1, p) == 1


@given(st.sampled_from(arith.primes_up_to(100)[1:]), st.integers(1, 10**4))
def test_legendre_matches_square_table(p, u):
    squares = {x * x % p for x in range(1, p)}
    expected = 0 if u % p == 0 else (1 if u % p in squares else -1)
    assert arith.legendre(u, p) == expected


def test_primes_up_to():
    assert arith.primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert all(arith.is_prime(p) for p in arith.primes_up_to(1000))
    assert sum(1 for n in range(1001) if arith.is_prime(n)) == len(arith.primes_up_to(1000))


@given(st.integers(-1000, 1000).filter(bool), st.integers(1, 1000))
def test_split_valuation(num, den):
    x = Fraction(num, den)
    for p in (2, 3, 5):
        k, u = arith.split_valuation(x, p)
        assert x == u * Fraction(p) ** k
        assert math.gcd(u.numerator, p) == 1 and math.gcd(u.denominator, p) == 1
