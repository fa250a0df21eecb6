"""Integer and rational primitives: factorization, valuations, squarefree parts,
Legendre symbols.

Everything here is exact. Rationals are :class:`fractions.Fraction`, which is
always kept in lowest terms with a positive denominator.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import UnfactoredCofactor

DEFAULT_FACTOR_BOUND = 10**6
FACTOR_BOUND_ENV = "CUSP_ATLAS_FACTOR_BOUND"


def factor_bound():
    """Trial-division bound, overridable through ``CUSP_ATLAS_FACTOR_BOUND``."""
    raw = os.environ.get(FACTOR_BOUND_ENV)
    if raw is None:
        return DEFAULT_FACTOR_BOUND
    bound = int(raw)
    if bound < 2:
        raise ValueError(f"{FACTOR_BOUND_ENV} must be at least 2, got {raw!r}")
    return bound


@dataclass(frozen=True)
class Factorization:
    """``sign * prod(p**e for p, e in factors.items())``."""

    sign: int
    factors: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        for p, e in self.factors.items():
            if p < 2 or e < 1:
                raise ValueError(f"bad factor {p}^{e}")

    def value(self):
        n = self.sign
        for p, e in self.factors.items():
            n *= p**e
        return n

    @property
    def primes(self):
        return sorted(self.factors)

    def __hash__(self):
        return hash((self.sign, tuple(sorted(self.factors.items()))))


def factor(n, bound=None):
    """Factor a nonzero integer by trial division.

    Raises :class:`UnfactoredCofactor` when a cofactor larger than
    ``bound**2`` survives division by every integer up to ``bound``.
    """
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    if bound is None:
        bound = factor_bound()
    return _factor(n, bound)


@lru_cache(maxsize=65536)
def _factor(n, bound):
    sign = 1 if n > 0 else -1
    m = abs(n)
    factors = {}
    for p in (2, 3):
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    d = 5
    step = 2
    while d * d <= m:
        if d > bound:
            raise UnfactoredCofactor(n, m, bound)
        while m % d == 0:
            factors[d] = factors.get(d, 0) + 1
            m //= d
        d += step
        step = 6 - step
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return Factorization(sign, factors)


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def primes_up_to(n):
    """Sieve of Eratosthenes, ascending."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def valuation(n, p):
    """Largest ``e`` with ``p**e`` dividing the nonzero integer ``n``."""
    n = int(n)
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def split_valuation(x, p):
    """Return ``(k, u)`` with ``x = p**k * u`` and ``u`` a rational p-adic unit."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    num, den = x.numerator, x.denominator
    kn = valuation(num, p)
    kd = valuation(den, p)
    return kn - kd, Fraction(num // p**kn, den // p**kd)


def squarefree_part(x):
    """The signed squarefree integer ``s`` with ``x / s`` a rational square."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("squarefree part of 0 is undefined")
    # x = num/den is in the same square class as num*den.
    f = factor(x.numerator * x.denominator)
    s = f.sign
    for p, e in f.factors.items():
        if e % 2:
            s *= p
    return s


def is_rational_square(x):
    x = Fraction(x)
    return x > 0 and squarefree_part(x) == 1


def legendre(u, p):
    """Legendre symbol ``(u/p)`` for an odd prime ``p`` via Euler's criterion."""
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def prime_support(values):
    """Sorted primes dividing any numerator or denominator in ``values``."""
    primes = set()
    for v in values:
        v = Fraction(v)
        primes.update(factor(v.numerator).factors)
        primes.update(factor(v.denominator).factors)
    return sorted(primes)
