"""Unipotent matrices and alternating binomial sums.

A unipotent ``M = I + T`` is a rational linear combination of its powers
``M^(a k)``, so its entries lie in the field generated by the entries of
``M^k``. :func:`reconstruct_from_power` produces the coefficients explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import linalg
from .errors import NotUnipotent


def evaluate_polynomial(coefficients, x):
    """Horner evaluation; ``coefficients[i]`` multiplies ``x**i``."""
    x = Fraction(x)
    result = Fraction(0)
    for c in reversed(coefficients):
        result = result * x + Fraction(c)
    return result


def binomial_g(f, n, y, x):
    """``sum_{a=0}^{n} (-1)^a C(n, a) f(x + a y)``.

    ``f`` is either a coefficient sequence (ascending powers) or a callable.
    Vanishes when ``f`` has degree below ``n``; equals ``n! (-y)^n`` for ``x^n``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    fn = f if callable(f) else (lambda t: evaluate_polynomial(f, t))
    y, x = Fraction(y), Fraction(x)
    return sum((-1) ** a * comb(n, a) * Fraction(fn(x + a * y)) for a in range(n + 1))


@dataclass(frozen=True)
class UnipotentMatrix:
    M: tuple
    nilpotency_index: int

    @classmethod
    def of(cls, m):
        m = linalg.as_matrix(m)
        return cls(m, nilpotency_index(m))

    @property
    def dimension(self):
        return len(self.M)

    @property
    def nilpotent_part(self):
        return linalg.sub(self.M, linalg.identity(self.dimension))


def nilpotency_index(m):
    """Least ``l >= 1`` with ``(M - I)^l = 0``."""
    m = linalg.as_matrix(m)
    n = len(m)
    t = linalg.sub(m, linalg.identity(n))
    power = linalg.identity(n)
    for l in range(1, n + 1):
        power = linalg.matmul(power, t)
        if linalg.is_zero(power):
            return l
    raise NotUnipotent(f"(M - I)^{n} is nonzero")


def alternating_power_sum(m, k, n):
    """``sum_{a=0}^{n} (-1)^(n+a) C(n, a) M^(a k)``."""
    m = linalg.as_matrix(m)
    step = linalg.matpow(m, k)
    power = linalg.identity(len(m))
    total = linalg.zeros(len(m))
    for a in range(n + 1):
        total = linalg.add(total, linalg.smul((-1) ** (n + a) * comb(n, a), power))
        power = linalg.matmul(power, step)
    return total


def reconstruct_from_power(m, k):
    """Coefficients ``c_0 .. c_{l-1}`` with ``sum c_a M^(a k) = M``.

    With ``T = M - I`` of index ``l``, ``M^(a k) = sum_i C(a k, i) T^i`` and
    ``I, T, ..., T^(l-1)`` are independent, so matching ``M = T^0 + T^1``
    is an ``l x l`` system with an invertible binomial matrix.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    u = m if isinstance(m, UnipotentMatrix) else UnipotentMatrix.of(m)
    l = u.nilpotency_index
    system = [[Fraction(comb(a * k, i)) for a in range(l)] for i in range(l)]
    target = [Fraction(1 if i <= 1 else 0) for i in range(l)]
    return list(linalg.solve(system, target))


def reassemble(m, k, coefficients):
    """``sum_a c_a M^(a k)``; the direct check on :func:`reconstruct_from_power`."""
    m = linalg.as_matrix(m)
    step = linalg.matpow(m, k)
    power = linalg.identity(len(m))
    total = linalg.zeros(len(m))
    for c in coefficients:
        total = linalg.add(total, linalg.smul(c, power))
        power = linalg.matmul(power, step)
    return total
