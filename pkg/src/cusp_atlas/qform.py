"""Diagonal rational quadratic forms and their complete invariants over Q.

A nondegenerate form over Q is determined up to rational equivalence by its
signature, its discriminant in Q*/Q*^2 and its Hasse-Witt invariants at every
prime. This module computes all three, decides rational and projective
equivalence, and carries an independent route to the Hasse-Witt invariants
through Conway's p-excesses.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import linalg
from .arith import (
    is_prime,
    legendre,
    prime_support,
    split_valuation,
    squarefree_part,
    valuation,
)
from .errors import SingularForm

INF = math.inf
"""The archimedean place. Sorts after every finite prime."""


def check_place(v):
    if v == INF:
        return v
    if isinstance(v, int) and is_prime(v):
        return v
    raise ValueError(f"not a place of Q: {v!r}")


def place_label(v):
    return "inf" if v == INF else str(v)


@dataclass(frozen=True)
class DiagonalForm:
    """The form ``<a1, ..., an>`` = a1*x1^2 + ... + an*xn^2."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if not coeffs:
            raise ValueError("a form needs at least one coefficient")
        if any(c == 0 for c in coeffs):
            raise ValueError("coefficients of a nondegenerate form must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, *coefficients):
        return cls(tuple(coefficients))

    @property
    def rank(self):
        return len(self.coefficients)

    def __len__(self):
        return self.rank

    def __iter__(self):
        return iter(self.coefficients)

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.coefficients) + ">"

    def matrix(self):
        return linalg.diag(self.coefficients)

    def evaluate(self, x):
        return sum(c * Fraction(xi) ** 2 for c, xi in zip(self.coefficients, x))

    def integral(self):
        """Clear denominators coefficient-wise by squares; same rational class."""
        return DiagonalForm(tuple(c * c.denominator**2 for c in self.coefficients))

    def square_reduced(self):
        """Replace every coefficient by its squarefree part; same rational class."""
        return DiagonalForm(tuple(squarefree_part(c) for c in self.coefficients))

    def __add__(self, other):
        if not isinstance(other, DiagonalForm):
            return NotImplemented
        return direct_sum(self, other)


class Signature(NamedTuple):
    positive: int
    negative: int


@dataclass(frozen=True)
class InvariantProfile:
    """Signature, discriminant class and the finite set of places with eps = -1."""

    signature: tuple
    discriminant_class: int
    negative_places: frozenset = field(default_factory=frozenset)
    epsilon_infinity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "signature", Signature(*self.signature))
        object.__setattr__(self, "negative_places", frozenset(self.negative_places))

    @property
    def rank(self):
        return sum(self.signature)

    def epsilon(self, v):
        if v == INF:
            return self.epsilon_infinity
        return -1 if v in self.negative_places else 1

    @property
    def bad_primes(self):
        return sorted(self.negative_places)

    def as_dict(self):
        return {
            "signature": [str(x) for x in self.signature],
            "discriminant": str(self.discriminant_class),
            "negative_places": [str(p) for p in self.bad_primes],
            "epsilon_infinity": str(self.epsilon_infinity),
        }


# -- construction ----------------------------------------------------------


def diagonalize(m):
    """Congruence-diagonalize a nonsingular symmetric rational matrix.

    Returns ``(form, T)`` with ``T^T m T == diag(form)``. Symmetric Gaussian
    elimination; a zero pivot is swapped with a later nonzero diagonal entry,
    or else replaced by ``e_k + e_j``, whose value ``2 a_kj`` is nonzero.
    """
    a = [list(row) for row in linalg.as_matrix(m)]
    n = len(a)
    if not linalg.is_symmetric(a):
        raise ValueError("matrix is not symmetric")
    if linalg.det(a) == 0:
        raise SingularForm("determinant is zero")
    t = [list(row) for row in linalg.identity(n)]

    def col_op(i, j, c):
        # basis change e_i <- e_i + c*e_j applied as congruence
        for r in range(n):
            a[r][i] += c * a[r][j]
        for r in range(n):
            a[i][r] += c * a[j][r]
        for r in range(n):
            t[r][i] += c * t[r][j]

    def swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        a[i], a[j] = a[j], a[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                # all remaining diagonal entries vanish, so the new pivot is 2 a[k][j]
                j = next(j for j in range(k + 1, n) if a[k][j] != 0)
                col_op(k, j, Fraction(1))
        for j in range(k + 1, n):
            if a[k][j] != 0:
                col_op(j, k, -a[k][j] / a[k][k])
    coeffs = tuple(a[i][i] for i in range(n))
    return DiagonalForm(coeffs), linalg.as_matrix(t)


def signature(q):
    pos = sum(1 for c in q.coefficients if c > 0)
    return Signature(pos, q.rank - pos)


def discriminant_class(q):
    return squarefree_part(math.prod(q.coefficients))


def scale(q, c):
    c = Fraction(c)
    if c == 0:
        raise ValueError("scaling by zero")
    return DiagonalForm(tuple(c * x for x in q.coefficients))


def direct_sum(q1, q2):
    return DiagonalForm(q1.coefficients + q2.coefficients)


# -- Hilbert symbols ---------------------------------------------------------


def _integral_pair(a, b):
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    # multiply by denominator squares: same square class, now integers
    return a.numerator * a.denominator, b.numerator * b.denominator


def _tau(x):
    return ((x - 1) // 2) % 2


def _omega(x):
    return ((x * x - 1) // 8) % 2


def hilbert_symbol(a, b, v):
    """The Hilbert symbol ``(a, b)_v`` for nonzero rationals, by closed formula."""
    a, b = _integral_pair(a, b)
    if v == INF:
        return -1 if a < 0 and b < 0 else 1
    return _hilbert_finite(a, b, v)


@lru_cache(maxsize=1 << 16)
def _hilbert_finite(a, b, p):
    alpha, beta = valuation(a, p), valuation(b, p)
    u, w = a // p**alpha, b // p**beta
    if p == 2:
        exponent = _tau(u) * _tau(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if exponent % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre(u, p) ** beta * legendre(w, p) ** alpha


ORACLE_MODULUS_CAP = 10**7


class OracleResult(NamedTuple):
    value: int
    exponent: int
    fallback: bool


def oracle_exponent(a, b, p):
    """Hensel depth at which a primitive solution mod ``p**e`` must lift.

    Every primitive solution has a coordinate that is a unit; the partial
    derivative in that coordinate has valuation at most
    ``v(2) + max(v(a), v(b))``, so ``e = 2 t + 1`` suffices.
    """
    t = valuation(2, p) + max(valuation(a, p), valuation(b, p))
    return 2 * t + 1


@lru_cache(maxsize=64)
def _squares_mod(m):
    return frozenset(x * x % m for x in range(m))


def _has_primitive_solution(a, b, p, e):
    """Search z^2 = a x^2 + b y^2 (mod p^e) with (x, y, z) not all divisible by p."""
    m = p**e
    squares = _squares_mod(m)
    # a unit coordinate can be scaled to 1
    for y in range(m):
        if (a + b * y * y) % m in squares:  # x = 1
            return True
    for x in range(0, m, p):
        if (a * x * x + b) % m in squares:  # y = 1, x non-unit
            return True
    for x in range(0, m, p):
        for y in range(0, m, p):
            if (a * x * x + b * y * y - 1) % m == 0:  # z = 1, x and y non-units
                return True
    return False


def hilbert_oracle_detail(a, b, v):
    """Brute-force solvability check of ``z^2 = a x^2 + b y^2`` over Q_v."""
    a, b = int(a), int(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if v == INF:
        return OracleResult(-1 if a < 0 and b < 0 else 1, 0, False)
    e = oracle_exponent(a, b, v)
    if v**e > ORACLE_MODULUS_CAP:
        return OracleResult(hilbert_symbol(a, b, v), e, True)
    return OracleResult(1 if _has_primitive_solution(a, b, v, e) else -1, e, False)


def hilbert_oracle(a, b, v):
    return hilbert_oracle_detail(a, b, v).value


# -- Hasse-Witt invariants ---------------------------------------------------


def hasse_witt(q, v):
    """``eps_v(q) = prod_{i<j} (a_i, a_j)_v``."""
    if v == INF:
        s = signature(q).negative
        return -1 if (s * (s - 1) // 2) % 2 else 1
    coeffs = q.integral().coefficients
    result = 1
    for x, y in itertools.combinations(coeffs, 2):
        result *= _hilbert_finite(int(x), int(y), v)
    return result


def candidate_places(q):
    """2 together with every prime dividing a numerator or denominator."""
    return sorted(set(prime_support(q.coefficients)) | {2})


def invariant_profile(q):
    negative = frozenset(p for p in candidate_places(q) if hasse_witt(q, p) == -1)
    return InvariantProfile(
        signature=signature(q),
        discriminant_class=discriminant_class(q),
        negative_places=negative,
        epsilon_infinity=hasse_witt(q, INF),
    )


# -- Conway p-excesses ---------------------------------------------------------


def _excess_rank_one(a, p):
    k, u = split_valuation(a, p)
    u = int(u)
    if p == 2:
        twist = 4 if k % 2 and u % 8 in (3, 5) else 0
        return (1 - u - twist) % 8
    twist = 4 if k % 2 and legendre(u, p) == -1 else 0
    return (p**k - 1 + twist) % 8


def p_excess(q, p):
    """Conway's p-excess of a diagonal form, a residue mod 8 (finite ``p`` only)."""
    if p == INF:
        raise ValueError("the p-excess is only implemented at finite primes")
    coeffs = q.integral().coefficients
    return sum(_excess_rank_one(c, p) for c in coeffs) % 8


def hasse_from_excess(q, p):
    """Hasse-Witt invariant recovered from p-excesses and the discriminant."""
    q = q.integral()
    d = math.prod(q.coefficients)
    reference = DiagonalForm((d,) + (1,) * (q.rank - 1))
    return 1 if p_excess(q, p) == p_excess(reference, p) else -1


# -- equivalence -------------------------------------------------------------


class Verdict(NamedTuple):
    equivalent: bool
    reason: str

    def __bool__(self):
        return self.equivalent


def rationally_equivalent(q1, q2):
    """Compare the complete invariant system; ``reason`` names the first mismatch."""
    if q1.rank != q2.rank:
        return Verdict(False, "rank")
    if signature(q1) != signature(q2):
        return Verdict(False, "signature")
    if discriminant_class(q1) != discriminant_class(q2):
        return Verdict(False, "discriminant")
    # odd primes first: a mismatch at 2 is usually forced by one elsewhere
    places = sorted(set(candidate_places(q1)) | set(candidate_places(q2)), key=lambda p: (p == 2, p))
    for p in places:
        if hasse_witt(q1, p) != hasse_witt(q2, p):
            return Verdict(False, f"epsilon_{p}")
    return Verdict(True, "equivalent")


def _squarefree_divisors(primes):
    for r in range(len(primes) + 1):
        for combo in itertools.combinations(primes, r):
            yield math.prod(combo)


def projective_scalars(q1, q2):
    """Candidate scalars ``c`` (signed squarefree) for ``q1 ~ c q2``."""
    primes = sorted(
        set(prime_support(q1.coefficients)) | set(prime_support(q2.coefficients)) | {2}
    )
    for c in _squarefree_divisors(primes):
        yield c
        yield -c


def projectively_equivalent(q1, q2):
    """Whether ``a q1`` and ``b q2`` are rationally equivalent for some ``a, b != 0``."""
    if q1.rank != q2.rank:
        return False
    if q1.rank % 2:
        # odd rank: scaling by its own discriminant makes each discriminant a
        # square, which pins down the scalar up to squares
        r1 = scale(q1, discriminant_class(q1))
        r2 = scale(q2, discriminant_class(q2))
        return bool(rationally_equivalent(r1, r2))
    return any(rationally_equivalent(q1, scale(q2, c)) for c in projective_scalars(q1, q2))
