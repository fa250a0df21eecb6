"""Quaternion algebras over Q: ramification, splitting in quadratic fields,
and torsion in ``Q*/Z(Q*)``.

A place ramifies in ``(a, b / Q)`` exactly when the Hilbert symbol
``(a, b)_v`` is -1; that is the single definition used here. The residue-based
case analysis for odd primes is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import is_prime, legendre, prime_support, squarefree_part, valuation
from .qform import INF, DiagonalForm, hasse_witt, hilbert_symbol

TORSION_FIELDS = {3: -3, 4: -1, 6: -3}
"""Discriminant ``d`` with ``Q(zeta_n) = Q(sqrt(d))``."""


@dataclass(frozen=True)
class QuaternionAlgebra:
    """``(a, b / Q)``: ``i^2 = a``, ``j^2 = b``, ``ij = -ji``.

    Entries are reduced to their squarefree parts on construction.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a == 0 or self.b == 0:
            raise ValueError("quaternion algebra needs nonzero a and b")
        object.__setattr__(self, "a", squarefree_part(self.a))
        object.__setattr__(self, "b", squarefree_part(self.b))

    def norm_form(self):
        """``w^2 - a x^2 - b y^2 + ab z^2``."""
        return DiagonalForm.of(1, -self.a, -self.b, self.a * self.b)

    def pure_norm_form(self):
        return DiagonalForm.of(-self.a, -self.b, self.a * self.b)

    def ramification_set(self):
        return ramification_set(self)


def ramification_set(algebra):
    """Places ``v`` with ``(a, b)_v = -1``; always of even size."""
    a, b = algebra.a, algebra.b
    places = [p for p in sorted(set(prime_support([a, b])) | {2}) if hilbert_symbol(a, b, p) == -1]
    if hilbert_symbol(a, b, INF) == -1:
        places.append(INF)
    return frozenset(places)


def odd_prime_ramifies(a, b, p):
    """Residue rule for an odd prime dividing exactly one of squarefree ``a, b``.

    With ``p | a`` and ``p`` not dividing ``b`` the algebra ramifies at ``p``
    iff ``b`` is a non-residue mod ``p``.
    """
    a, b = squarefree_part(a), squarefree_part(b)
    if p == 2 or not is_prime(p):
        raise ValueError("residue rule needs an odd prime")
    if (valuation(a, p) % 2) == (valuation(b, p) % 2):
        raise ValueError(f"{p} must divide exactly one of {a}, {b}")
    other = b if a % p == 0 else a
    return legendre(other, p) == -1


def splits_in_quadratic(v, d):
    """Whether the place ``v`` splits in ``Q(sqrt(d))``."""
    d = squarefree_part(d)
    if d == 1:
        raise ValueError("d must not be a square")
    if v == INF:
        return d > 0
    if d % v == 0:
        return False
    if v == 2:
        # d odd here: 1 mod 8 splits, 5 mod 8 inert, 3 mod 4 ramifies
        return d % 8 == 1
    return legendre(d, v) == 1


def has_torsion(algebra, n):
    """Whether ``Q*/Z(Q*)`` has an element of order ``n`` (``n`` in 3, 4, 6).

    An element of order ``n`` exists iff ``Q(zeta_n)`` embeds in the algebra,
    iff no ramified place splits in ``Q(zeta_n)``.
    """
    if n not in TORSION_FIELDS:
        raise ValueError(f"torsion order must be 3, 4 or 6, got {n}")
    d = TORSION_FIELDS[n]
    return not any(splits_in_quadratic(v, d) for v in ramification_set(algebra))


def quaternion_type_algebra(a, b):
    """The algebra ``(-a, -b / Q)`` whose pure norm form is ``<a, b, ab>``."""
    return QuaternionAlgebra(-a, -b)


def ram_matches_hasse(a, b):
    """Odd primes ramified in ``(-a,-b/Q)`` are exactly those with eps_p(<a,b,ab,1,-1>) = -1.

    Only odd primes are compared. At 2 and at infinity the two sides always
    disagree, since ``(-1,-1)`` is ramified there; see :func:`dyadic_relation`.
    """
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    ram = ramification_set(quaternion_type_algebra(a, b))
    q = DiagonalForm.of(a, b, a * b, 1, -1)
    for p in prime_support([a, b]):
        if p == 2:
            continue
        if (p in ram) != (hasse_witt(q, p) == -1):
            return False
    return not any(p != 2 and p != INF and p not in prime_support([a, b]) for p in ram)


def dyadic_relation(a, b):
    """``(-a, -b)_2 == -eps_2(<a, b, ab, 1, -1>)`` for positive ``a, b``."""
    q = DiagonalForm.of(a, b, a * b, 1, -1)
    return hilbert_symbol(-a, -b, 2) == -hasse_witt(q, 2)
