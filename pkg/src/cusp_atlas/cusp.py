"""Which orientable flat 3-manifolds occur as cusp cross-sections in a
commensurability class of cusped arithmetic hyperbolic 4-manifolds.

A class is indexed by a signature (4, 1) form up to projective equivalence,
normalized here to discriminant -1. Three cusp types always occur. The
1/4-twist is excluded exactly when some prime p = 1 (mod 4) has eps_p = -1,
and the 1/3- and 1/6-twists exactly when some p = 1 (mod 3) does.

Two independent routes reach that verdict: :func:`admits` reads the
congruence condition off the Hasse-Witt invariants, while
:func:`torsion_obstruction` goes through the quaternion algebra of the class.
:func:`witness` builds the positive side constructively.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .arith import primes_up_to
from .construct import form_with_profile, quaternion_representative
from .errors import Inadmissible, NegativeK, NotAnIsometry, SearchExhausted, WrongDiscriminant
from .qform import (
    DiagonalForm,
    InvariantProfile,
    diagonalize,
    direct_sum,
    discriminant_class,
    invariant_profile,
    projectively_equivalent,
    rationally_equivalent,
    scale,
    signature,
)
from .quat import has_torsion, quaternion_type_algebra


class CuspType(enum.Enum):
    TORUS = "torus"
    HALF_TWIST = "half_twist"
    HANTZSCHE_WENDT = "hantzsche_wendt"
    THIRD_TWIST = "third_twist"
    QUARTER_TWIST = "quarter_twist"
    SIXTH_TWIST = "sixth_twist"

    @property
    def holonomy_order(self):
        return _HOLONOMY_ORDER[self]

    @property
    def holonomy_group(self):
        return "Z/2 x Z/2" if self is CuspType.HANTZSCHE_WENDT else f"Z/{self.holonomy_order}"

    @property
    def obstruction_modulus(self):
        """Primes p = 1 mod this with eps_p = -1 exclude the type; None if never excluded."""
        return _MODULUS.get(self)

    @property
    def torsion_order(self):
        """Order of torsion in SO(q3, Q) needed to embed the holonomy (3 or 4)."""
        return _TORSION.get(self)

    @classmethod
    def parse(cls, name):
        try:
            return cls(name)
        except ValueError:
            names = ", ".join(t.value for t in cls)
            raise ValueError(f"unknown cusp type {name!r}; expected one of {names}") from None


_HOLONOMY_ORDER = {
    CuspType.TORUS: 1,
    CuspType.HALF_TWIST: 2,
    CuspType.HANTZSCHE_WENDT: 4,
    CuspType.THIRD_TWIST: 3,
    CuspType.QUARTER_TWIST: 4,
    CuspType.SIXTH_TWIST: 6,
}
_MODULUS = {CuspType.THIRD_TWIST: 3, CuspType.QUARTER_TWIST: 4, CuspType.SIXTH_TWIST: 3}
_TORSION = {CuspType.THIRD_TWIST: 3, CuspType.QUARTER_TWIST: 4, CuspType.SIXTH_TWIST: 3}
TWISTED = (CuspType.THIRD_TWIST, CuspType.QUARTER_TWIST, CuspType.SIXTH_TWIST)


# -- commensurability classes ----------------------------------------------


@dataclass(frozen=True, eq=False)
class CommensurabilityClass:
    """Profile of a discriminant -1 signature (4, 1) form plus a representative.

    Two classes are equal iff their profiles are, which for normalized
    discriminant is projective equivalence of the underlying forms.
    """

    profile: InvariantProfile
    representative: DiagonalForm

    def __post_init__(self):
        p = self.profile
        if tuple(p.signature) != (4, 1) or p.discriminant_class != -1 or p.epsilon_infinity != 1:
            raise ValueError(f"not the profile of a normalized signature (4, 1) form: {p}")
        if invariant_profile(self.representative) != p:
            raise ValueError("representative does not realize the profile")

    @property
    def bad_primes(self):
        """Finite primes with eps_p = -1."""
        return self.profile.bad_primes

    @property
    def odd_bad_primes(self):
        return [p for p in self.profile.bad_primes if p != 2]

    def __eq__(self, other):
        if not isinstance(other, CommensurabilityClass):
            return NotImplemented
        return self.profile == other.profile

    def __hash__(self):
        return hash(self.profile)

    def __repr__(self):
        return f"CommensurabilityClass(bad_primes={self.bad_primes}, representative={self.representative})"


def _require_signature(q, expected):
    if tuple(signature(q)) != expected:
        raise ValueError(f"expected signature {expected}, got {tuple(signature(q))}")


def class_of(q):
    """The commensurability class of the signature (4, 1) form ``q``."""
    _require_signature(q, (4, 1))
    representative = scale(q, -discriminant_class(q)).square_reduced()
    return CommensurabilityClass(invariant_profile(representative), representative)


def class_with_bad_primes(primes):
    """The class whose finite eps_p = -1 places are exactly ``primes``."""
    profile = InvariantProfile((4, 1), -1, frozenset(primes), 1)
    return CommensurabilityClass(profile, form_with_profile(profile, 5))


def admits(c, t):
    """Whether the class contains a manifold with a cusp of type ``t``."""
    m = t.obstruction_modulus
    if m is None:
        return True
    return not any(p % m == 1 for p in c.bad_primes)


def classify(q):
    """The cusp types occurring in the class of ``q``, in declaration order."""
    c = q if isinstance(q, CommensurabilityClass) else class_of(q)
    return [t for t in CuspType if admits(c, t)]


def torsion_obstruction(c, n):
    """True when ``SO(q3, Q)`` has no ``n``-torsion (``n`` in 3, 4).

    Computed through the quaternion algebra ``(-a, -b / Q)`` of a
    quaternion-type representative ``<a, b, ab, 1, -1>`` of the class.
    """
    if n not in (3, 4):
        raise ValueError("torsion order must be 3 or 4")
    rep = quaternion_representative(c.representative)
    return not has_torsion(quaternion_type_algebra(rep.a, rep.b), n)


# -- holonomy ------------------------------------------------------------------


@dataclass(frozen=True)
class HolonomyRep:
    """Generators of a finite holonomy group inside SL(3, Z)."""

    cusp_type: CuspType
    generators: tuple

    @property
    def group_order(self):
        return len(self.elements())

    @property
    def generator_matrix(self):
        return self.generators[0]

    def elements(self):
        """All group elements, closed under multiplication from the identity."""
        group = [linalg.identity(3)]
        frontier = list(group)
        while frontier:
            new = []
            for g in frontier:
                for h in self.generators:
                    x = linalg.matmul(g, h)
                    if x not in group:
                        group.append(x)
                        new.append(x)
            frontier = new
        return group


def element_order(a, limit=24):
    power = a
    for k in range(1, limit + 1):
        if power == linalg.identity(len(a)):
            return k
        power = linalg.matmul(power, a)
    raise ValueError("matrix has no finite order below the limit")


_RHO = {
    CuspType.TORUS: [[[1, 0, 0], [0, 1, 0], [0, 0, 1]]],
    CuspType.HALF_TWIST: [[[1, 0, 0], [0, -1, 0], [0, 0, -1]]],
    CuspType.HANTZSCHE_WENDT: [
        [[1, 0, 0], [0, -1, 0], [0, 0, -1]],
        [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
    ],
    CuspType.THIRD_TWIST: [[[-1, -1, 0], [1, 0, 0], [0, 0, 1]]],
    CuspType.QUARTER_TWIST: [[[0, 1, 0], [-1, 0, 0], [0, 0, 1]]],
    CuspType.SIXTH_TWIST: [[[0, -1, 0], [1, 1, 0], [0, 0, 1]]],
}


def holonomy_rep(t):
    return HolonomyRep(t, tuple(linalg.as_matrix(g) for g in _RHO[t]))


def is_invariant(h, gram):
    return all(linalg.congruence(gram, a) == gram for a in h.generators)


def invariant_form_average(h, seed):
    """Average ``A^T S A`` over the holonomy group; the result is invariant."""
    seed = linalg.as_matrix(seed)
    if not linalg.is_symmetric(seed):
        raise ValueError("seed must be symmetric")
    group = h.elements()
    total = linalg.zeros(3)
    for a in group:
        total = linalg.add(total, linalg.congruence(seed, a))
    return linalg.smul(Fraction(1, len(group)), total)


# -- witnesses ---------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A form in the class whose positive rank-3 block is holonomy invariant."""

    cusp_type: CuspType
    form: DiagonalForm
    invariant_gram: tuple
    checks: tuple = field(default_factory=tuple)

    @property
    def verified(self):
        return all(ok for _, ok in self.checks)


def _gram_for(t, form):
    a = form.coefficients
    if t in (CuspType.THIRD_TWIST, CuspType.SIXTH_TWIST):
        s, u = a[0], a[2] / 3
        # the +2s off-diagonal variant of 4s x1^2 + 4s x2^2 - 4s x1 x2 + 3u x3^2
        return linalg.as_matrix([[4 * s, 2 * s, 0], [2 * s, 4 * s, 0], [0, 0, 3 * u]])
    return linalg.diag(a[:3])


def _third_twist_product(c):
    primes = c.odd_bad_primes
    base = 1
    for p in primes:
        if p % 3 == 2:
            base *= p
    want_residue = 1 if 3 in primes else 2
    for ab in (base, 2 * base):
        unit = ab
        while unit % 3 == 0:
            unit //= 3
        # eps_3(<ab, 3ab, 3, 1, -1>) = -(u/3) with ab = 3^k u
        if unit % 3 == want_residue:
            return ab
    raise SearchExhausted("no 3-adic adjustment of ab matches eps_3")


def _candidate_form(c, t):
    if t.obstruction_modulus is None:
        rep = quaternion_representative(c.representative)
        return rep.form()
    if t is CuspType.QUARTER_TWIST:
        prod = 1
        for p in c.odd_bad_primes:
            prod *= p
        return DiagonalForm.of(prod, prod, 1, 1, -1)
    ab = _third_twist_product(c)
    return DiagonalForm.of(ab, 3 * ab, 3, 1, -1)


def witness(c, t):
    """Construct and certify a witness form for cusp type ``t`` in class ``c``."""
    if not admits(c, t):
        raise Inadmissible(f"{t.value} does not occur in the class with bad primes {c.bad_primes}")
    form = _candidate_form(c, t)
    gram = _gram_for(t, form)
    h = holonomy_rep(t)
    assembled, _ = diagonalize(_block_sum(gram))
    checks = (
        ("projectively_equivalent_to_class", projectively_equivalent(form, c.representative)),
        ("holonomy_invariant_block", is_invariant(h, gram)),
        ("block_plus_hyperbolic_plane_matches_form", bool(rationally_equivalent(assembled, form))),
    )
    w = Witness(t, form, gram, checks)
    if not w.verified:
        failed = [name for name, ok in checks if not ok]
        raise AssertionError(f"witness for {t.value} failed checks {failed}")
    return w


def _block_sum(gram):
    rows = [list(r) + [0, 0] for r in gram]
    rows.append([0, 0, 0, 1, 0])
    rows.append([0, 0, 0, 0, -1])
    return linalg.as_matrix(rows)


def witness_form(c, t):
    return witness(c, t).form


# -- parabolic embedding -------------------------------------------------------


@dataclass(frozen=True)
class ParabolicIsometry:
    """The Euclidean motion ``v -> A v + w`` with ``A`` in SO(q3, Q)."""

    A: tuple
    w: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", linalg.as_matrix(self.A))
        object.__setattr__(self, "w", tuple(Fraction(x) for x in self.w))

    def compose(self, other):
        """``self o other``."""
        return ParabolicIsometry(
            linalg.matmul(self.A, other.A),
            tuple(x + y for x, y in zip(linalg.matvec(self.A, other.w), self.w)),
        )


HOROSPHERE_CENTER = (0, 0, 0, 1, 1)


def parabolic_embed(phi, q3):
    """The 5x5 matrix of ``phi`` acting on ``q3 + <1, -1>`` and fixing ``(0,0,0,1,1)``.

    Block layout, with ``f(w) = Q3 w`` and ``c = q3(w) / 2``::

        [   A     |  w    |  -w   ]
        [ -f(w)^T A | 1 - c |   c   ]
        [ -f(w)^T A |  -c   | 1 + c ]
    """
    if q3.rank != 3:
        raise ValueError("q3 must have rank 3")
    Q3 = q3.matrix()
    A, w = phi.A, phi.w
    if linalg.congruence(Q3, A) != Q3:
        raise NotAnIsometry("A does not preserve q3")
    fw = linalg.matvec(Q3, w)
    row = tuple(-x for x in linalg.matvec(linalg.transpose(A), fw))
    c = q3.evaluate(w) / 2
    rows = [tuple(A[i]) + (w[i], -w[i]) for i in range(3)]
    rows.append(row + (1 - c, c))
    rows.append(row + (-c, 1 + c))
    return linalg.as_matrix(rows)


def cayley_isometry(q3, skew):
    """``(Q3 + K)^-1 (Q3 - K)`` for skew-symmetric ``K``: a rational element of SO(q3)."""
    Q3 = q3.matrix()
    K = linalg.as_matrix(skew)
    if linalg.add(K, linalg.transpose(K)) != linalg.zeros(3):
        raise ValueError("K must be skew-symmetric")
    return linalg.matmul(linalg.inverse(linalg.add(Q3, K)), linalg.sub(Q3, K))


# -- five dimensions and beyond ----------------------------------------------


class FiveDVerdict(enum.Enum):
    OBSTRUCTED = "obstructed"
    NOT_OBSTRUCTED = "not_obstructed"


def admits_5d_product(q6, t):
    """Obstruction for ``B x S^1`` cusps in the class of a signature (5, 1) form.

    One-directional: NOT_OBSTRUCTED claims nothing about existence.
    """
    _require_signature(q6, (5, 1))
    if discriminant_class(q6) != -1:
        raise WrongDiscriminant(
            f"rank 6 discriminant cannot be rescaled; need -1, got {discriminant_class(q6)}"
        )
    m = t.obstruction_modulus
    if m is None:
        return FiveDVerdict.NOT_OBSTRUCTED
    bad = invariant_profile(q6).negative_places
    return FiveDVerdict.OBSTRUCTED if any(p % m == 1 for p in bad) else FiveDVerdict.NOT_OBSTRUCTED


def restriction_profile(f):
    """Profile of ``f``, asserted equal (at finite places) to that of ``f + <1>``."""
    _require_signature(f, (4, 1))
    if discriminant_class(f) != -1:
        raise WrongDiscriminant(f"need discriminant -1, got {discriminant_class(f)}")
    small = invariant_profile(f)
    big = invariant_profile(direct_sum(f, DiagonalForm.of(1)))
    if small.negative_places != big.negative_places:
        raise AssertionError(f"restriction identity broken for {f}")
    return small


def stabilization_k(n, m):
    """Number of circle factors after which ``B x (S^1)^k`` occurs in every class.

    ``n`` is the dimension of ``B`` and ``m`` the degree of a permutation
    representation of its holonomy; ``n + k + 1`` comes out even.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    k = m - n + 3 if m % 2 == 0 else m - n + 4
    if k < 0:
        raise NegativeK(f"formula gives k = {k} for n = {n}, m = {m}")
    return k


# -- enumeration -------------------------------------------------------------


def enumerate_avoiding(t, prime_bound):
    """One class per prime ``p = 1 (mod m)`` up to ``prime_bound`` avoiding ``t``.

    Each class has bad primes ``{2, p}``; reciprocity forces the companion at 2.
    """
    m = t.obstruction_modulus
    if m is None:
        raise ValueError(f"{t.value} occurs in every class")
    classes = []
    for p in primes_up_to(prime_bound):
        if p % m != 1:
            continue
        c = class_with_bad_primes({2, p})
        if admits(c, t):
            raise AssertionError(f"class for p = {p} unexpectedly admits {t.value}")
        classes.append(c)
    return classes
