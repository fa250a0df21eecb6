"""Forms with prescribed invariants.

The existence theorem for rational quadratic forms (Serre, Ch. IV) is
non-constructive. Here every existence claim is turned into a bounded,
deterministic search whose result is certified by recomputing invariants, so a
search bug can only produce a failure, never a wrong form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

from .arith import factor, legendre, prime_support, primes_up_to, split_valuation, squarefree_part
from .errors import Infeasible, SearchExhausted
from .qform import (
    INF,
    DiagonalForm,
    InvariantProfile,
    candidate_places,
    direct_sum,
    discriminant_class,
    hasse_witt,
    invariant_profile,
    p_excess,
    projectively_equivalent,
    rationally_equivalent,
    scale,
    signature,
)


class Feasibility(NamedTuple):
    feasible: bool
    violated: tuple

    def __bool__(self):
        return self.feasible


def is_local_square(x, v):
    """Whether the nonzero rational ``x`` is a square in Q_v."""
    if v == INF:
        return x > 0
    k, u = split_valuation(x, v)
    if k % 2:
        return False
    u = u.numerator * u.denominator
    if v == 2:
        return u % 8 == 1
    return legendre(u, v) == 1


def serre_feasible(profile, rank):
    """Check the five existence conditions; ``violated`` lists their numbers."""
    violated = []
    r, s = profile.signature
    negative = sorted(profile.negative_places)
    if profile.epsilon_infinity == -1:
        negative.append(INF)
    if len(negative) % 2:
        violated.append(1)
    if rank == 1 and negative:
        violated.append(2)
    elif rank == 2 and any(is_local_square(-profile.discriminant_class, v) for v in negative):
        violated.append(2)
    if r < 0 or s < 0 or r + s != rank:
        violated.append(3)
    if (profile.discriminant_class > 0) != (s % 2 == 0):
        violated.append(4)
    if profile.epsilon_infinity != (-1 if (s * (s - 1) // 2) % 2 else 1):
        violated.append(5)
    return Feasibility(not violated, tuple(violated))


# -- quaternion type -----------------------------------------------------------


@dataclass(frozen=True)
class QuaternionTypeForm:
    """The form ``<a, b, ab, 1, -1>`` for positive integers ``a, b``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("quaternion type needs positive a and b")

    def form(self):
        return DiagonalForm.of(self.a, self.b, self.a * self.b, 1, -1)


def _quaternion_type_profile_matches(a, b, targets, primes):
    q = DiagonalForm.of(a, b, a * b, 1, -1)
    return all((hasse_witt(q, p) == -1) == (p in targets) for p in primes)


def _squarefree(n):
    return squarefree_part(n) == n


def quaternion_representative(q, bound=None, retries=3):
    """Find positive squarefree ``(a, b)`` with ``<a,b,ab,1,-1>`` projectively equal to ``q``.

    Pairs are tried by increasing ``a*b``, ties broken by ``a``.
    """
    if tuple(signature(q)) != (4, 1):
        raise ValueError(f"quaternion type needs signature (4, 1), got {tuple(signature(q))}")
    normalized = scale(q, -discriminant_class(q))
    targets = invariant_profile(normalized).negative_places
    odd = [p for p in targets if p != 2]
    step = math.prod(odd)
    if bound is None:
        bound = math.prod(targets) ** 2 * 4
    for _ in range(retries + 1):
        for n in range(step, bound + 1, step):
            if any(e > 2 for e in factor(n).factors.values()):
                continue
            primes = sorted(set(prime_support([n])) | set(targets) | {2})
            for a in _divisors(n):
                b = n // a
                if not (_squarefree(a) and _squarefree(b)):
                    continue
                if _quaternion_type_profile_matches(a, b, targets, primes):
                    found = QuaternionTypeForm(a, b)
                    if not projectively_equivalent(found.form(), q):
                        raise AssertionError(f"certification failed for {found}")
                    return found
        bound *= 2
    raise SearchExhausted(f"no quaternion-type form with a*b <= {bound // 2} matches {q}")


def _divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small) | {n // d for d in small})


# -- forms with a prescribed profile -----------------------------------------


DEFAULT_MAX_AUX_PRIMES = 4


def _signed_units(pool):
    return sorted(
        math.prod(c) for r in range(len(pool) + 1) for c in itertools.combinations(pool, r)
    )


def _profile_matches(coeffs, profile, primes):
    q = DiagonalForm(coeffs)
    return all(hasse_witt(q, p) == profile.epsilon(p) for p in primes)


def _candidates(pool, profile):
    # the last coefficient is forced by the discriminant; negatives go last
    r, s = profile.signature
    d = profile.discriminant_class
    units = _signed_units(pool)
    free_pos, free_neg = (r, s - 1) if s else (r - 1, 0)
    for pos in itertools.combinations_with_replacement(units, free_pos):
        for neg in itertools.combinations_with_replacement(units, free_neg):
            head = pos + tuple(-x for x in neg)
            yield head + (squarefree_part(d * math.prod(head)),)


def form_with_profile(profile, rank, max_aux_primes=DEFAULT_MAX_AUX_PRIMES):
    """Construct a diagonal form whose invariant profile is exactly ``profile``."""
    feasibility = serre_feasible(profile, rank)
    if not feasibility:
        raise Infeasible(f"profile violates existence conditions {feasibility.violated}")
    base = sorted(set(profile.negative_places) | set(prime_support([profile.discriminant_class])) | {2})
    aux = [p for p in primes_up_to(200) if p not in base]
    for extra in range(max_aux_primes + 1):
        pool = base + aux[:extra]
        primes = sorted(set(pool))
        for coeffs in _candidates(pool, profile):
            if _profile_matches(coeffs, profile, primes):
                form = DiagonalForm(coeffs)
                if invariant_profile(form) != profile:
                    raise AssertionError(f"certification failed for {form}")
                return form
    raise SearchExhausted(
        f"no form found for {profile} using up to {max_aux_primes} auxiliary primes"
    )


def _excess_epsilon(e, d, rank, p):
    reference = DiagonalForm((d,) + (1,) * (rank - 1))
    return 1 if e == p_excess(reference, p) else -1


def complement_form(q, block):
    """A form ``r`` with ``r + block`` rationally equivalent to ``q``.

    The residual p-excesses are ``e_p(q) - e_p(block)``; together with the
    residual discriminant they fix the residual Hasse-Witt invariants.
    """
    n = q.rank - block.rank
    if n < 1:
        raise Infeasible(f"block of rank {block.rank} does not fit in rank {q.rank}")
    sq, sb = signature(q), signature(block)
    sig = (sq[0] - sb[0], sq[1] - sb[1])
    if min(sig) < 0:
        raise Infeasible(f"signature {tuple(sq)} cannot contain {tuple(sb)}")
    d = squarefree_part(discriminant_class(q) * discriminant_class(block))
    primes = sorted(set(candidate_places(q)) | set(candidate_places(block)) | set(prime_support([d])))
    negative = set()
    for p in primes:
        e = (p_excess(q, p) - p_excess(block, p)) % 8
        if _excess_epsilon(e, d, n, p) == -1:
            negative.add(p)
    s = sig[1]
    profile = InvariantProfile(
        signature=sig,
        discriminant_class=d,
        negative_places=frozenset(negative),
        epsilon_infinity=-1 if (s * (s - 1) // 2) % 2 else 1,
    )
    r = form_with_profile(profile, n)
    if not rationally_equivalent(direct_sum(r, block), q):
        raise AssertionError(f"complement {r} does not reassemble {q}")
    return r
