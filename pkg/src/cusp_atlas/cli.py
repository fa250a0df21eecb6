"""Command-line interface. Every subcommand prints one JSON document.

Exit codes: 0 success, 1 negative answer under ``--fail-on-no``, 2 usage or
invalid input, 3 computation limit reached (factoring bound, search bound).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import cusp, linalg, qform, quat, unipotent
from .construct import quaternion_representative
from .errors import ComputationError, CuspAtlasError

SCHEMA = "cusp-atlas/1"

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_COMPUTATION = 3


class UsageError(Exception):
    pass


class VerificationFailed(ComputationError):
    pass


def parse_rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_form(text):
    """``"1,1,7,7,-1"`` or with fractions ``"1/2,3"``."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise UsageError("empty form literal")
    coeffs = [parse_rational(p) for p in parts]
    if any(c == 0 for c in coeffs):
        raise UsageError(f"zero coefficient in form literal {text!r}")
    return qform.DiagonalForm(tuple(coeffs))


def parse_matrix(text):
    """Rows separated by ``;``, entries by ``,``: ``"1,1;0,1"``."""
    rows = [[parse_rational(x) for x in row.split(",")] for row in text.split(";") if row.strip()]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise UsageError(f"malformed matrix literal {text!r}")
    return linalg.as_matrix(rows)


def parse_vector(text):
    return tuple(parse_rational(x) for x in text.split(","))


def parse_cusp(text):
    try:
        return cusp.CuspType.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _s(x):
    return str(x)


def _form(q):
    return [_s(c) for c in q.coefficients]


def _matrix(m):
    return [[_s(x) for x in row] for row in m]


def _envelope(command, inputs, **payload):
    doc = {"schema": SCHEMA, "command": command, "input": inputs}
    doc.update(payload)
    return doc


# -- subcommands ----------------------------------------------------------------


def cmd_invariants(args):
    q = parse_form(args.form)
    profile = qform.invariant_profile(q)
    places = qform.candidate_places(q)
    doc = _envelope(
        "invariants",
        {"form": _form(q)},
        rank=_s(q.rank),
        signature=[_s(x) for x in profile.signature],
        discriminant=_s(profile.discriminant_class),
        hasse_witt={_s(p): _s(qform.hasse_witt(q, p)) for p in places},
        epsilon_infinity=_s(profile.epsilon_infinity),
        negative_places=[_s(p) for p in profile.bad_primes],
        p_excess={_s(p): _s(qform.p_excess(q, p)) for p in places},
    )
    return doc, True


def cmd_equiv(args):
    q1, q2 = parse_form(args.lhs), parse_form(args.rhs)
    verdict = qform.rationally_equivalent(q1, q2)
    doc = _envelope(
        "equiv",
        {"lhs": _form(q1), "rhs": _form(q2)},
        equivalent=verdict.equivalent,
        reason=verdict.reason,
    )
    return doc, verdict.equivalent


def cmd_proj_equiv(args):
    q1, q2 = parse_form(args.lhs), parse_form(args.rhs)
    result = qform.projectively_equivalent(q1, q2)
    doc = _envelope("proj-equiv", {"lhs": _form(q1), "rhs": _form(q2)}, equivalent=result)
    return doc, result


def _class_doc(c):
    return {
        "bad_primes": [_s(p) for p in c.bad_primes],
        "representative": _form(c.representative),
    }


def cmd_classify(args):
    q = parse_form(args.form)
    c = cusp.class_of(q)
    admissible = cusp.classify(c)
    doc = _envelope(
        "classify",
        {"form": _form(q)},
        commensurability_class=_class_doc(c),
        admissible=[t.value for t in admissible],
        obstructed=[t.value for t in cusp.CuspType if t not in admissible],
    )
    if args.cusp:
        t = parse_cusp(args.cusp)
        doc["cusp"] = t.value
        doc["admits"] = t in admissible
        return doc, t in admissible
    return doc, len(admissible) == len(cusp.CuspType)


def cmd_witness(args):
    q = parse_form(args.form)
    t = parse_cusp(args.cusp)
    c = cusp.class_of(q)
    inputs = {"form": _form(q), "cusp": t.value}
    if not cusp.admits(c, t):
        doc = _envelope(
            "witness", inputs, admissible=False, commensurability_class=_class_doc(c), witness=None
        )
        return doc, False
    w = cusp.witness(c, t)
    if args.verify and not qform.projectively_equivalent(w.form, q):
        raise VerificationFailed(f"witness {w.form} is not projectively equivalent to {q}")
    doc = _envelope(
        "witness",
        inputs,
        admissible=True,
        commensurability_class=_class_doc(c),
        witness={
            "form": _form(w.form),
            "invariant_gram": _matrix(w.invariant_gram),
            "holonomy_generators": [_matrix(g) for g in cusp.holonomy_rep(t).generators],
            "checks": [{"check": name, "passed": ok} for name, ok in w.checks],
        },
    )
    return doc, True


def cmd_quat(args):
    try:
        a, b = int(args.a), int(args.b)
    except ValueError:
        raise UsageError("--a and --b must be integers") from None
    if a == 0 or b == 0:
        raise UsageError("--a and --b must be nonzero")
    algebra = quat.QuaternionAlgebra(a, b)
    ram = sorted(algebra.ramification_set())
    doc = _envelope(
        "quat",
        {"a": _s(a), "b": _s(b)},
        normalized={"a": _s(algebra.a), "b": _s(algebra.b)},
        ramification=[qform.place_label(v) for v in ram],
        division_algebra=bool(ram),
        torsion={_s(n): quat.has_torsion(algebra, n) for n in (3, 4, 6)},
    )
    if args.torsion is not None:
        n = int(args.torsion)
        if n not in (3, 4, 6):
            raise UsageError("--torsion must be 3, 4 or 6")
        return doc, quat.has_torsion(algebra, n)
    return doc, True


def cmd_classify_5d(args):
    q = parse_form(args.form)
    types = [parse_cusp(args.cusp)] if args.cusp else list(cusp.CuspType)
    verdicts = {t.value: cusp.admits_5d_product(q, t).value for t in types}
    doc = _envelope(
        "classify-5d",
        {"form": _form(q)},
        negative_places=[_s(p) for p in qform.invariant_profile(q).bad_primes],
        product_with_circle=verdicts,
    )
    return doc, all(v == cusp.FiveDVerdict.NOT_OBSTRUCTED.value for v in verdicts.values())


def cmd_embed(args):
    q3 = parse_form(args.q3)
    if q3.rank != 3:
        raise UsageError("--q3 must have rank 3")
    A = parse_matrix(args.A) if args.A else linalg.identity(3)
    w = parse_vector(args.w) if args.w else (0, 0, 0)
    if len(A) != 3 or len(A[0]) != 3 or len(w) != 3:
        raise UsageError("A must be 3x3 and w must have 3 entries")
    phi = cusp.ParabolicIsometry(A, w)
    m = cusp.parabolic_embed(phi, q3)
    Q = qform.direct_sum(q3, qform.DiagonalForm.of(1, -1)).matrix()
    y0 = cusp.HOROSPHERE_CENTER
    checks = [
        {"check": "preserves_form", "passed": linalg.congruence(Q, m) == Q},
        {"check": "fixes_y0", "passed": linalg.matvec(m, y0) == tuple(Fraction(x) for x in y0)},
    ]
    doc = _envelope(
        "embed",
        {"q3": _form(q3), "A": _matrix(A), "w": [_s(x) for x in phi.w]},
        matrix=_matrix(m),
        checks=checks,
    )
    return doc, all(c["passed"] for c in checks)


def cmd_unipotent(args):
    if args.action == "reconstruct":
        if not args.matrix or args.k is None:
            raise UsageError("reconstruct needs --matrix and --k")
        m = parse_matrix(args.matrix)
        u = unipotent.UnipotentMatrix.of(m)
        coeffs = unipotent.reconstruct_from_power(u, args.k)
        ok = unipotent.reassemble(m, args.k, coeffs) == m
        doc = _envelope(
            "unipotent",
            {"action": "reconstruct", "matrix": _matrix(m), "k": _s(args.k)},
            nilpotency_index=_s(u.nilpotency_index),
            coefficients=[_s(c) for c in coeffs],
            reassembly_exact=ok,
        )
        if not ok:
            raise VerificationFailed("reassembly did not reproduce the matrix")
        return doc, True
    if not args.poly or args.n is None:
        raise UsageError("binomial needs --poly and --n")
    poly = [parse_rational(c) for c in args.poly.split(",")]
    y, x = parse_rational(args.y), parse_rational(args.x)
    value = unipotent.binomial_g(poly, args.n, y, x)
    doc = _envelope(
        "unipotent",
        {"action": "binomial", "poly": [_s(c) for c in poly], "n": _s(args.n), "y": _s(y), "x": _s(x)},
        value=_s(value),
    )
    return doc, True


def cmd_enumerate(args):
    t = parse_cusp(args.avoid)
    if t.obstruction_modulus is None:
        raise UsageError(f"{t.value} occurs in every class; nothing to enumerate")
    if args.prime_bound < 1:
        raise UsageError("--prime-bound must be positive")
    classes = cusp.enumerate_avoiding(t, args.prime_bound)
    if args.verify:
        for c in classes:
            if cusp.admits(c, t):
                raise VerificationFailed(f"class {c} admits {t.value}")
            if qform.invariant_profile(c.representative) != c.profile:
                raise VerificationFailed(f"representative of {c} does not realize its profile")
        for i, c1 in enumerate(classes):
            for c2 in classes[i + 1 :]:
                if qform.projectively_equivalent(c1.representative, c2.representative):
                    raise VerificationFailed(f"classes {c1} and {c2} coincide")
    odd = lambda c: max(c.bad_primes)  # noqa: E731
    doc = _envelope(
        "enumerate",
        {"avoid": t.value, "prime_bound": _s(args.prime_bound)},
        modulus=_s(t.obstruction_modulus),
        classes=[dict(prime=_s(odd(c)), **_class_doc(c)) for c in classes],
    )
    return doc, bool(classes)


def cmd_quaternion_type(args):
    q = parse_form(args.form)
    rep = quaternion_representative(q)
    doc = _envelope(
        "quaternion-type",
        {"form": _form(q)},
        a=_s(rep.a),
        b=_s(rep.b),
        form=_form(rep.form()),
    )
    return doc, True


# -- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="cusp-atlas", description=__doc__.splitlines()[0])
    output = parser.add_mutually_exclusive_group()
    output.add_argument("--json", dest="pretty", action="store_false", help="compact JSON (default)")
    output.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")
    parser.set_defaults(pretty=False)
    parser.add_argument(
        "--fail-on-no", action="store_true", help="exit 1 when the answer is negative"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", help="signature, discriminant, Hasse-Witt invariants")
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_invariants)

    for name, func, helptext in (
        ("equiv", cmd_equiv, "rational equivalence"),
        ("proj-equiv", cmd_proj_equiv, "projective equivalence"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--lhs", required=True)
        p.add_argument("--rhs", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("classify", help="cusp types in the class of a signature (4,1) form")
    p.add_argument("--form", required=True)
    p.add_argument("--cusp")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="certified witness form for a cusp type")
    p.add_argument("--form", required=True)
    p.add_argument("--cusp", required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("quaternion-type", help="quaternion-type representative <a,b,ab,1,-1>")
    p.add_argument("--form", required=True)
    p.set_defaults(func=cmd_quaternion_type)

    p = sub.add_parser("quat", help="ramification and torsion of (a,b/Q)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--torsion")
    p.set_defaults(func=cmd_quat)

    p = sub.add_parser("classify-5d", help="obstruction for B x S^1 cusps, signature (5,1)")
    p.add_argument("--form", required=True)
    p.add_argument("--cusp")
    p.set_defaults(func=cmd_classify_5d)

    p = sub.add_parser("embed", help="parabolic embedding of v -> Av + w")
    p.add_argument("--q3", required=True)
    p.add_argument("--A", help='rows separated by ";", e.g. "1,0,0;0,1,0;0,0,1"')
    p.add_argument("--w", help='translation vector, e.g. "1,0,0"')
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("unipotent", help="unipotent reconstruction and binomial sums")
    p.add_argument("action", choices=("reconstruct", "binomial"))
    p.add_argument("--matrix")
    p.add_argument("--k", type=int)
    p.add_argument("--poly", help="ascending coefficients, e.g. 0,0,1 for x^2")
    p.add_argument("--n", type=int)
    p.add_argument("--y", default="1")
    p.add_argument("--x", default="0")
    p.set_defaults(func=cmd_unipotent)

    p = sub.add_parser("enumerate", help="classes avoiding a twisted cusp type")
    p.add_argument("--avoid", required=True)
    p.add_argument("--prime-bound", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        doc, positive = args.func(args)
    except UsageError as exc:
        print(f"cusp-atlas: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except ComputationError as exc:
        print(f"cusp-atlas: computation error: {exc}", file=stderr)
        return EXIT_COMPUTATION
    except (CuspAtlasError, ValueError) as exc:
        print(f"cusp-atlas: invalid input: {exc}", file=stderr)
        return EXIT_USAGE
    if args.pretty:
        text = json.dumps(doc, indent=2)
    else:
        text = json.dumps(doc, separators=(",", ":"))
    print(text, file=stdout)
    if args.fail_on_no and not positive:
        return EXIT_NO
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
