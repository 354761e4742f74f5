"""Command-line front end.

Verbs map onto the library: ``degenerate`` and ``witness`` run the
normalization + torus-limit pipeline, ``curve`` adds per-sample closure
witnesses, ``factor2`` runs the plane factorization, ``nagata`` prints the
gallery pair, ``random-tame`` samples seeded tame words, and ``selfcheck``
runs the seeded verification suites.  Output is deterministic for a fixed
invocation; ``--json`` renders the same data as one JSON object.

Exit codes: 0 success, 1 parse or usage error, 2 a certified failure
(the certificate is printed, machine-checkable, never just a message).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import inf

from .degeneration import closure_witness, witness_report
from .endo import Endo
from .errors import (
    AlgebraError,
    CertificateError,
    ConsistencyError,
    MissingInverse,
    ParseError,
)
from .groups import format_word, nagata, random_tame_word
from .parsing import parse_endo, parse_rational_list
from .planefactor import factor_plane
from . import selfcheck as selfcheck_suites


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; this tool reserves 2 for certified
    # mathematical failures, so usage errors are rerouted to exit 1.
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="polyauto", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="verb", required=True)

    def endo_operand(p):
        p.add_argument("endo", help="endomorphism text '[f1, ..., fn]', or '-' for stdin")

    p = sub.add_parser("info", help="degree, affine/triangular flags, Jacobian")
    endo_operand(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("compose", help="compose endomorphisms left to right")
    p.add_argument("endos", nargs="+", help="two or more endomorphism texts")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("apply", help="evaluate an endomorphism at a rational point")
    endo_operand(p)
    p.add_argument("point", help="comma-separated rationals, e.g. 1,-2/3")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("degenerate", help="normalized triangular limit witness")
    endo_operand(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("witness", help="full degeneration report")
    endo_operand(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("curve", help="specializations of the conjugation curve")
    endo_operand(p)
    p.add_argument("--samples", default="1,-1,2,1/2", help="nonzero rationals, comma-separated")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("factor2", help="factor a plane automorphism into generators")
    endo_operand(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("nagata", help="print the Nagata automorphism")
    p.add_argument("--inverse", action="store_true", help="print the inverse instead")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("random-tame", help="sample a seeded tame word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--length", type=int, default=4)
    p.add_argument("--dmax", type=int, default=3)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("selfcheck", help="run the seeded verification suites")
    p.add_argument("--cases", type=int, default=100, help="cases per suite")
    p.add_argument("--shear-cases", type=int, default=25)
    p.add_argument("--json", action="store_true")

    return parser


def _load_endo(text: str) -> Endo:
    if text == "-":
        text = sys.stdin.read()
    return parse_endo(text)


def _degree_str(value) -> str:
    return "-inf" if value == float("-inf") else str(value)


def _valuations_json(valuations):
    return [None if v == inf else v for v in valuations]


def _report_json(report) -> dict:
    return {
        "w": report.data.valuation,
        "d": report.data.source_degree,
        "h": str(report.data.limit_shear),
        "valuations": _valuations_json(report.limit_report.valuations),
        "pass": report.limit_report.passed,
        "witness": str(report.witness),
        "g0": str(report.data.obstruction),
        "normalized": str(report.normalization.result),
        "curve": [str(f) for f in report.curve.components],
    }


def _emit(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _cmd_info(args) -> int:
    sigma = _load_endo(args.endo)
    jacobian = sigma.jacobian_det()
    payload = {
        "endo": str(sigma),
        "n": sigma.n,
        "degree": _degree_str(max(f.total_degree() for f in sigma.components)),
        "affine": sigma.is_affine(),
        "triangular": sigma.is_triangular(),
        "identity_affine_part": sigma.has_identity_affine_part(),
        "jacobian": str(jacobian),
    }
    _emit(
        payload,
        args.json,
        [
            f"endo: {payload['endo']}",
            f"n = {payload['n']}",
            f"degree = {payload['degree']}",
            f"affine: {payload['affine']}",
            f"triangular: {payload['triangular']}",
            f"identity affine part: {payload['identity_affine_part']}",
            f"jacobian determinant: {payload['jacobian']}",
        ],
    )
    return 0


def _cmd_compose(args) -> int:
    if len(args.endos) < 2:
        raise _UsageError("compose needs at least two endomorphisms")
    endos = [_load_endo(text) for text in args.endos]
    result = endos[0]
    for other in endos[1:]:
        result = result.compose(other)
    _emit({"endo": str(result)}, args.json, [str(result)])
    return 0


def _cmd_apply(args) -> int:
    sigma = _load_endo(args.endo)
    point = parse_rational_list(args.point)
    image = sigma(point)
    text = "(" + ", ".join(str(v) for v in image) + ")"
    _emit({"image": [str(v) for v in image]}, args.json, [text])
    return 0


def _cmd_degenerate(args) -> int:
    report = witness_report(_load_endo(args.endo))
    _emit(
        _report_json(report),
        args.json,
        [
            f"witness: {report.witness}",
            f"w = {report.data.valuation}",
        ],
    )
    return 0


def _cmd_witness(args) -> int:
    report = witness_report(_load_endo(args.endo))
    record = report.normalization
    lines = [
        f"source: {report.source}",
        f"normalized: {record.result}",
        "affine correction: "
        + ("applied" if record.affine_inverse is not None else "none"),
        "transposition: "
        + (
            f"x{record.transposition[0]} <-> x{record.transposition[1]}"
            if record.transposition
            else "none"
        ),
        f"g0 = {report.data.obstruction}",
        f"w = {report.data.valuation}",
        f"d = {report.data.source_degree}",
        f"h = {report.data.limit_shear}",
        f"curve: [{', '.join(str(f) for f in report.curve.components)}]",
        f"witness: {report.witness}",
        "t-valuations of curve - witness: "
        + ", ".join("inf" if v == inf else str(v) for v in report.limit_report.valuations),
        f"pass: {report.limit_report.passed}",
    ]
    _emit(_report_json(report), args.json, lines)
    return 0


def _cmd_curve(args) -> int:
    sigma = _load_endo(args.endo)
    samples = parse_rational_list(args.samples)
    report = witness_report(sigma)
    witnesses = closure_witness(sigma, samples)
    payload = _report_json(report)
    payload["samples"] = [
        {"t0": str(s.t0), "endo": str(s.image), "degree": s.image.degree()}
        for s in witnesses
    ]
    lines = []
    for s in witnesses:
        lines.append(f"t = {s.t0}: {s.image} (degree {s.image.degree()})")
    lines.append(f"limit: {report.witness}")
    lines.append(f"w = {report.data.valuation}, d = {report.data.source_degree}")
    lines.append(f"verify_limit pass: {report.limit_report.passed}")
    _emit(payload, args.json, lines)
    return 0


def _cmd_factor2(args) -> int:
    sigma = _load_endo(args.endo)
    factorization = factor_plane(sigma)
    word_text = format_word(factorization.word)
    payload = {
        "endo": str(sigma),
        "word": word_text,
        "letters": len(factorization.word),
        "steps": [str(step) for step in factorization.steps],
        "ok": True,
    }
    lines = [f"word: {word_text}"]
    lines.extend(f"step {i + 1}: {step}" for i, step in enumerate(factorization.steps))
    lines.append(f"letters: {len(factorization.word)}")
    _emit(payload, args.json, lines)
    return 0


def _cmd_nagata(args) -> int:
    forward, backward = nagata()
    chosen = backward if args.inverse else forward
    _emit(
        {"nagata": str(forward), "inverse": str(backward)},
        args.json,
        [str(chosen)],
    )
    return 0


def _cmd_random_tame(args) -> int:
    word = random_tame_word(args.n, args.seed, args.length, args.dmax)
    endo = word.to_endo()
    payload = {
        "n": args.n,
        "seed": args.seed,
        "length": args.length,
        "dmax": args.dmax,
        "word": format_word(word),
        "endo": str(endo),
    }
    _emit(payload, args.json, [f"word: {payload['word']}", f"endo: {payload['endo']}"])
    return 0


def _cmd_selfcheck(args) -> int:
    # timings are deliberately omitted: identical invocations must produce
    # byte-identical output
    results = selfcheck_suites.run_all(args.cases, args.shear_cases)
    payload = {
        "suites": [
            {
                "name": r.name,
                "cases": r.cases,
                "failures": list(r.failures),
                "passed": r.passed,
            }
            for r in results
        ],
        "pass": all(r.passed for r in results),
    }
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: {r.cases - len(r.failures)}/{r.cases} cases")
        lines.extend(f"  {failure}" for failure in r.failures)
    lines.append("all suites passed" if payload["pass"] else "FAILURES present")
    _emit(payload, args.json, lines)
    return 0 if payload["pass"] else 2


_COMMANDS = {
    "info": _cmd_info,
    "compose": _cmd_compose,
    "apply": _cmd_apply,
    "degenerate": _cmd_degenerate,
    "witness": _cmd_witness,
    "curve": _cmd_curve,
    "factor2": _cmd_factor2,
    "nagata": _cmd_nagata,
    "random-tame": _cmd_random_tame,
    "selfcheck": _cmd_selfcheck,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.verb](args)
    except _UsageError as error:
        print(f"usage error: {error}", file=sys.stderr)
        return 1
    except ParseError as error:
        print(f"parse error: {error}", file=sys.stderr)
        return 1
    except CertificateError as error:
        json_mode = "--json" in (argv if argv is not None else sys.argv[1:])
        certificate = {"error": type(error).__name__, "message": str(error)}
        certificate.update(
            {key: value for key, value in error.certificate.items()}
        )
        if json_mode:
            print(json.dumps(certificate, indent=2))
        else:
            print(f"{type(error).__name__}: {error}")
            for key, value in error.certificate.items():
                print(f"  {key}: {value}")
        return 2
    except (ConsistencyError, MissingInverse):
        raise
    except AlgebraError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
