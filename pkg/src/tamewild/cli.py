"""Command line interface: ``tamewild <command> [flags]``.

Exit codes: 0 success (a WILD verdict is a successful answer), 2 usage,
3 parse error, 4 precondition violation, 5 not an automorphism, 6 unknown.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

from . import io
from .endomorphism import Endomorphism, EndomorphismError, compose, compose_elementaries, exponent
from .euclid_ring import RingError, get_ring
from .fixtures import FIXTURES, anick_chain, get_fixture
from .free_algebra import (
    AlgebraError,
    FreeAlgebra,
    anticommutative_dimension,
    canonical_mode,
    hall_basis,
    witt_dimension,
)
from .linalg_euclid import MatrixError
from .parser import ParseError, format_element, parse_expression
from .tameness import (
    NOT_AUTOMORPHISM,
    REFUTED,
    TAME,
    UNKNOWN,
    VERIFIED,
    TamenessError,
    decide,
    normal_form_from_factors,
    random_tame,
    replay,
    verify_automorphism_bounded,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_NOT_AUTOMORPHISM = 5
EXIT_UNKNOWN = 6


class PreconditionError(Exception):
    pass


class Output:
    def __init__(self, fmt: str, stream):
        self.structured = fmt == "structured"
        self.stream = stream

    def doc(self, doc):
        self.stream.write(io.dumps(doc))

    def line(self, text: str = ""):
        self.stream.write(text + "\n")


# ---------------------------------------------------------------- helpers


def _algebra(args, rank: Optional[int] = None) -> FreeAlgebra:
    ring = get_ring(args.ring or "Z")
    mode = canonical_mode(args.mode or "lie")
    return FreeAlgebra(rank or args.rank or 3, ring, mode)


def _z(args, A: FreeAlgebra):
    text = args.z if args.z is not None else ("t" if A.ring.name == "Q[t]" else "2")
    return A.ring.parse(text)


def _check_flags_match(args, A: FreeAlgebra):
    if args.ring is not None and get_ring(args.ring) is not A.ring:
        raise PreconditionError(f"--ring {args.ring} disagrees with the input ring {A.ring.name}")
    if args.mode is not None and canonical_mode(args.mode) != A.mode:
        raise PreconditionError(f"--mode {args.mode} disagrees with the input mode {A.mode}")
    if args.rank is not None and args.rank != A.rank:
        raise PreconditionError(f"--rank {args.rank} disagrees with the input rank {A.rank}")


def _load_source(args, source: str) -> Endomorphism:
    if os.path.exists(source):
        phi = io.load_endomorphism(source)
        _check_flags_match(args, phi.algebra)
        return phi
    if source in FIXTURES:
        A = _algebra(args)
        return get_fixture(source, A, _z(args, A))
    raise PreconditionError(f"{source!r} is neither a file nor a fixture ({', '.join(sorted(FIXTURES))})")


def _input(args) -> Endomorphism:
    if args.input and args.fixture:
        raise PreconditionError("give either --input or --fixture, not both")
    if args.input:
        return _load_source(args, args.input)
    if args.fixture:
        if args.fixture not in FIXTURES:
            raise PreconditionError(f"unknown fixture {args.fixture!r}")
        return _load_source(args, args.fixture)
    raise PreconditionError("an input endomorphism is required (--input FILE or --fixture NAME)")


def _require_rank3(phi: Endomorphism):
    if phi.rank != 3:
        raise PreconditionError("this command is defined for rank 3")


def _matrix_text(M) -> str:
    return "[" + "; ".join(" ".join(M.ring.format(a) for a in row) for row in M.rows) + "]"


def _print_endo(out: Output, phi: Endomorphism):
    if phi.is_identity():
        out.line("id")
        return
    for i, f in enumerate(phi.images, 1):
        out.line(f"x{i} -> {format_element(f)}")


# ---------------------------------------------------------------- commands


def cmd_normalize(args, out: Output) -> int:
    A = _algebra(args)
    f = parse_expression(args.expr, A)
    if out.structured:
        out.doc({**io.algebra_document(A), "element": format_element(f)})
    else:
        out.line(format_element(f))
    return EXIT_OK


def cmd_bracket(args, out: Output) -> int:
    A = _algebra(args)
    f = A.bracket(parse_expression(args.left, A), parse_expression(args.right, A))
    if out.structured:
        out.doc({**io.algebra_document(A), "element": format_element(f)})
    else:
        out.line(format_element(f))
    return EXIT_OK


def cmd_compose(args, out: Output) -> int:
    maps = [_load_source(args, s) for s in args.sources]
    result = maps[0]
    for m in maps[1:]:
        if m.algebra != result.algebra:
            raise PreconditionError("operands live in different algebras")
        result = compose(result, m)
    if out.structured:
        out.doc({**io.endomorphism_document(result), "identity": result.is_identity()})
    else:
        _print_endo(out, result)
    return EXIT_OK


def cmd_apply(args, out: Output) -> int:
    phi = _input(args)
    f = phi.apply(parse_expression(args.expr, phi.algebra))
    if out.structured:
        out.doc({**io.algebra_document(phi.algebra), "element": format_element(f)})
    else:
        out.line(format_element(f))
    return EXIT_OK


def _precheck(args, phi: Endomorphism):
    if args.no_verify:
        return None
    return verify_automorphism_bounded(phi, args.degree_bound)


def _verdict_exit(kind: str) -> int:
    if kind == NOT_AUTOMORPHISM:
        return EXIT_NOT_AUTOMORPHISM
    if kind == UNKNOWN:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_decide(args, out: Output) -> int:
    phi = _input(args)
    _require_rank3(phi)
    check = _precheck(args, phi)
    if check is not None and check.status == REFUTED:
        if out.structured:
            out.doc({"verdict": NOT_AUTOMORPHISM, "input": io.endomorphism_document(phi), "reason": check.reason})
        else:
            out.line(f"verdict: {NOT_AUTOMORPHISM}")
            out.line(f"reason: {check.reason}")
        return EXIT_NOT_AUTOMORPHISM
    verdict = decide(phi, args.step_budget)
    code = _verdict_exit(verdict.kind)
    unverified = check is not None and check.status == UNKNOWN and verdict.kind != TAME
    if unverified and code == EXIT_OK:
        code = EXIT_UNKNOWN
    if out.structured:
        out.doc(io.verdict_document(verdict, check))
        return code
    A = phi.algebra
    out.line(f"verdict: {verdict.kind}")
    if check is not None:
        note = f" (inverse found at degree {check.degree})" if check.status == VERIFIED else ""
        out.line(f"automorphism check: {check.status}{note}")
    if verdict.reason:
        out.line(f"reason: {verdict.reason}")
    out.line(f"exponent: {exponent(phi)}")
    out.line(f"steps: {len(verdict.steps)}")
    for n, s in enumerate(verdict.steps, 1):
        d = io.step_document(s, A)
        if s.kind == "coefficient_reduction":
            what = f"f{s.target} -= ({d['quotient']})*f{s.source}"
        elif s.kind == "leading_part_elimination":
            a, b = s.sources
            what = f"f{s.target} -= H(f{a}, f{b}), H = {d['H']}"
        else:
            what = f"linear part factors into {len(s.factors)} elementary/diagonal matrices"
        out.line(f"  {n}. {s.kind}: {what}")
        if s.kind != "linear_finish":
            out.line(f"     D: {s.before} -> {s.after}")
    if verdict.kind == TAME:
        out.line(f"factorization ({len(verdict.factorization)} elementary automorphisms, composed left to right):")
        for e in verdict.factorization:
            out.line(f"  {e}")
    w = io.witness_document(verdict)
    if w is not None:
        a, b = w["sources"]
        out.line(f"witness: leading part of f{w['target']} is not in the subalgebra generated by "
                 f"the leading parts of f{a}, f{b}")
        out.line(f"  h  = {w['h']}")
        out.line(f"  g1 = {w['g1']}")
        out.line(f"  g2 = {w['g2']}")
        out.line(f"  weights = {tuple(w['weights'])}, candidates = {', '.join(w['candidates']) or 'none'}")
        out.line("  system:")
        for eq in w["equations"]:
            out.line(f"    {eq}")
        out.line(f"  status: {w['status']}")
        if w["fraction_solvable"]:
            out.line(f"  solvable over fractions: c = ({', '.join(w['fraction_solution'])})")
    return code


def cmd_normal_form(args, out: Output) -> int:
    phi = _input(args)
    _require_rank3(phi)
    verdict = decide(phi, args.step_budget)
    if verdict.kind != TAME:
        code = _verdict_exit(verdict.kind)
        msg = f"normal form needs a tame automorphism; verdict is {verdict.kind}"
        if code == EXIT_OK:
            raise PreconditionError(msg)
        sys.stderr.write(f"error: {msg}\n")
        return code
    nf = normal_form_from_factors(phi.algebra, verdict.factorization)
    if out.structured:
        out.doc(io.normal_form_document(nf, phi.algebra))
        return EXIT_OK
    out.line(f"k = {nf.k}")
    for i in range(nf.k):
        out.line(f"sigma{i + 1} = {_matrix_text(nf.sigmas[i])}")
        out.line(f"tau{i + 1}   = ({format_element(nf.taus[i][1])}, x2, x3)")
    out.line(f"lambda = {_matrix_text(nf.lam)}")
    return EXIT_OK


def cmd_verify_auto(args, out: Output) -> int:
    phi = _input(args)
    check = verify_automorphism_bounded(phi, args.degree_bound)
    code = {VERIFIED: EXIT_OK, REFUTED: EXIT_NOT_AUTOMORPHISM}.get(check.status, EXIT_UNKNOWN)
    if out.structured:
        doc = {"status": check.status, "degree": check.degree, "reason": check.reason or None,
               "inverse": io.endomorphism_document(check.inverse) if check.inverse else None}
        out.doc(doc)
        return code
    out.line(check.status)
    if check.reason:
        out.line(f"reason: {check.reason}")
    if check.inverse is not None:
        out.line("inverse:")
        _print_endo(out, check.inverse)
    return code


def cmd_dims(args, out: Output) -> int:
    A = _algebra(args)
    oracle_name = "witt" if A.mode == "lie" else "trees"
    rows = []
    for d in range(1, args.max_degree + 1):
        count = len(hall_basis(A.rank, d, A.mode))
        oracle = witt_dimension(A.rank, d) if A.mode == "lie" else anticommutative_dimension(A.rank, d)
        rows.append({"degree": d, "basis": count, oracle_name: oracle})
    if out.structured:
        out.doc({"rank": A.rank, "mode": A.mode, "dimensions": rows})
        return EXIT_OK
    out.line(f"{'degree':>6} {'basis':>10} {oracle_name:>10}")
    for r in rows:
        out.line(f"{r['degree']:>6} {r['basis']:>10} {r[oracle_name]:>10}")
    return EXIT_OK


def cmd_random_tame(args, out: Output) -> int:
    A = _algebra(args)
    if args.factors < 0:
        raise PreconditionError("--factors must be nonnegative")
    phi, factors = random_tame(A, args.seed, args.factors, args.coefficient_bound, args.degree_bound,
                               args.max_degree)
    if out.structured:
        out.doc({**io.endomorphism_document(phi), "factors": [io.elementary_document(e) for e in factors]})
        return EXIT_OK
    _print_endo(out, phi)
    out.line("factors:")
    for e in factors:
        out.line(f"  {e}")
    return EXIT_OK


def cmd_replay(args, out: Output) -> int:
    with open(args.trace, encoding="utf-8") as fh:
        doc = io.loads(fh.read())
    phi = io.endomorphism_from_document(doc["input"])
    steps = [io.step_from_document(d, phi.algebra) for d in doc.get("steps", [])]
    pairs = replay(phi, steps)
    for n, ((before, after), d) in enumerate(zip(pairs, doc["steps"]), 1):
        recorded = (d.get("before"), d.get("after"))
        if d["kind"] != "linear_finish" and recorded != (str(before), str(after)):
            raise TamenessError(f"step {n}: recorded exponents {recorded} differ from replayed "
                                f"({before}, {after})")
        if not out.structured:
            out.line(f"{n}. {d['kind']}: {before} -> {after} ok")
    if doc.get("factorization"):
        factors = [io.elementary_from_document(e, phi.algebra) for e in doc["factorization"]]
        if compose_elementaries(phi.algebra, factors) != phi:
            raise TamenessError("factorization does not recompose to the input")
    if out.structured:
        out.doc({"replayed": len(pairs), "ok": True})
    else:
        out.line(f"replayed {len(pairs)} steps: ok")
    return EXIT_OK


def cmd_fixture(args, out: Output) -> int:
    A = _algebra(args)
    z = _z(args, A)
    if args.name == "anick-chain":
        chain = anick_chain(A, z)
        if out.structured:
            out.doc({"z": A.ring.format(z), "steps": [
                {"transformation": t, "images": [format_element(f) for f in e.images]} for t, e in chain]})
        else:
            for t, e in chain:
                out.line(f"{t:<22} ({', '.join(format_element(f) for f in e.images)})")
        return EXIT_OK
    phi = get_fixture(args.name, A, z)
    if out.structured:
        out.doc(io.endomorphism_document(phi))
    else:
        _print_endo(out, phi)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="Z or Q[t] (default Z)")
    common.add_argument("--mode", help="lie or anti (default lie)")
    common.add_argument("--rank", type=int, help="number of generators (default 3)")
    common.add_argument("--z", help="fixture parameter (default 2 over Z, t over Q[t])")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--input", help="endomorphism JSON file")
    src.add_argument("--fixture", help=f"built-in endomorphism: {', '.join(sorted(FIXTURES))}")

    p = argparse.ArgumentParser(prog="tamewild", description="Free Lie algebras and tame/wild automorphisms.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="print the canonical form of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("bracket", parents=[common], help="bracket two expressions")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("compose", parents=[common], help="compose endomorphisms left to right")
    s.add_argument("sources", nargs="+", help="files or fixture names")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("apply", parents=[common, src], help="apply an endomorphism to an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_apply)

    s = sub.add_parser("decide", parents=[common, src], help="tame/wild decision with certificate")
    s.add_argument("--degree-bound", type=int, default=3, help="automorphism pre-check bound")
    s.add_argument("--no-verify", action="store_true", help="skip the automorphism pre-check")
    s.add_argument("--step-budget", type=int, default=10_000)
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("normal-form", parents=[common, src], help="reduced word of a tame automorphism")
    s.add_argument("--step-budget", type=int, default=10_000)
    s.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("verify-auto", parents=[common, src], help="bounded search for an inverse")
    s.add_argument("--degree-bound", type=int, default=3)
    s.set_defaults(func=cmd_verify_auto)

    s = sub.add_parser("dims", parents=[common], help="graded dimensions with the counting oracle")
    s.add_argument("--max-degree", type=int, default=6)
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("random-tame", parents=[common], help="random composition of elementary automorphisms")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--factors", type=int, default=5)
    s.add_argument("--coefficient-bound", type=int, default=5)
    s.add_argument("--degree-bound", type=int, default=3)
    s.add_argument("--max-degree", type=int, default=None)
    s.set_defaults(func=cmd_random_tame)

    s = sub.add_parser("replay", parents=[common], help="re-execute a structured decide trace")
    s.add_argument("trace", help="JSON produced by decide --format structured")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("fixture", parents=[common], help="print a built-in fixture")
    s.add_argument("name", choices=sorted(FIXTURES) + ["anick-chain"])
    s.set_defaults(func=cmd_fixture)
    return p


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    for flag in ("degree_bound", "step_budget", "max_degree"):
        v = getattr(args, flag, None)
        if v is not None and v < 1:
            stderr.write(f"error: --{flag.replace('_', '-')} must be positive\n")
            return EXIT_USAGE
    if args.rank is not None and args.rank < 1:
        stderr.write("error: --rank must be positive\n")
        return EXIT_USAGE
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except ParseError as exc:
        stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except (PreconditionError, RingError, AlgebraError, EndomorphismError, TamenessError, MatrixError,
            io.DocumentError, OSError, KeyError, ValueError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_PRECONDITION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
