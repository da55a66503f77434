"""JSON documents for endomorphisms, verdicts and normal forms."""

from __future__ import annotations

import json
import re
from typing import List, Optional

from .endomorphism import Elementary, Endomorphism, EndomorphismError
from .euclid_ring import get_ring
from .free_algebra import FreeAlgebra, canonical_mode, format_word
from .linalg_euclid import Diagonal, RingMatrix, Transvection
from .parser import ParseError, format_element, parse_expression
from .tameness import (
    COEFFICIENT_REDUCTION,
    LEADING_PART_ELIMINATION,
    LINEAR_FINISH,
    AutomorphismCheck,
    NormalFormWord,
    ReductionStep,
    Verdict,
    two_symbol_algebra,
)

Z_NAMES = ("z1", "z2")


class DocumentError(ValueError):
    pass


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from None


def algebra_document(A: FreeAlgebra) -> dict:
    return {"ring": A.ring.name, "mode": A.mode, "rank": A.rank}


def algebra_from_document(doc: dict) -> FreeAlgebra:
    for key in ("ring", "mode", "rank"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    rank = doc["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise DocumentError("rank must be a positive integer")
    return FreeAlgebra(rank, get_ring(doc["ring"]), canonical_mode(doc["mode"]))


def endomorphism_document(phi: Endomorphism) -> dict:
    doc = algebra_document(phi.algebra)
    doc["images"] = [format_element(f) for f in phi.images]
    return doc


def endomorphism_from_document(doc: dict, algebra: Optional[FreeAlgebra] = None) -> Endomorphism:
    if not isinstance(doc, dict):
        raise DocumentError("an endomorphism document must be an object")
    A = algebra if algebra is not None else algebra_from_document(doc)
    images = doc.get("images")
    if not isinstance(images, list) or not all(isinstance(s, str) for s in images):
        raise DocumentError("images must be a list of expression strings")
    if len(images) != A.rank:
        raise DocumentError(f"expected {A.rank} images, got {len(images)}")
    out = []
    for k, text in enumerate(images, 1):
        try:
            out.append(parse_expression(text, A))
        except ParseError as exc:
            raise ParseError(f"image {k}: {exc.message}", exc.line, exc.column, exc.token) from None
    return Endomorphism(A, out)


def load_endomorphism(path: str) -> Endomorphism:
    with open(path, encoding="utf-8") as fh:
        return endomorphism_from_document(loads(fh.read()))


def format_H(H) -> str:
    return format_element(H, Z_NAMES)


def parse_H(text: str, algebra: FreeAlgebra):
    return parse_expression(re.sub(r"\bz(\d+)", r"x\1", text), two_symbol_algebra(algebra))


def matrix_document(M: RingMatrix) -> List[List[str]]:
    return [[M.ring.format(a) for a in row] for row in M.rows]


def matrix_from_document(rows, ring) -> RingMatrix:
    return RingMatrix(ring, [[ring.parse(str(a)) for a in row] for row in rows])


def _linear_factor_document(f, ring) -> dict:
    if isinstance(f, Transvection):
        return {"type": "transvection", "row": f.i + 1, "col": f.j + 1, "q": ring.format(f.q)}
    return {"type": "diagonal", "units": [ring.format(u) for u in f.units]}


def _linear_factor_from_document(d: dict, ring):
    if d.get("type") == "transvection":
        return Transvection(d["row"] - 1, d["col"] - 1, ring.parse(d["q"]))
    if d.get("type") == "diagonal":
        return Diagonal(tuple(ring.parse(u) for u in d["units"]))
    raise DocumentError(f"unknown linear factor {d!r}")


def step_document(s: ReductionStep, algebra: FreeAlgebra) -> dict:
    ring = algebra.ring
    doc = {"kind": s.kind, "target": s.target}
    if s.kind == COEFFICIENT_REDUCTION:
        doc["source"] = s.source
        doc["quotient"] = ring.format(s.quotient)
    elif s.kind == LEADING_PART_ELIMINATION:
        doc["sources"] = list(s.sources)
        doc["H"] = format_H(s.H)
    else:
        doc["factors"] = [_linear_factor_document(f, ring) for f in s.factors]
    doc["before"] = str(s.before) if s.before is not None else None
    doc["after"] = str(s.after) if s.after is not None else None
    return doc


def step_from_document(d: dict, algebra: FreeAlgebra) -> ReductionStep:
    ring = algebra.ring
    kind = d.get("kind")
    if kind == COEFFICIENT_REDUCTION:
        return ReductionStep(kind, d["target"], source=d["source"], quotient=ring.parse(d["quotient"]))
    if kind == LEADING_PART_ELIMINATION:
        return ReductionStep(kind, d["target"], sources=tuple(d["sources"]), H=parse_H(d["H"], algebra))
    if kind == LINEAR_FINISH:
        return ReductionStep(kind, 0, factors=[_linear_factor_from_document(f, ring) for f in d["factors"]])
    raise DocumentError(f"unknown step kind {kind!r}")


def elementary_document(e: Elementary) -> dict:
    ring = e.algebra.ring
    return {"index": e.index, "alpha": ring.format(e.alpha), "g": format_element(e.g), "map": str(e)}


def elementary_from_document(d: dict, algebra: FreeAlgebra) -> Elementary:
    try:
        return Elementary(d["index"], algebra.ring.parse(d["alpha"]), parse_expression(d["g"], algebra))
    except EndomorphismError as exc:
        raise DocumentError(str(exc)) from None


def witness_document(verdict: Verdict) -> Optional[dict]:
    w = verdict.witness
    if w is None:
        return None
    m = w.membership
    ring = m.matrix.ring
    res = m.result
    return {
        "target": w.target,
        "sources": list(w.sources),
        "h": format_element(m.h),
        "g1": format_element(m.g1),
        "g2": format_element(m.g2),
        "weights": list(m.weights),
        "candidates": [format_word(c, Z_NAMES) for c in m.candidates],
        "rows": [format_word(r) for r in m.rows],
        "matrix": matrix_document(m.matrix),
        "rhs": [ring.format(b) for b in m.rhs],
        "equations": m.equations(),
        "status": res.status,
        "fraction_solvable": w.fraction_solvable,
        "fraction_solution": [str(c) for c in res.fraction_solution] if res.fraction_solution else None,
        "obstruction": res.obstruction,
    }


def verdict_document(verdict: Verdict, check: Optional[AutomorphismCheck] = None) -> dict:
    A = verdict.input.algebra
    doc = {
        "verdict": verdict.kind,
        "input": endomorphism_document(verdict.input),
        "steps": [step_document(s, A) for s in verdict.steps],
        "factorization": [elementary_document(e) for e in verdict.factorization],
        "witness": witness_document(verdict),
    }
    if verdict.reason:
        doc["reason"] = verdict.reason
    if check is not None:
        doc["automorphism_check"] = {"status": check.status, "degree": check.degree, "reason": check.reason}
    return doc


def normal_form_document(nf: NormalFormWord, algebra: FreeAlgebra) -> dict:
    doc = algebra_document(algebra)
    doc["k"] = nf.k
    doc["sigmas"] = [matrix_document(s) for s in nf.sigmas]
    doc["taus"] = [format_element(t[1] - algebra.gen(1)) for t in nf.taus]
    doc["lambda"] = matrix_document(nf.lam)
    return doc


def normal_form_from_document(doc: dict) -> NormalFormWord:
    A = algebra_from_document(doc)
    ring = A.ring
    taus = []
    for text in doc["taus"]:
        h = parse_expression(text, A)
        taus.append(Endomorphism.identity(A).replace(1, A.gen(1) + h))
    return NormalFormWord(
        [matrix_from_document(s, ring) for s in doc["sigmas"]], taus, matrix_from_document(doc["lambda"], ring)
    )
