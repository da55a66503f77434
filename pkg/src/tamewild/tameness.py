"""Tame/wild decision for rank-3 automorphisms by elementary D-reductions.

The reduction loop repeatedly applies one elementary transformation that
strictly lowers the exponent ``D`` (sorted leading monomials, then the sum of
leading-coefficient norms):

* coefficient reduction: two components share a leading monomial, so the one
  with the larger leading-coefficient norm is reduced by a Euclidean quotient
  multiple of the other;
* leading-part elimination: the component with the largest leading monomial
  has its top homogeneous part in the subalgebra generated by the top parts of
  the other two, and the corresponding expression is subtracted.

Reaching ``(x1, x2, x3, 3e)`` means the map is linear and invertible; an
automorphism that gets stuck earlier is wild, and the failed membership
system is returned as the witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .endomorphism import (
    Elementary,
    Endomorphism,
    EndomorphismError,
    ExponentD,
    compose,
    exponent,
    permutation_matrix,
)
from .free_algebra import (
    AlgebraElement,
    FreeAlgebra,
    Word,
    evaluate_word,
    hall_basis,
    linearly_dependent_pair,
    substitute,
    word_deg_w,
    word_generators,
    word_key,
    word_length,
)
from .linalg_euclid import (
    Diagonal,
    RingMatrix,
    SolveResult,
    Transvection,
    det,
    factor_into_elementary_diagonal,
    factor_product,
    hermite_normal_form,
    hnf_pivots,
    inverse,
    is_invertible,
    solve_with_diagnostics,
)

TAME = "TAME"
WILD = "WILD"
NOT_AUTOMORPHISM = "NOT_AUTOMORPHISM"
UNKNOWN = "UNKNOWN"

COEFFICIENT_REDUCTION = "coefficient_reduction"
LEADING_PART_ELIMINATION = "leading_part_elimination"
LINEAR_FINISH = "linear_finish"

DEFAULT_STEP_BUDGET = 10_000


class TamenessError(ValueError):
    pass


def two_symbol_algebra(algebra: FreeAlgebra) -> FreeAlgebra:
    return FreeAlgebra(2, algebra.ring, algebra.mode)


# ---------------------------------------------------------------- membership


@dataclass
class Membership:
    """Outcome of expressing a homogeneous ``h`` through ``g1``, ``g2``."""

    h: AlgebraElement
    g1: AlgebraElement
    g2: AlgebraElement
    weights: Tuple[int, int]
    candidates: List[Word]
    rows: List[Word]
    matrix: RingMatrix
    rhs: list
    result: SolveResult
    H: Optional[AlgebraElement]

    @property
    def found(self) -> bool:
        return self.H is not None

    def equations(self) -> List[str]:
        """The system as text, one equation per ambient word, ``c_k`` unknowns."""
        ring = self.matrix.ring
        out = []
        for r, row in enumerate(self.matrix.rows):
            lhs = " + ".join(f"{ring.format(a)}*c{k + 1}" for k, a in enumerate(row) if a) or "0"
            out.append(f"{lhs} = {ring.format(self.rhs[r])}")
        return out


def candidate_words(mode: str, weights: Tuple[int, int], degree: int) -> List[Word]:
    """Basis words in two symbols whose weighted degree equals ``degree``."""
    w1, w2 = weights
    if w1 < 1 or w2 < 1:
        raise TamenessError("weights must be positive")
    out = []
    for length in range(1, degree // min(w1, w2) + 1):
        for w in hall_basis(2, length, mode):
            if word_deg_w(w, weights) == degree:
                out.append(w)
    return out


def membership_system(h: AlgebraElement, g1: AlgebraElement, g2: AlgebraElement) -> Membership:
    algebra = h.algebra
    for f in (h, g1, g2):
        if f.algebra != algebra:
            raise TamenessError("elements belong to different algebras")
        if not f:
            raise TamenessError("membership needs nonzero elements")
        if not f.is_homogeneous():
            raise TamenessError("membership needs homogeneous elements")
    if linearly_dependent_pair(g1, g2):
        raise TamenessError("generators are Lie-dependent")
    ring = algebra.ring
    weights = (g1.deg(), g2.deg())
    cands = candidate_words(algebra.mode, weights, h.deg())
    memo: dict = {}
    images = [evaluate_word(w, (g1, g2), algebra, memo) for w in cands]
    rows = sorted(
        set(h.terms).union(*[set(im.terms) for im in images]), key=word_key, reverse=True
    )
    matrix = RingMatrix(ring, [[im.coeff(r) for im in images] for r in rows], ncols=len(cands))
    rhs = [h.coeff(r) for r in rows]
    result = solve_with_diagnostics(matrix, rhs)
    H = None
    if result.ok:
        Z = two_symbol_algebra(algebra)
        H = Z.from_terms((w, c) for w, c in zip(cands, result.solution) if c)
    return Membership(h, g1, g2, weights, cands, rows, matrix, rhs, result, H)


def membership_homogeneous(h: AlgebraElement, g1: AlgebraElement, g2: AlgebraElement) -> Optional[AlgebraElement]:
    """``H`` in two symbols with ``h = H(g1, g2)`` over the ring, or None."""
    return membership_system(h, g1, g2).H


# ---------------------------------------------------------------- reductions


@dataclass
class ReductionStep:
    kind: str
    target: int
    before: Optional[ExponentD] = None
    after: Optional[ExponentD] = None
    source: Optional[int] = None
    quotient: object = None
    sources: Optional[Tuple[int, int]] = None
    H: Optional[AlgebraElement] = None
    factors: list = field(default_factory=list)

    def elementary(self, algebra: FreeAlgebra) -> Elementary:
        """The elementary map ``e`` with ``after = before o e``."""
        ring = algebra.ring
        if self.kind == COEFFICIENT_REDUCTION:
            return Elementary(self.target, ring.one, algebra.gen(self.source).scale(-self.quotient))
        if self.kind == LEADING_PART_ELIMINATION:
            a, b = self.sources
            return Elementary(self.target, ring.one, -substitute(self.H, [algebra.gen(a), algebra.gen(b)], algebra))
        raise TamenessError("linear finish has no single elementary map")


def _first_shared_pair(phi: Endomorphism) -> Optional[Tuple[int, int]]:
    n = phi.rank
    lms = [f.leading_monomial() for f in phi.images]
    for a in range(n):
        for b in range(a + 1, n):
            if lms[a] == lms[b]:
                return a + 1, b + 1
    return None


def _reduce(phi: Endomorphism):
    """One D-reduction: ``(psi, step, None)`` or ``(None, None, membership)``."""
    if phi.rank != 3:
        raise TamenessError("the reduction procedure is for rank 3")
    if any(not f for f in phi.images):
        raise EndomorphismError("zero image")
    ring = phi.algebra.ring
    before = exponent(phi)
    pair = _first_shared_pair(phi)
    if pair is not None:
        a, b = pair
        if ring.norm(phi[a].leading_coeff()) >= ring.norm(phi[b].leading_coeff()):
            i, j = a, b
        else:
            i, j = b, a
        q, _ = ring.div_rem(phi[i].leading_coeff(), phi[j].leading_coeff())
        psi = phi.replace(i, phi[i] - phi[j].scale(q))
        step = ReductionStep(COEFFICIENT_REDUCTION, i, before, None, source=j, quotient=q)
        if psi[i]:
            step.after = exponent(psi)
        return psi, step, None
    order = sorted(range(1, 4), key=lambda k: word_key(phi[k].leading_monomial()))
    top = order[-1]
    a, b = sorted(order[:2])
    mem = membership_system(phi[top].leading_part(), phi[a].leading_part(), phi[b].leading_part())
    if mem.H is None:
        return None, None, mem
    sub = substitute(mem.H, [phi[a], phi[b]], phi.algebra)
    psi = phi.replace(top, phi[top] - sub)
    step = ReductionStep(LEADING_PART_ELIMINATION, top, before, None, sources=(a, b), H=mem.H)
    if psi[top]:
        step.after = exponent(psi)
    return psi, step, None


def elementary_D_reduction(phi: Endomorphism) -> Optional[Tuple[Endomorphism, ReductionStep]]:
    psi, step, _ = _reduce(phi)
    if psi is None:
        return None
    return psi, step


@dataclass
class WildWitness:
    target: int
    sources: Tuple[int, int]
    membership: Membership

    @property
    def fraction_solvable(self) -> bool:
        return self.membership.result.status == "fraction_only"


@dataclass
class Verdict:
    kind: str
    input: Endomorphism
    steps: List[ReductionStep] = field(default_factory=list)
    factorization: List[Elementary] = field(default_factory=list)
    witness: Optional[WildWitness] = None
    reason: str = ""
    terminal: Optional[Endomorphism] = None

    @property
    def is_tame(self) -> bool:
        return self.kind == TAME

    @property
    def is_wild(self) -> bool:
        return self.kind == WILD


def linear_factors_as_elementary(algebra: FreeAlgebra, factors) -> List[Elementary]:
    """Transvection ``I + q E_ij`` is ``x_j -> x_j + q x_i``; a diagonal splits per index."""
    ring = algebra.ring
    out = []
    for f in factors:
        if isinstance(f, Transvection):
            out.append(Elementary(f.j + 1, ring.one, algebra.gen(f.i + 1).scale(f.q)))
        elif isinstance(f, Diagonal):
            for k, u in enumerate(f.units):
                if u != ring.one:
                    out.append(Elementary(k + 1, u, algebra.zero))
    return out


def decide(phi: Endomorphism, step_budget: int = DEFAULT_STEP_BUDGET) -> Verdict:
    """Tame (with factorization), wild (with witness), or a failure verdict.

    The input is assumed to be an automorphism; violations surface as
    NOT_AUTOMORPHISM when detected, or UNKNOWN once ``step_budget`` runs out.
    """
    if phi.rank != 3:
        raise TamenessError("decide is defined for rank 3")
    algebra = phi.algebra
    ring = algebra.ring
    if any(not f for f in phi.images):
        return Verdict(NOT_AUTOMORPHISM, phi, reason="an image is zero")
    steps: List[ReductionStep] = []
    current = phi
    for _ in range(step_budget):
        D = exponent(current)
        if D.is_terminal(ring):
            M = current.linear_part()
            if not current.is_linear() or not is_invertible(M):
                return Verdict(NOT_AUTOMORPHISM, phi, steps, reason="terminal linear part is not invertible",
                               terminal=current)
            lin = factor_into_elementary_diagonal(M)
            steps.append(ReductionStep(LINEAR_FINISH, 0, D, D, factors=lin))
            factorization = linear_factors_as_elementary(algebra, lin)
            for s in reversed(steps[:-1]):
                factorization.append(s.elementary(algebra).inverse())
            return Verdict(TAME, phi, steps, factorization, terminal=current)
        psi, step, mem = _reduce(current)
        if psi is None:
            if current.is_linear():
                return Verdict(NOT_AUTOMORPHISM, phi, steps,
                               reason=f"linear part has determinant {ring.format(det(current.linear_part()))}, "
                                      "not a unit", terminal=current)
            order = sorted(range(1, 4), key=lambda k: word_key(current[k].leading_monomial()))
            witness = WildWitness(order[-1], tuple(sorted(order[:2])), mem)
            return Verdict(WILD, phi, steps, witness=witness, terminal=current,
                           reason="no elementary D-reduction applies")
        steps.append(step)
        if step.after is None:
            return Verdict(NOT_AUTOMORPHISM, phi, steps, reason=f"component {step.target} became zero",
                           terminal=psi)
        if not step.after < step.before:
            raise AssertionError("reduction did not lower the exponent")
        current = psi
    return Verdict(UNKNOWN, phi, steps, reason=f"step budget {step_budget} exhausted", terminal=current)


def replay(phi: Endomorphism, steps: Sequence[ReductionStep]) -> List[Tuple[ExponentD, ExponentD]]:
    """Re-execute a trace, checking each recorded exponent and its descent."""
    algebra = phi.algebra
    current = phi
    out = []
    for s in steps:
        before = exponent(current)
        if s.before is not None and s.before != before:
            raise TamenessError(f"trace mismatch: expected exponent {s.before}, found {before}")
        if s.kind == LINEAR_FINISH:
            M = current.linear_part()
            if not current.is_linear() or factor_product(algebra.ring, 3, s.factors) != M:
                raise TamenessError("linear finish does not reproduce the terminal map")
            out.append((before, before))
            continue
        current = _apply_step(current, s)
        after = exponent(current)
        if not after < before:
            raise TamenessError(f"step on component {s.target} does not lower the exponent")
        out.append((before, after))
    return out


def _apply_step(phi: Endomorphism, s: ReductionStep) -> Endomorphism:
    e = s.elementary(phi.algebra)
    return phi.replace(e.index, phi[e.index].scale(e.alpha) + phi.apply(e.g))


# ---------------------------------------------------------------- cosets and normal forms


def coset_representative_A0(M: RingMatrix) -> RingMatrix:
    """Canonical representative of the left coset ``M H``.

    Columns 2 and 3 are replaced by the Hermite basis of their span; column 1
    is scaled so that the determinant is 1 and then reduced modulo that basis.
    """
    ring = M.ring
    if M.shape != (3, 3) or not is_invertible(M):
        raise TamenessError("A0 representatives need an invertible 3x3 matrix")
    B = RingMatrix(ring, [M.column(1), M.column(2)])
    Hb, _ = hermite_normal_form(B)
    v1, v2 = list(Hb.rows[0]), list(Hb.rows[1])
    c = M.column(0)
    d = det(RingMatrix(ring, [list(r) for r in zip(c, v1, v2)]))
    u = ring.unit_inverse(d)
    c = [u * x for x in c]
    for r, col in hnf_pivots(Hb):
        q, _ = ring.div_rem(c[col], Hb[r, col])
        if q:
            c = [x - q * y for x, y in zip(c, Hb.rows[r])]
    return RingMatrix(ring, [list(r) for r in zip(c, v1, v2)])


def in_B3(mu: Endomorphism) -> bool:
    if mu.rank != 3:
        return False
    ring = mu.algebra.ring
    for k in (2, 3):
        f = mu[k]
        if any(not isinstance(w, int) or w == 1 for w in f.terms):
            return False
    f1 = mu[1]
    for w in f1.terms:
        if not isinstance(w, int) and 1 in _gens(w):
            return False
    M = mu.linear_part()
    return ring.is_unit(M[0, 0]) and ring.is_unit(M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])


def _gens(w: Word):
    return word_generators(w)


def split_B3(mu: Endomorphism) -> Tuple[Endomorphism, RingMatrix]:
    """``mu = tau o gamma`` with ``tau`` in B0 and ``gamma`` in H."""
    if not in_B3(mu):
        raise TamenessError("not an element of B3")
    A = mu.algebra
    ring = A.ring
    f1 = mu[1]
    alpha_inv = ring.unit_inverse(f1.coeff(1))
    g = A.from_terms((w, c) for w, c in f1.terms.items() if word_length(w) >= 2)
    tau = Endomorphism.identity(A).replace(1, A.gen(1) + g.scale(alpha_inv))
    return tau, mu.linear_part()


def coset_representative_B0(mu: Endomorphism) -> Endomorphism:
    return split_B3(mu)[0]


def is_B0(tau: Endomorphism) -> bool:
    A = tau.algebra
    if tau.images[1:] != tuple(A.gens[1:]):
        return False
    rest = tau[1] - A.gen(1)
    return all(word_length(w) >= 2 and 1 not in _gens(w) for w in rest.terms)


@dataclass
class NormalFormWord:
    """``s1 o t1 o s2 o t2 o ... o sk o tk o lam``."""

    sigmas: List[RingMatrix]
    taus: List[Endomorphism]
    lam: RingMatrix

    @property
    def k(self) -> int:
        return len(self.taus)

    def check_shape(self) -> None:
        if len(self.sigmas) != len(self.taus):
            raise TamenessError("need one sigma per tau")
        ring = self.lam.ring
        ident = RingMatrix.identity(ring, 3)
        for i, s in enumerate(self.sigmas):
            if coset_representative_A0(s) != s:
                raise TamenessError(f"sigma_{i + 1} is not a canonical representative")
            if i > 0 and s == ident:
                raise TamenessError(f"sigma_{i + 1} must not be the identity")
        for i, t in enumerate(self.taus):
            if not is_B0(t) or t.is_identity():
                raise TamenessError(f"tau_{i + 1} is not a nontrivial B0 element")
        if not is_invertible(self.lam):
            raise TamenessError("lambda is not invertible")

    def prefixes(self, algebra: FreeAlgebra) -> List[Endomorphism]:
        """``phi_i = s1 o t1 o ... o si o ti`` for ``i = 1..k``."""
        out = []
        current = Endomorphism.identity(algebra)
        for s, t in zip(self.sigmas, self.taus):
            current = compose(compose(current, Endomorphism.from_matrix(algebra, s)), t)
            out.append(current)
        return out

    def compose(self, algebra: FreeAlgebra) -> Endomorphism:
        pre = self.prefixes(algebra)
        base = pre[-1] if pre else Endomorphism.identity(algebra)
        return compose(base, Endomorphism.from_matrix(algebra, self.lam))

    def __eq__(self, other):
        return (
            isinstance(other, NormalFormWord)
            and self.sigmas == other.sigmas
            and self.taus == other.taus
            and self.lam == other.lam
        )


def _tokens(algebra: FreeAlgebra, factors: Sequence[Elementary]):
    """Each elementary map as linear and B0 pieces: ``e = pi o tau o gamma o pi``."""
    ring = algebra.ring
    for e in factors:
        emap = e.endomorphism()
        if e.is_linear():
            yield emap.linear_part()
            continue
        perm = [1, 2, 3]
        perm[0], perm[e.index - 1] = perm[e.index - 1], perm[0]
        P = permutation_matrix(ring, perm)
        Pmap = Endomorphism.from_matrix(algebra, P)
        conj = compose(compose(Pmap, emap), Pmap)
        tau, gamma = split_B3(conj)
        yield P
        yield tau
        yield gamma @ P


def normal_form_from_factors(algebra: FreeAlgebra, factors: Sequence[Elementary]) -> NormalFormWord:
    ring = algebra.ring
    ident = RingMatrix.identity(ring, 3)
    word: List[List] = []
    L = ident
    for tok in _tokens(algebra, factors):
        if isinstance(tok, RingMatrix):
            L = L @ tok
            continue
        sigma = coset_representative_A0(L)
        gamma = inverse(sigma) @ L
        mu = compose(Endomorphism.from_matrix(algebra, gamma), tok)
        tau, gamma2 = split_B3(mu)
        if word and sigma == ident:
            s_prev, t_prev = word[-1]
            merged = compose(t_prev, tau)
            if merged.is_identity():
                word.pop()
                L = s_prev @ gamma2
            else:
                word[-1] = [s_prev, merged]
                L = gamma2
        else:
            word.append([sigma, tau])
            L = gamma2
    return NormalFormWord([s for s, _ in word], [t for _, t in word], L)


def normal_form(phi: Endomorphism, verdict: Optional[Verdict] = None) -> NormalFormWord:
    if verdict is None:
        verdict = decide(phi)
    if not verdict.is_tame:
        raise TamenessError(f"normal form needs a tame automorphism, got {verdict.kind}")
    return normal_form_from_factors(phi.algebra, verdict.factorization)


# ---------------------------------------------------------------- automorphism check


VERIFIED = "VERIFIED"
REFUTED = "REFUTED"


@dataclass
class AutomorphismCheck:
    status: str
    inverse: Optional[Endomorphism] = None
    reason: str = ""
    degree: int = 0


def verify_automorphism_bounded(phi: Endomorphism, degree_bound: int) -> AutomorphismCheck:
    """Look for ``psi`` of degree <= ``degree_bound`` with ``phi o psi = id``.

    Each generator is sought as a ring combination of basis words evaluated
    at the images; refutation uses the degree-one quotient only.
    """
    if degree_bound < 1:
        raise TamenessError("degree bound must be positive")
    A = phi.algebra
    ring = A.ring
    if any(not f for f in phi.images):
        return AutomorphismCheck(REFUTED, reason="an image is zero")
    M = phi.linear_part()
    d = det(M)
    if not ring.is_unit(d):
        return AutomorphismCheck(REFUTED, reason=f"linear part has determinant {ring.format(d)}, not a unit")
    words: List[Word] = []
    for length in range(1, degree_bound + 1):
        words.extend(A.basis(length))
        images = [phi.image_of_word(w) for w in words]
        rows = sorted(set().union(*[set(im.terms) for im in images]) | set(range(1, A.rank + 1)),
                      key=word_key, reverse=True)
        mat = RingMatrix(ring, [[im.coeff(r) for im in images] for r in rows], ncols=len(words))
        inv_images = []
        for i in range(1, A.rank + 1):
            res = solve_with_diagnostics(mat, [ring.one if r == i else ring.zero for r in rows])
            if not res.ok:
                break
            inv_images.append(A.from_terms((w, c) for w, c in zip(words, res.solution) if c))
        else:
            return AutomorphismCheck(VERIFIED, Endomorphism(A, inv_images), degree=length)
    return AutomorphismCheck(UNKNOWN, reason=f"no inverse of degree <= {degree_bound} found")


# ---------------------------------------------------------------- random generators


def _random_lie_poly(rng: random.Random, algebra: FreeAlgebra, gens: Sequence[int], min_deg: int, max_deg: int,
                     bound: int, max_terms: int = 3) -> AlgebraElement:
    ring = algebra.ring
    pool = []
    for d in range(min_deg, max_deg + 1):
        for w in hall_basis(len(gens), d, algebra.mode):
            pool.append(w)
    if not pool:
        return algebra.zero
    Z = FreeAlgebra(len(gens), ring, algebra.mode)
    picks = rng.sample(pool, min(len(pool), rng.randint(1, max_terms)))
    z = Z.from_terms((w, ring.random(rng, bound)) for w in picks)
    return substitute(z, [algebra.gen(i) for i in gens], algebra)


def random_elementary(rng: random.Random, algebra: FreeAlgebra, coefficient_bound: int, degree_bound: int,
                      index: Optional[int] = None) -> Elementary:
    ring = algebra.ring
    i = rng.randint(1, algebra.rank) if index is None else index
    others = [j for j in range(1, algebra.rank + 1) if j != i]
    g = _random_lie_poly(rng, algebra, others, 1, degree_bound, coefficient_bound)
    return Elementary(i, ring.random_unit(rng, coefficient_bound), g)


def random_tame(algebra: FreeAlgebra, seed, k: int, coefficient_bound: int = 5, degree_bound: int = 3,
                max_degree: Optional[int] = None) -> Tuple[Endomorphism, List[Elementary]]:
    """Reproducible composition of ``k`` random elementary automorphisms.

    ``degree_bound`` caps the degree of each ``g``; ``max_degree`` (default
    ``3 * degree_bound``) caps the degree of the composite: a factor that
    could overshoot is redrawn with a smaller ``g`` degree.
    """
    rng = random.Random(seed)
    cap = 3 * degree_bound if max_degree is None else max_degree
    factors: List[Elementary] = []
    current = Endomorphism.identity(algebra)
    for _ in range(k):
        deg = degree_bound
        weights = [f.deg() for f in current.images]
        while True:
            e = random_elementary(rng, algebra, coefficient_bound, deg)
            bound = max([weights[e.index - 1]] + [word_deg_w(w, weights) for w in e.g.terms])
            if deg <= 1 or bound <= cap:
                break
            deg -= 1
        factors.append(e)
        current = current.replace(e.index, current[e.index].scale(e.alpha) + current.apply(e.g))
    return current, factors


def random_invertible_matrix(rng: random.Random, ring, bound: int, ops: int = 4) -> RingMatrix:
    rows = [[ring.one if i == j else ring.zero for j in range(3)] for i in range(3)]
    for _ in range(ops):
        i, j = rng.sample(range(3), 2)
        q = ring.random(rng, bound)
        rows[i] = [a + q * b for a, b in zip(rows[i], rows[j])]
    for i in range(3):
        u = ring.random_unit(rng, bound)
        rows[i] = [u * a for a in rows[i]]
    return RingMatrix(ring, rows)


def random_reduced_word(algebra: FreeAlgebra, seed, k: int, coefficient_bound: int = 3,
                        degree_budget: int = 12) -> NormalFormWord:
    """Random word in canonical representatives with ``k`` B0 factors.

    The product of the ``h`` degrees stays within ``degree_budget`` so the
    composite remains small.
    """
    rng = random.Random(seed)
    ring = algebra.ring
    ident = RingMatrix.identity(ring, 3)
    sigmas, taus = [], []
    budget = degree_budget
    for i in range(k):
        while True:
            s = coset_representative_A0(random_invertible_matrix(rng, ring, coefficient_bound))
            if i == 0 or s != ident:
                break
        remaining = k - i - 1
        top = 2
        while top + 1 <= 3 and (top + 1) * 2 ** remaining <= budget:
            top += 1
        d = rng.randint(2, top)
        budget //= d
        while True:
            h = _random_lie_poly(rng, algebra, [2, 3], 2, d, coefficient_bound)
            if h:
                break
        sigmas.append(s)
        taus.append(Endomorphism.identity(algebra).replace(1, algebra.gen(1) + h))
    lam = random_invertible_matrix(rng, ring, coefficient_bound)
    return NormalFormWord(sigmas, taus, lam)
