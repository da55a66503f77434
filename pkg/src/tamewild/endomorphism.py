"""Endomorphisms of a free algebra as tuples of generator images.

Composition is composition of maps: ``compose(phi, psi)`` is ``phi o psi``,
so ``compose(phi, psi)(x_i) = phi(psi(x_i))``. With this convention a word
``s1 o t1 o ... o lam`` written left to right composes in the same order,
and replacing component ``f_i`` of ``phi`` by ``a*f_i + g(f_j, ...)`` is
``phi o e`` for the elementary automorphism ``e: x_i -> a*x_i + g``.

Linear maps correspond to matrices whose column ``j`` holds the coordinates
of the image of ``x_j``; composition is then matrix multiplication.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .free_algebra import (
    AlgebraElement,
    AlgebraError,
    FreeAlgebra,
    Word,
    evaluate_word,
    word_key,
    word_length,
)
from .linalg_euclid import RingMatrix, is_invertible


class EndomorphismError(AlgebraError):
    pass


class Endomorphism:
    __slots__ = ("algebra", "images", "_memo")

    def __init__(self, algebra: FreeAlgebra, images: Sequence[AlgebraElement]):
        images = tuple(images)
        if len(images) != algebra.rank:
            raise EndomorphismError(f"expected {algebra.rank} images, got {len(images)}")
        for f in images:
            if not isinstance(f, AlgebraElement) or f.algebra != algebra:
                raise EndomorphismError("image belongs to a different algebra")
        self.algebra = algebra
        self.images = images
        self._memo = {}

    @classmethod
    def identity(cls, algebra: FreeAlgebra) -> "Endomorphism":
        return cls(algebra, algebra.gens)

    @classmethod
    def from_matrix(cls, algebra: FreeAlgebra, M: RingMatrix) -> "Endomorphism":
        n = algebra.rank
        if M.shape != (n, n):
            raise EndomorphismError(f"need a {n}x{n} matrix")
        images = [algebra.from_terms((i + 1, M[i, j]) for i in range(n) if M[i, j]) for j in range(n)]
        return cls(algebra, images)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def __getitem__(self, i: int) -> AlgebraElement:
        """Image of ``x_i`` (1-based)."""
        return self.images[i - 1]

    def __iter__(self):
        return iter(self.images)

    def __eq__(self, other):
        return isinstance(other, Endomorphism) and self.algebra == other.algebra and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "(" + ", ".join(str(f) for f in self.images) + ")"

    def is_identity(self) -> bool:
        return all(f.terms == {i + 1: self.algebra.ring.one} for i, f in enumerate(self.images))

    def image_of_word(self, w: Word) -> AlgebraElement:
        return evaluate_word(w, self.images, self.algebra, self._memo)

    def apply(self, f: AlgebraElement) -> AlgebraElement:
        if f.algebra != self.algebra:
            raise EndomorphismError("element belongs to a different algebra")
        acc = {}
        for w, c in f.terms.items():
            for v, d in self.image_of_word(w).terms.items():
                n = acc.get(v)
                n = c * d if n is None else n + c * d
                if n:
                    acc[v] = n
                else:
                    acc.pop(v, None)
        return AlgebraElement(self.algebra, acc)

    __call__ = apply

    def replace(self, i: int, f: AlgebraElement) -> "Endomorphism":
        images = list(self.images)
        images[i - 1] = f
        return Endomorphism(self.algebra, images)

    def degree(self) -> int:
        if any(not f for f in self.images):
            raise EndomorphismError("zero image has no degree")
        return max(f.deg() for f in self.images)

    def is_linear(self) -> bool:
        return all(word_length(w) == 1 for f in self.images for w in f.terms)

    def linear_part(self) -> RingMatrix:
        """Matrix of the degree-one components (column j = image of x_j)."""
        ring = self.algebra.ring
        n = self.rank
        rows = [[ring.zero] * n for _ in range(n)]
        for j, f in enumerate(self.images):
            for w, c in f.terms.items():
                if isinstance(w, int):
                    rows[w - 1][j] = c
        return RingMatrix(ring, rows)

    def exponent(self) -> "ExponentD":
        return exponent(self)

    def change_ring(self, algebra: FreeAlgebra) -> "Endomorphism":
        return Endomorphism(algebra, [algebra.coerce_element(f) for f in self.images])


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """``phi o psi``: ``x_i -> phi(psi(x_i))``."""
    if phi.algebra != psi.algebra:
        raise EndomorphismError("endomorphisms of different algebras")
    return Endomorphism(phi.algebra, [phi.apply(g) for g in psi.images])


def compose_all(algebra: FreeAlgebra, maps: Sequence[Endomorphism]) -> Endomorphism:
    out = Endomorphism.identity(algebra)
    for m in maps:
        out = compose(out, m)
    return out


def endo_degree(phi: Endomorphism) -> int:
    return phi.degree()


@functools.total_ordering
@dataclass(frozen=True)
class ExponentD:
    """Descending leading monomials plus the sum of leading-coefficient norms."""

    monomials: Tuple[Word, ...]
    norm_sum: int

    def key(self):
        return tuple(word_key(w) for w in self.monomials) + (self.norm_sum,)

    def __lt__(self, other):
        if not isinstance(other, ExponentD):
            return NotImplemented
        return self.key() < other.key()

    def is_terminal(self, ring) -> bool:
        n = len(self.monomials)
        return self.monomials == tuple(range(1, n + 1)) and self.norm_sum == n * ring.e

    def __str__(self):
        from .free_algebra import format_word

        return "(" + ", ".join(format_word(w) for w in self.monomials) + f", {self.norm_sum})"


def exponent(phi: Endomorphism) -> ExponentD:
    ring = phi.algebra.ring
    if any(not f for f in phi.images):
        raise EndomorphismError("exponent undefined: zero image")
    lms = sorted((f.leading_monomial() for f in phi.images), key=word_key, reverse=True)
    return ExponentD(tuple(lms), sum(ring.norm(f.leading_coeff()) for f in phi.images))


def compare_exponents(d1: ExponentD, d2: ExponentD) -> int:
    if d1 == d2:
        return 0
    return -1 if d1 < d2 else 1


@dataclass(frozen=True)
class Elementary:
    """``x_index -> alpha * x_index + g`` with ``g`` free of ``x_index``."""

    index: int
    alpha: object
    g: AlgebraElement

    def __post_init__(self):
        ring = self.g.algebra.ring
        if not ring.is_unit(self.alpha):
            raise EndomorphismError(f"{ring.format(self.alpha)} is not a unit")
        if not 1 <= self.index <= self.g.algebra.rank:
            raise EndomorphismError("index outside rank")
        if self.g.involves(self.index):
            raise EndomorphismError(f"g must not involve x{self.index}")

    @property
    def algebra(self) -> FreeAlgebra:
        return self.g.algebra

    def endomorphism(self) -> Endomorphism:
        A = self.algebra
        return Endomorphism.identity(A).replace(self.index, A.gen(self.index).scale(self.alpha) + self.g)

    def inverse(self) -> "Elementary":
        ring = self.algebra.ring
        inv = ring.unit_inverse(self.alpha)
        return Elementary(self.index, inv, -self.g.scale(inv))

    def is_linear(self) -> bool:
        return all(word_length(w) == 1 for w in self.g.terms)

    def __str__(self):
        return f"x{self.index} -> {self.endomorphism()[self.index]}"


def elementary_auto(algebra: FreeAlgebra, i: int, alpha, g: Optional[AlgebraElement] = None) -> Endomorphism:
    g = algebra.zero if g is None else g
    return Elementary(i, algebra.ring.coerce(alpha), g).endomorphism()


def compose_elementaries(algebra: FreeAlgebra, factors: Sequence[Elementary]) -> Endomorphism:
    out = Endomorphism.identity(algebra)
    for e in factors:
        out = _compose_with_elementary(out, e)
    return out


def _compose_with_elementary(phi: Endomorphism, e: Elementary) -> Endomorphism:
    """``phi o e`` touching only component ``e.index``."""
    new = phi[e.index].scale(e.alpha) + phi.apply(e.g)
    return phi.replace(e.index, new)


def is_in_H(M: RingMatrix) -> bool:
    """Linear maps of rank 3 fixing span(x2, x3) with unit x1-coefficient."""
    ring = M.ring
    if M.shape != (3, 3) or not is_invertible(M):
        return False
    return not M[0, 1] and not M[0, 2] and ring.is_unit(M[0, 0])


def permutation_matrix(ring, perm: Sequence[int]) -> RingMatrix:
    """Linear map ``x_j -> x_{perm[j-1]}``."""
    n = len(perm)
    rows = [[ring.zero] * n for _ in range(n)]
    for j, p in enumerate(perm):
        rows[p - 1][j] = ring.one
    return RingMatrix(ring, rows)


def linear_endomorphisms_equal(phi: Endomorphism, M: RingMatrix) -> bool:
    return phi.is_linear() and phi.linear_part() == M


def images_as_list(phi: Endomorphism) -> List[str]:
    return [str(f) for f in phi.images]
