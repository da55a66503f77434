"""Free Lie and free anticommutative algebras of finite rank over a ring.

Words are nested tuples: a generator ``x_i`` is the int ``i`` (1-based) and a
product ``[u, v]`` is the pair ``(u, v)``. Words are totally ordered by length
first, then lexicographically on ``(left, right)``, with ``x1 > x2 > ... > xn``.

The module basis is the Hall set for this order: ``[u, v]`` is a basis word
iff ``u``, ``v`` are basis words, ``u > v``, and ``u`` is a generator or
``u = [u1, u2]`` with ``u2 <= v``. In anticommutative mode the last condition
is dropped.
"""

from __future__ import annotations

from collections.abc import Mapping
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

Word = Union[int, tuple]

LIE = "lie"
ANTI = "anti"
_MODE_ALIASES = {"lie": LIE, "anti": ANTI, "anticommutative": ANTI}


class AlgebraError(ValueError):
    pass


def canonical_mode(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise AlgebraError(f"unknown algebra mode {mode!r} (choose lie or anti)") from None


# ---------------------------------------------------------------- words


@lru_cache(maxsize=None)
def word_length(w: Word) -> int:
    if isinstance(w, int):
        return 1
    return word_length(w[0]) + word_length(w[1])


@lru_cache(maxsize=None)
def word_key(w: Word) -> tuple:
    """Sort key realizing the word order (larger key = larger word)."""
    if isinstance(w, int):
        return (1, -w)
    return (word_length(w), word_key(w[0]), word_key(w[1]))


def word_compare(u: Word, v: Word) -> int:
    """-1, 0 or 1 as ``u < v``, ``u == v`` or ``u > v``."""
    if u == v:
        return 0
    return 1 if word_key(u) > word_key(v) else -1


def word_less(u: Word, v: Word) -> bool:
    return word_key(u) < word_key(v)


def is_tree(w) -> bool:
    if isinstance(w, bool):
        return False
    if isinstance(w, int):
        return w >= 1
    return isinstance(w, tuple) and len(w) == 2 and is_tree(w[0]) and is_tree(w[1])


@lru_cache(maxsize=None)
def _multidegree(w: Word) -> Tuple[Tuple[int, int], ...]:
    if isinstance(w, int):
        return ((w, 1),)
    acc: Dict[int, int] = {}
    for part in (w[0], w[1]):
        for i, m in _multidegree(part):
            acc[i] = acc.get(i, 0) + m
    return tuple(sorted(acc.items()))


def multidegree(w: Word, rank: int) -> Tuple[int, ...]:
    out = [0] * rank
    for i, m in _multidegree(w):
        if i > rank:
            raise AlgebraError(f"x{i} exceeds rank {rank}")
        out[i - 1] = m
    return tuple(out)


def word_generators(w: Word) -> Tuple[int, ...]:
    return tuple(i for i, _ in _multidegree(w))


def word_deg_w(w: Word, weights: Sequence[int]) -> int:
    return sum(weights[i - 1] * m for i, m in _multidegree(w))


def max_generator(w: Word) -> int:
    return _multidegree(w)[-1][0]


def is_basis_word(w: Word, mode: str = LIE) -> bool:
    if isinstance(w, int):
        return w >= 1
    u, v = w
    if not (is_basis_word(u, mode) and is_basis_word(v, mode)):
        return False
    if not word_less(v, u):
        return False
    if mode == LIE and not isinstance(u, int):
        return not word_less(v, u[1])
    return True


def format_word(w: Word, names: Optional[Sequence[str]] = None) -> str:
    if isinstance(w, int):
        return names[w - 1] if names else f"x{w}"
    return f"[{format_word(w[0], names)},{format_word(w[1], names)}]"


def substitute_word(w: Word, mapping: Sequence[Word]) -> Word:
    """Rename generators: ``x_i`` becomes the word ``mapping[i-1]``."""
    if isinstance(w, int):
        return mapping[w - 1]
    return (substitute_word(w[0], mapping), substitute_word(w[1], mapping))


# ---------------------------------------------------------------- structure constants


def _combine(acc: Dict[Word, int], terms, scale: int) -> None:
    for w, c in terms:
        n = acc.get(w, 0) + scale * c
        if n:
            acc[w] = n
        else:
            acc.pop(w, None)


@lru_cache(maxsize=None)
def bracket_basis_words(u: Word, v: Word, mode: str = LIE) -> Tuple[Tuple[Word, int], ...]:
    """Expansion of ``[u, v]`` for basis words ``u``, ``v`` in the basis.

    Coefficients are integers, independent of the coefficient ring.
    """
    if u == v:
        return ()
    if word_less(u, v):
        return tuple((w, -c) for w, c in bracket_basis_words(v, u, mode))
    if mode != LIE or isinstance(u, int) or not word_less(v, u[1]):
        return (((u, v), 1),)
    # [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
    u1, u2 = u
    acc: Dict[Word, int] = {}
    for w, c in bracket_basis_words(u1, v, mode):
        _combine(acc, bracket_basis_words(w, u2, mode), c)
    for w, c in bracket_basis_words(u2, v, mode):
        _combine(acc, bracket_basis_words(u1, w, mode), c)
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _basis_of_length(rank: int, d: int, mode: str) -> Tuple[Word, ...]:
    if d == 1:
        return tuple(range(1, rank + 1))
    out = []
    for a in range((d + 1) // 2, d):
        b = d - a
        for u in _basis_of_length(rank, a, mode):
            for v in _basis_of_length(rank, b, mode):
                if not word_less(v, u):
                    continue
                if mode == LIE and not isinstance(u, int) and word_less(v, u[1]):
                    continue
                out.append((u, v))
    out.sort(key=word_key, reverse=True)
    return tuple(out)


def hall_basis(rank: int, degree: int, mode: str = LIE) -> List[Word]:
    """All basis words of length ``degree``, in descending word order."""
    if rank < 1 or degree < 1:
        raise AlgebraError("rank and degree must be positive")
    return list(_basis_of_length(rank, degree, canonical_mode(mode)))


def witt_dimension(rank: int, degree: int) -> int:
    """Necklace count ``(1/d) * sum_{k | d} mu(d/k) * n**k``."""
    from sympy import divisors
    from sympy.functions.combinatorial.numbers import mobius

    total = sum(int(mobius(degree // k)) * rank ** k for k in divisors(degree))
    return total // degree


@lru_cache(maxsize=None)
def anticommutative_dimension(rank: int, degree: int) -> int:
    if degree == 1:
        return rank
    total = 0
    for i in range(1, (degree + 1) // 2):
        total += anticommutative_dimension(rank, i) * anticommutative_dimension(rank, degree - i)
    if degree % 2 == 0:
        h = anticommutative_dimension(rank, degree // 2)
        total += h * (h - 1) // 2
    return total


# ---------------------------------------------------------------- algebra


class FreeAlgebra:
    """``L<x1..xn>`` (mode ``lie``) or the free anticommutative algebra."""

    def __init__(self, rank: int, ring, mode: str = LIE):
        if rank < 1:
            raise AlgebraError("rank must be positive")
        self.rank = rank
        self.ring = ring
        self.mode = canonical_mode(mode)

    def __eq__(self, other):
        return (
            isinstance(other, FreeAlgebra)
            and self.rank == other.rank
            and self.ring is other.ring
            and self.mode == other.mode
        )

    def __hash__(self):
        return hash((self.rank, id(self.ring), self.mode))

    def __repr__(self):
        return f"FreeAlgebra(rank={self.rank}, ring={self.ring.name}, mode={self.mode})"

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def gen(self, i: int) -> "AlgebraElement":
        if not 1 <= i <= self.rank:
            raise AlgebraError(f"generator x{i} outside rank {self.rank}")
        return AlgebraElement(self, {i: self.ring.one})

    @property
    def gens(self) -> List["AlgebraElement"]:
        return [self.gen(i) for i in range(1, self.rank + 1)]

    def basis(self, degree: int) -> List[Word]:
        return hall_basis(self.rank, degree, self.mode)

    def monomial(self, w: Word, coeff=None) -> "AlgebraElement":
        """Basis word ``w`` times ``coeff``; ``w`` must be a basis word."""
        if not is_basis_word(w, self.mode):
            raise AlgebraError(f"{format_word(w)} is not a basis word")
        self._check_word(w)
        c = self.ring.one if coeff is None else self.ring.coerce(coeff)
        return AlgebraElement(self, {w: c} if c else {})

    def from_terms(self, terms) -> "AlgebraElement":
        """Element from ``(word, coeff)`` pairs or a ``{word: coeff}`` mapping."""
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: Dict[Word, object] = {}
        for w, c in terms:
            if not is_basis_word(w, self.mode):
                raise AlgebraError(f"{format_word(w)} is not a basis word")
            self._check_word(w)
            _accumulate(acc, w, self.ring.coerce(c))
        return AlgebraElement(self, acc)

    def _check_word(self, w: Word) -> None:
        if max_generator(w) > self.rank:
            raise AlgebraError(f"x{max_generator(w)} exceeds rank {self.rank}")

    def normalize(self, tree, coeff=None) -> "AlgebraElement":
        """Basis expansion of an arbitrary bracket tree, times ``coeff``."""
        if not is_tree(tree):
            raise AlgebraError(f"not a bracket tree: {tree!r}")
        self._check_word(tree)
        c = self.ring.one if coeff is None else self.ring.coerce(coeff)
        return self._normalize(tree).scale(c)

    def _normalize(self, tree) -> "AlgebraElement":
        if isinstance(tree, int):
            return self.gen(tree)
        return self.bracket(self._normalize(tree[0]), self._normalize(tree[1]))

    def bracket(self, f: "AlgebraElement", g: "AlgebraElement") -> "AlgebraElement":
        self._check_operand(f)
        self._check_operand(g)
        acc: Dict[Word, object] = {}
        mode = self.mode
        for u, a in f.terms.items():
            for v, b in g.terms.items():
                if u == v:
                    continue
                ab = a * b
                for w, c in bracket_basis_words(u, v, mode):
                    _accumulate(acc, w, ab * c)
        return AlgebraElement(self, acc)

    def _check_operand(self, f) -> None:
        if not isinstance(f, AlgebraElement) or f.algebra != self:
            raise AlgebraError("operands belong to different algebras")

    def change_ring(self, ring) -> "FreeAlgebra":
        return FreeAlgebra(self.rank, ring, self.mode)

    def coerce_element(self, f: "AlgebraElement") -> "AlgebraElement":
        """Reinterpret ``f`` (same rank and mode) with coefficients in this ring."""
        if f.algebra.rank > self.rank or f.algebra.mode != self.mode:
            raise AlgebraError("incompatible algebras")
        return AlgebraElement(self, {w: self.ring.coerce(c) for w, c in f.terms.items()})


def _accumulate(acc: Dict[Word, object], w: Word, c) -> None:
    if w in acc:
        n = acc[w] + c
        if n:
            acc[w] = n
        else:
            del acc[w]
    elif c:
        acc[w] = c


class AlgebraElement:
    """Sparse combination of basis words with nonzero coefficients.

    Immutable; iteration (``items``) is in descending word order, so the first
    term is the leading term.
    """

    __slots__ = ("algebra", "terms", "_order", "_hash")

    def __init__(self, algebra: FreeAlgebra, terms: Dict[Word, object]):
        self.algebra = algebra
        self.terms = terms
        self._order = None
        self._hash = None

    @property
    def ring(self):
        return self.algebra.ring

    def words(self) -> Tuple[Word, ...]:
        if self._order is None:
            self._order = tuple(sorted(self.terms, key=word_key, reverse=True))
        return self._order

    def items(self) -> List[Tuple[Word, object]]:
        return [(w, self.terms[w]) for w in self.words()]

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def coeff(self, w: Word):
        return self.terms.get(w, self.ring.zero)

    # arithmetic

    def _compatible(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            raise AlgebraError("operands belong to different algebras")

    def __add__(self, other):
        self._compatible(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(acc, w, c)
        return AlgebraElement(self.algebra, acc)

    def __neg__(self):
        return AlgebraElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        self._compatible(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(acc, w, -c)
        return AlgebraElement(self.algebra, acc)

    def scale(self, alpha) -> "AlgebraElement":
        alpha = self.ring.coerce(alpha)
        if not alpha:
            return self.algebra.zero
        out = {}
        for w, c in self.terms.items():
            n = alpha * c
            if n:
                out[w] = n
        return AlgebraElement(self.algebra, out)

    def __rmul__(self, alpha):
        return self.scale(alpha)

    def bracket(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.algebra.bracket(self, other)

    # degrees and leading data

    def _nonzero(self) -> None:
        if not self.terms:
            raise AlgebraError("zero element has no degree or leading data")

    def deg(self) -> int:
        self._nonzero()
        return word_length(self.words()[0])

    def min_deg(self) -> int:
        self._nonzero()
        return word_length(self.words()[-1])

    def deg_w(self, weights: Sequence[int]) -> int:
        self._nonzero()
        return max(word_deg_w(w, weights) for w in self.terms)

    def leading_monomial(self) -> Word:
        self._nonzero()
        return self.words()[0]

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def leading_term(self) -> "AlgebraElement":
        w = self.leading_monomial()
        return AlgebraElement(self.algebra, {w: self.terms[w]})

    def leading_part(self, weights: Optional[Sequence[int]] = None) -> "AlgebraElement":
        """Top homogeneous component for ``deg`` (or ``deg_w`` if given)."""
        self._nonzero()
        if weights is None:
            d = self.deg()
            return AlgebraElement(self.algebra, {w: c for w, c in self.terms.items() if word_length(w) == d})
        d = self.deg_w(weights)
        return AlgebraElement(
            self.algebra, {w: c for w, c in self.terms.items() if word_deg_w(w, weights) == d}
        )

    def homogeneous_component(self, d: int) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {w: c for w, c in self.terms.items() if word_length(w) == d})

    def is_homogeneous(self) -> bool:
        return len({word_length(w) for w in self.terms}) <= 1

    def involves(self, i: int) -> bool:
        return any(i in word_generators(w) for w in self.terms)

    def generators_used(self) -> set:
        out = set()
        for w in self.terms:
            out.update(word_generators(w))
        return out

    def __str__(self):
        from .parser import format_element

        return format_element(self)

    def __repr__(self):
        return f"AlgebraElement({self})"


def bracket(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    return f.algebra.bracket(f, g)


def linearly_dependent_pair(f: AlgebraElement, g: AlgebraElement) -> bool:
    """Proportionality over the fraction field (Lie dependence for pairs)."""
    if f.algebra != g.algebra:
        raise AlgebraError("operands belong to different algebras")
    if not f or not g:
        raise AlgebraError("zero element")
    if f.terms.keys() != g.terms.keys():
        return False
    w0 = f.leading_monomial()
    a0, b0 = f.terms[w0], g.terms[w0]
    return all(f.terms[w] * b0 == g.terms[w] * a0 for w in f.terms)


def substitute(f: AlgebraElement, images: Sequence[AlgebraElement], target: Optional[FreeAlgebra] = None,
               memo: Optional[dict] = None) -> AlgebraElement:
    """Evaluate ``f`` at ``x_i -> images[i-1]`` in the images' algebra."""
    if target is None:
        if not images:
            raise AlgebraError("no images to substitute")
        target = images[0].algebra
    if f.terms:
        used = max(max_generator(w) for w in f.terms)
        if used > len(images):
            raise AlgebraError(f"no image for x{used}")
    if memo is None:
        memo = {}
    acc: Dict[Word, object] = {}
    for w, c in f.terms.items():
        for v, d in evaluate_word(w, images, target, memo).terms.items():
            _accumulate(acc, v, c * d)
    return AlgebraElement(target, acc)


def evaluate_word(w: Word, images: Sequence[AlgebraElement], target: FreeAlgebra, memo: dict) -> AlgebraElement:
    r = memo.get(w)
    if r is None:
        if isinstance(w, int):
            r = images[w - 1]
        else:
            r = target.bracket(evaluate_word(w[0], images, target, memo), evaluate_word(w[1], images, target, memo))
        memo[w] = r
    return r
