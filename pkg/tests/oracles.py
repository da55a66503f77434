"""Independent reference computations used by the tests.

None of these call into the rewriting kernel: Lie elements are checked
through their associative (tensor) expansion, counts through explicit
enumeration, and solvability through sympy's Smith normal form.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

import sympy
from sympy.matrices.normalforms import smith_normal_decomp

from tamewild.euclid_ring import Poly, ZZ, QQt

PRIME = 1_000_003


# ---------------------------------------------------------------- associative expansion


@lru_cache(maxsize=None)
def assoc_expand(tree):
    """``[a, b] -> ab - ba`` as a dict from letter tuples to integers."""
    if isinstance(tree, int):
        return {(tree,): 1}
    a, b = assoc_expand(tree[0]), assoc_expand(tree[1])
    out = {}
    for u, c in a.items():
        for v, d in b.items():
            for w, s in ((u + v, c * d), (v + u, -c * d)):
                n = out.get(w, 0) + s
                if n:
                    out[w] = n
                else:
                    out.pop(w, None)
    return out


def expand_element(f):
    """Associative image of an algebra element, ring coefficients."""
    ring = f.algebra.ring
    out = {}
    for w, c in f.terms.items():
        for u, k in assoc_expand(w).items():
            n = out.get(u, ring.zero) + c * k
            if n:
                out[u] = n
            else:
                out.pop(u, None)
    return out


def expand_tree(tree, coeff, ring):
    return {u: coeff * k for u, k in assoc_expand(tree).items()}


def all_trees(rank, d):
    """Every bracket tree with ``d`` leaves over ``rank`` letters."""
    if d == 1:
        return list(range(1, rank + 1))
    out = []
    for i in range(1, d):
        for a in all_trees(rank, i):
            for b in all_trees(rank, d - i):
                out.append((a, b))
    return out


def rank_mod_p(vectors, p=PRIME):
    """Rank of integer vectors (dicts) modulo ``p``."""
    pivots = {}
    rank = 0
    for vec in vectors:
        v = {k: c % p for k, c in vec.items() if c % p}
        while v:
            lead = max(v)
            if lead not in pivots:
                inv = pow(v[lead], p - 2, p)
                pivots[lead] = {k: c * inv % p for k, c in v.items()}
                rank += 1
                break
            pv = pivots[lead]
            f = v[lead]
            for k, c in pv.items():
                n = (v.get(k, 0) - f * c) % p
                if n:
                    v[k] = n
                else:
                    v.pop(k, None)
    return rank


# ---------------------------------------------------------------- counts


def mobius(n):
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def witt_oracle(n, d):
    total = sum(mobius(d // k) * n ** k for k in range(1, d + 1) if d % k == 0)
    assert total % d == 0
    return total // d


def anti_recurrence(n, d):
    t = {1: n}
    for m in range(2, d + 1):
        s = sum(t[i] * t[m - i] for i in range(1, m) if i < m - i)
        if m % 2 == 0:
            s += t[m // 2] * (t[m // 2] - 1) // 2
        t[m] = s
    return t[d]


def _tkey(t):
    return repr(t)


def anti_canonical(tree):
    """``(sign, canonical tree)`` modulo anticommutativity, or None if zero."""
    if isinstance(tree, int):
        return 1, tree
    left, right = anti_canonical(tree[0]), anti_canonical(tree[1])
    if left is None or right is None:
        return None
    (s1, a), (s2, b) = left, right
    if a == b:
        return None
    if _tkey(a) < _tkey(b):
        return -s1 * s2, (b, a)
    return s1 * s2, (a, b)


def anti_enumerate(n, d):
    return {anti_canonical(t)[1] for t in all_trees(n, d) if anti_canonical(t) is not None}


# ---------------------------------------------------------------- Smith-form solvability


_t = sympy.Symbol("t")


def _to_sympy(ring, a):
    if ring is ZZ:
        return sympy.Integer(a)
    return sum(sympy.Rational(c.numerator, c.denominator) * _t ** k for k, c in enumerate(a.coeffs))


def smith_solvable(A, b) -> bool:
    """Whether ``A x = b`` has a solution over the ring, via Smith normal form."""
    ring = A.ring
    m, n = A.shape
    if n == 0:
        return not any(b)
    M = sympy.Matrix(m, n, lambda i, j: _to_sympy(ring, A[i, j]))
    domain = sympy.ZZ if ring is ZZ else sympy.QQ[_t]
    if all(x == 0 for x in M):
        return not any(b)
    S, U, _ = smith_normal_decomp(M, domain=domain)
    rhs = (U * sympy.Matrix([_to_sympy(ring, x) for x in b])).applyfunc(sympy.expand)
    for i in range(m):
        d = S[i, i] if i < n else 0
        if d == 0:
            if rhs[i] != 0:
                return False
        elif ring is ZZ:
            if int(rhs[i]) % int(d) != 0:
                return False
        elif sympy.rem(rhs[i], d, _t) != 0:
            return False
    return True


# ---------------------------------------------------------------- random data


def random_scalar(rng: random.Random, ring, bound=4):
    if ring is ZZ:
        return rng.randint(-bound, bound)
    return Poly(Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2, 3))) for _ in range(rng.randint(1, 3)))


def random_nonzero(rng, ring, bound=4):
    while True:
        a = random_scalar(rng, ring, bound)
        if a:
            return a


def random_tree(rng: random.Random, rank: int, leaves: int):
    if leaves == 1:
        return rng.randint(1, rank)
    k = rng.randint(1, leaves - 1)
    return (random_tree(rng, rank, k), random_tree(rng, rank, leaves - k))


def random_element(rng: random.Random, A, max_len=3, terms=3, bound=4):
    f = A.zero
    for _ in range(rng.randint(1, terms)):
        f = f + A.normalize(random_tree(rng, A.rank, rng.randint(1, max_len)), random_scalar(rng, A.ring, bound))
    return f


def random_matrix(rng: random.Random, ring, m, n, bound=6, density=0.7):
    from tamewild.linalg_euclid import RingMatrix

    return RingMatrix(
        ring, [[random_scalar(rng, ring, bound) if rng.random() < density else ring.zero for _ in range(n)]
               for _ in range(m)], ncols=n)


def pairs(items):
    return itertools.combinations(items, 2)
