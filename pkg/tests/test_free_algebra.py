import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import (
    all_trees,
    anti_canonical,
    anti_recurrence,
    assoc_expand,
    expand_element,
    random_element,
    random_scalar,
    random_tree,
    rank_mod_p,
    witt_oracle,
)
from tamewild.euclid_ring import QQt, ZZ, T
from tamewild.free_algebra import (
    ANTI,
    LIE,
    AlgebraError,
    FreeAlgebra,
    anticommutative_dimension,
    hall_basis,
    is_basis_word,
    linearly_dependent_pair,
    multidegree,
    substitute,
    witt_dimension,
    word_compare,
    word_key,
)

L3 = FreeAlgebra(3, ZZ, LIE)
X1, X2, X3 = L3.gens

# frozen from the Witt formula and the tree-count recurrence
LIE_RANK3 = [3, 3, 8, 18, 48, 116, 312, 810]
ANTI_RANK3 = [3, 3, 9, 30, 117, 477, 2052, 9075]
LIE_RANK2 = [2, 1, 2, 3, 6, 9, 18, 30]
ANTI_RANK2 = [2, 1, 2, 4, 10, 25, 68, 187]


def test_word_order_examples():
    assert word_compare(2, (2, 3)) == -1
    assert word_compare(1, 2) == 1
    assert word_compare((1, 3), (2, 3)) == 1
    assert word_compare((2, 3), (2, 3)) == 0


def test_word_order_is_total_on_basis():
    words = [w for d in range(1, 5) for w in hall_basis(3, d)]
    keys = [word_key(w) for w in words]
    assert len(set(keys)) == len(keys)
    for d in range(1, 6):
        basis = hall_basis(3, d)
        assert basis == sorted(basis, key=word_key, reverse=True)


def test_small_bases():
    assert hall_basis(3, 1) == [1, 2, 3]
    assert hall_basis(3, 2) == [(1, 2), (1, 3), (2, 3)]
    assert len(hall_basis(3, 3)) == 8
    assert len(hall_basis(3, 4, ANTI)) == 30


@pytest.mark.parametrize("d", range(1, 9))
def test_frozen_counts(d):
    assert len(hall_basis(3, d, LIE)) == LIE_RANK3[d - 1] == witt_oracle(3, d)
    assert len(hall_basis(3, d, ANTI)) == ANTI_RANK3[d - 1] == anti_recurrence(3, d)
    assert len(hall_basis(2, d, LIE)) == LIE_RANK2[d - 1] == witt_oracle(2, d)
    assert len(hall_basis(2, d, ANTI)) == ANTI_RANK2[d - 1] == anti_recurrence(2, d)
    assert witt_dimension(3, d) == LIE_RANK3[d - 1]
    assert anticommutative_dimension(3, d) == ANTI_RANK3[d - 1]


@pytest.mark.parametrize("d", range(1, 6))
def test_span_rank_matches_basis(d):
    basis = hall_basis(3, d)
    assert rank_mod_p([assoc_expand(w) for w in basis]) == len(basis)
    assert rank_mod_p([assoc_expand(t) for t in all_trees(3, d)]) == len(basis)


def test_normalize_examples():
    assert not L3.normalize((1, 1))
    assert L3.normalize((2, 1)) == -L3.normalize((1, 2))
    jac = L3.normalize(((1, 2), 3)) + L3.normalize(((2, 3), 1)) + L3.normalize(((3, 1), 2))
    assert not jac


def test_normalize_idempotent_on_basis():
    for d in range(1, 6):
        for w in hall_basis(3, d):
            assert L3.normalize(w).terms == {w: 1}
            assert is_basis_word(w)


def test_normalize_agrees_with_tensor_expansion():
    rng = random.Random(7)
    for _ in range(400):
        t = random_tree(rng, 3, rng.randint(1, 7))
        assert expand_element(L3.normalize(t)) == assoc_expand(t)


def test_anti_normalize_agrees_with_canonical_trees():
    A = FreeAlgebra(3, ZZ, ANTI)
    rng = random.Random(8)
    seen = {}
    for _ in range(400):
        t = random_tree(rng, 3, rng.randint(1, 7))
        f = A.normalize(t)
        can = anti_canonical(t)
        if can is None:
            assert not f
            continue
        assert len(f.terms) == 1
        (w, c), = f.terms.items()
        assert c in (1, -1)
        sign, key = can
        if key in seen:
            assert seen[key] == (w, c * sign)
        seen[key] = (w, c * sign)
    assert len({v[0] for v in seen.values()}) == len(seen)


def test_anti_mode_has_no_jacobi():
    A = FreeAlgebra(3, ZZ, ANTI)
    jac = A.normalize(((1, 2), 3)) + A.normalize(((2, 3), 1)) + A.normalize(((3, 1), 2))
    assert len(jac.terms) == 3


def test_bracket_examples():
    assert not L3.bracket(X3, X3)
    assert L3.bracket(X2.scale(2), X3) == L3.normalize((2, 3), 2)


def test_module_operations():
    f = L3.bracket(X1, X2).scale(3) + X1
    assert not (f + f.scale(-1))
    assert not f.scale(0)
    assert X1.scale(5).leading_coeff() == 5


def test_degrees():
    f = L3.normalize(((2, 3), 3))
    assert f.deg() == 3
    assert X1.deg_w((5, 1, 1)) == 5
    Z = FreeAlgebra(2, ZZ)
    assert Z.normalize((1, 2)).deg_w((2, 1)) == 3
    assert multidegree(((2, 3), 3), 3) == (0, 1, 2)
    with pytest.raises(AlgebraError):
        L3.zero.deg()


def test_leading_data():
    z = 2
    f = X2 + (X1.scale(z) - L3.bracket(X2, X3)).scale(z)
    assert f.leading_part() == L3.bracket(X2, X3).scale(-z)
    assert X3.leading_monomial() == 3 and X3.leading_coeff() == 1
    g = L3.bracket(X1, X2).scale(3) + X1
    assert g.leading_part() == L3.bracket(X1, X2).scale(3)
    assert g.leading_term() == L3.bracket(X1, X2).scale(3)
    assert g.words()[0] == g.leading_monomial()


def test_polynomial_leading_part_sign():
    A = FreeAlgebra(3, QQt)
    x1, x2, x3 = A.gens
    f = x2 + (x1.scale(T) - A.bracket(x2, x3)).scale(T)
    assert f.leading_part() == A.bracket(x2, x3).scale(-T)


def test_linear_dependence():
    f = L3.bracket(X1, X2) + X3
    assert linearly_dependent_pair(f, f.scale(2))
    assert not linearly_dependent_pair(X1, X2)
    assert linearly_dependent_pair(L3.bracket(X1, X2).scale(2), L3.bracket(X1, X2).scale(3))
    assert not linearly_dependent_pair(f, f.scale(2) + X1)


def test_mismatched_algebras():
    other = FreeAlgebra(3, QQt)
    with pytest.raises(AlgebraError):
        X1 + other.gen(1)
    with pytest.raises(AlgebraError):
        L3.bracket(X1, FreeAlgebra(3, ZZ, ANTI).gen(2))


def test_substitute_is_homomorphism():
    rng = random.Random(3)
    for _ in range(50):
        images = [random_element(rng, L3, 2, 2) for _ in range(3)]
        f = random_element(rng, L3, 3)
        g = random_element(rng, L3, 3)
        s = lambda h: substitute(h, images, L3)  # noqa: E731
        assert s(L3.bracket(f, g)) == L3.bracket(s(f), s(g))
        assert s(f + g) == s(f) + s(g)


@pytest.mark.parametrize("ring", [ZZ, QQt], ids=["Z", "Qt"])
@pytest.mark.parametrize("mode", [LIE, ANTI])
@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_algebra_laws(ring, mode, seed):
    rng = random.Random(seed)
    A = FreeAlgebra(3, ring, mode)
    f, g, h = (random_element(rng, A) for _ in range(3))
    a = random_scalar(rng, ring)
    assert A.bracket(f + g.scale(a), h) == A.bracket(f, h) + A.bracket(g, h).scale(a)
    assert A.bracket(f, g) == -A.bracket(g, f)
    assert not A.bracket(f, f)
    if mode == LIE:
        jac = A.bracket(A.bracket(f, g), h) + A.bracket(A.bracket(g, h), f) + A.bracket(A.bracket(h, f), g)
        assert not jac
