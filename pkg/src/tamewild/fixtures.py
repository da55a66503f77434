"""Built-in endomorphisms for the command line and the acceptance tests."""

from __future__ import annotations

from typing import Callable, Dict, List, Tuple

from .endomorphism import Endomorphism
from .euclid_ring import fraction_field
from .free_algebra import FreeAlgebra


def _zx1_minus_bracket(A: FreeAlgebra, z) -> "AlgebraElement":  # noqa: F821
    x1, x2, x3 = A.gens
    return x1.scale(z) - A.bracket(x2, x3)


def anick_delta(A: FreeAlgebra, z) -> Endomorphism:
    """``(x1 + [z x1 - [x2,x3], x3], x2 + z (z x1 - [x2,x3]), x3)``."""
    if A.rank != 3:
        raise ValueError("the fixture lives in rank 3")
    z = A.ring.coerce(z)
    x1, x2, x3 = A.gens
    u = _zx1_minus_bracket(A, z)
    return Endomorphism(A, [x1 + A.bracket(u, x3), x2 + u.scale(z), x3])


def anick_delta_inverse(A: FreeAlgebra, z) -> Endomorphism:
    """``psi`` with ``delta o psi = id``, read off from the generation identities."""
    if A.rank != 3:
        raise ValueError("the fixture lives in rank 3")
    z = A.ring.coerce(z)
    x1, x2, x3 = A.gens
    u = _zx1_minus_bracket(A, z)
    return Endomorphism(A, [x1 - A.bracket(u, x3), x2 - u.scale(z), x3])


def anick_chain(A: FreeAlgebra, z) -> List[Tuple[str, Endomorphism]]:
    """The five transformations building ``delta``, each elementary over fractions.

    Every entry is ``(description, triple)`` over the fraction field; the last
    triple equals ``delta``.
    """
    K = FreeAlgebra(3, fraction_field(A.ring), A.mode)
    zk = K.ring.coerce(z)
    if not zk:
        raise ValueError("z must be nonzero")
    zinv = K.ring.unit_inverse(zk)
    current = Endomorphism.identity(K)
    out = []

    def step(text, i, value):
        nonlocal current
        current = current.replace(i, value)
        out.append((text, current))

    step("f1 -> z*f1", 1, current[1].scale(zk))
    step("f1 -> f1 - [f2,f3]", 1, current[1] - K.bracket(current[2], current[3]))
    step("f2 -> f2 + z*f1", 2, current[2] + current[1].scale(zk))
    step("f1 -> f1 + [f2,f3]", 1, current[1] + K.bracket(current[2], current[3]))
    step("f1 -> z^-1*f1", 1, current[1].scale(zinv))
    return out


FIXTURES: Dict[str, Callable] = {
    "anick-delta": anick_delta,
    "anick-delta-inverse": anick_delta_inverse,
}


def get_fixture(name: str, A: FreeAlgebra, z) -> Endomorphism:
    try:
        return FIXTURES[name](A, z)
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}") from None
