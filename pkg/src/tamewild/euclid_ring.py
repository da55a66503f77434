"""Constructive Euclidean rings: the integers and univariate polynomials over Q.

A ring object owns the Euclidean structure (norm, division with remainder,
unit test, canonical associates, literal parsing/printing). Scalars themselves
are plain values supporting ``+ - *``, ``==`` and hashing: Python ``int`` for
``Z`` and :class:`Poly` for ``Q[t]``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Tuple


class RingError(ValueError):
    pass


class Poly:
    """Immutable polynomial in ``t`` with rational coefficients (low to high)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, e: int) -> "Poly":
        return cls([0] * e + [c])

    def degree(self) -> int:
        if not self.coeffs:
            raise RingError("degree of zero polynomial undefined")
        return len(self.coeffs) - 1

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if len(self.coeffs) <= 1:
                self._hash = hash(self.coeffs[0] if self.coeffs else 0)
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for e in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = _format_fraction(a)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if a == 1 else f"{_format_fraction(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class EuclideanRing:
    """Interface shared by the concrete rings.

    Subclasses provide ``zero``, ``one``, ``norm``, ``div_rem``, ``is_unit``,
    ``unit_inverse``, ``normal_unit`` and literal handling. Norms satisfy
    E1/E2 and ``e = norm(one)``.
    """

    name = "?"
    is_field = False
    zero = 0
    one = 1

    def norm(self, a) -> int:
        raise NotImplementedError

    def div_rem(self, a, b):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return bool(a) and self.norm(a) == self.e

    @property
    def e(self) -> int:
        return self.norm(self.one)

    def unit_inverse(self, a):
        raise NotImplementedError

    def normal_unit(self, a):
        """Unit ``u`` with ``u*a`` the canonical associate of ``a``."""
        raise NotImplementedError

    def canonical(self, a):
        if not a:
            return a
        return self.normal_unit(a) * a

    def divides(self, b, a) -> bool:
        """True iff ``b | a`` in the ring."""
        if not b:
            return not a
        return not self.div_rem(a, b)[1]

    def exact_div(self, a, b):
        q, r = self.div_rem(a, b)
        if r:
            raise RingError(f"{self.format(b)} does not divide {self.format(a)}")
        return q

    def gcd(self, a, b):
        while b:
            a, b = b, self.div_rem(a, b)[1]
        return self.canonical(a)

    def from_int(self, n: int):
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        raise NotImplementedError

    def is_negative_display(self, a) -> bool:
        """Whether ``a`` prints as a leading minus sign applied to ``-a``."""
        raise NotImplementedError

    def is_atomic_display(self, a) -> bool:
        """Whether ``a`` needs no parentheses as a coefficient."""
        return True

    def random(self, rng, bound: int):
        raise NotImplementedError

    def random_unit(self, rng, bound: int):
        raise NotImplementedError

    def __repr__(self):
        return f"<ring {self.name}>"


_INT_RE = re.compile(r"\s*[+-]?\d+\s*$")


class IntegerRing(EuclideanRing):
    name = "Z"
    zero = 0
    one = 1

    def norm(self, a: int) -> int:
        if a == 0:
            raise RingError("norm of zero undefined")
        return abs(a)

    def div_rem(self, a: int, b: int):
        if b == 0:
            raise ZeroDivisionError("division by zero in Z")
        r = a % abs(b)
        return (a - r) // b, r

    def is_unit(self, a) -> bool:
        return a in (1, -1)

    def unit_inverse(self, a: int) -> int:
        if a not in (1, -1):
            raise RingError(f"{a} is not a unit in Z")
        return a

    def normal_unit(self, a: int) -> int:
        return -1 if a < 0 else 1

    def from_int(self, n: int) -> int:
        return int(n)

    def coerce(self, value) -> int:
        if isinstance(value, bool):
            raise RingError("boolean is not a ring element")
        if isinstance(value, int):
            return value
        if isinstance(value, Fraction) and value.denominator == 1:
            return value.numerator
        if isinstance(value, Poly) and value.is_const():
            return self.coerce(value.coeffs[0] if value.coeffs else 0)
        if isinstance(value, str):
            return self.parse(value)
        raise RingError(f"cannot interpret {value!r} as an integer")

    def parse(self, text: str) -> int:
        if not _INT_RE.match(text):
            raise RingError(f"malformed integer literal {text!r}")
        return int(text)

    def format(self, a: int) -> str:
        return str(a)

    def is_negative_display(self, a: int) -> bool:
        return a < 0

    def random(self, rng, bound: int) -> int:
        return rng.randint(-bound, bound)

    def random_unit(self, rng, bound: int) -> int:
        return rng.choice((1, -1))


class RationalPolyRing(EuclideanRing):
    """``Q[t]`` with norm = degree, so ``e = 0``."""

    name = "Q[t]"

    def __init__(self):
        self.zero = Poly()
        self.one = Poly.const(1)

    def norm(self, a: Poly) -> int:
        if not a:
            raise RingError("norm of zero undefined")
        return a.degree()

    def div_rem(self, a: Poly, b: Poly):
        a, b = self.coerce(a), self.coerce(b)
        if not b:
            raise ZeroDivisionError("division by zero in Q[t]")
        db, lb = b.degree(), b.lead()
        rem = list(a.coeffs)
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for e in range(len(rem) - 1, db - 1, -1):
            c = rem[e]
            if c == 0:
                continue
            f = c / lb
            quot[e - db] = f
            for i, bc in enumerate(b.coeffs):
                rem[e - db + i] -= f * bc
        return Poly(quot), Poly(rem[:db])

    def is_unit(self, a) -> bool:
        return bool(a) and a.is_const()

    def unit_inverse(self, a: Poly) -> Poly:
        if not self.is_unit(a):
            raise RingError(f"{format_poly(a)} is not a unit in Q[t]")
        return Poly.const(1 / a.coeffs[0])

    def normal_unit(self, a: Poly) -> Poly:
        return Poly.const(1 / a.lead())

    def from_int(self, n: int) -> Poly:
        return Poly.const(n)

    def coerce(self, value) -> Poly:
        if isinstance(value, Poly):
            return value
        if isinstance(value, bool):
            raise RingError("boolean is not a ring element")
        if isinstance(value, (int, Fraction)):
            return Poly.const(value)
        if isinstance(value, str):
            return self.parse(value)
        raise RingError(f"cannot interpret {value!r} as a polynomial")

    def parse(self, text: str) -> Poly:
        from .parser import parse_scalar

        return parse_scalar(text, self)

    def format(self, a: Poly) -> str:
        return format_poly(a)

    def is_negative_display(self, a: Poly) -> bool:
        nonzero = [c for c in a.coeffs if c]
        return len(nonzero) == 1 and nonzero[0] < 0

    def is_atomic_display(self, a: Poly) -> bool:
        return sum(1 for c in a.coeffs if c) <= 1

    def random(self, rng, bound: int) -> Poly:
        return Poly(rng.randint(-bound, bound) for _ in range(rng.randint(1, 2)))

    def random_unit(self, rng, bound: int) -> Poly:
        c = 0
        while c == 0:
            c = rng.randint(-bound, bound)
        return Poly.const(Fraction(c, rng.randint(1, max(bound, 1))))


ZZ = IntegerRing()
QQt = RationalPolyRing()
T = Poly((0, 1))

_RINGS = {"Z": ZZ, "ZZ": ZZ, "Q[t]": QQt, "QQ[t]": QQt}
_FIELDS = {"Q", "QQ", "R", "C", "Q(t)"}


def get_ring(name: str) -> EuclideanRing:
    if name in _RINGS:
        return _RINGS[name]
    if name in _FIELDS:
        raise RingError(f"{name} is a field; a Euclidean ring must not be a field")
    raise RingError(f"unknown ring {name!r} (choose Z or Q[t])")


class FractionScalar:
    """Element of the fraction field of a Euclidean ring, kept reduced.

    The denominator is the canonical associate (positive / monic).
    """

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: EuclideanRing, num, den=None):
        if den is None:
            den = ring.one
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = ring.gcd(num, den)
            num, den = ring.exact_div(num, g), ring.exact_div(den, g)
            u = ring.normal_unit(den)
            num, den = num * u, den * u
        else:
            num, den = ring.zero, ring.one
        self.ring = ring
        self.num = num
        self.den = den

    def _lift(self, other):
        if isinstance(other, FractionScalar):
            return other
        return FractionScalar(self.ring, self.ring.coerce(other))

    def __add__(self, other):
        o = self._lift(other)
        return FractionScalar(self.ring, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FractionScalar(self.ring, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return FractionScalar(self.ring, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num:
            raise ZeroDivisionError("division by zero fraction")
        return FractionScalar(self.ring, self.num * o.den, self.den * o.num)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, FractionScalar):
            return self.num == other.num and self.den == other.den
        try:
            o = self._lift(other)
        except RingError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den == self.ring.one:
            return hash(self.num)
        return hash((self.num, self.den))

    def is_integral(self) -> bool:
        return self.ring.is_unit(self.den)

    def to_ring(self):
        if not self.is_integral():
            raise RingError(f"{self} is not in {self.ring.name}")
        return self.num * self.ring.unit_inverse(self.den)

    def __repr__(self):
        return f"FractionScalar({self})"

    def __str__(self):
        r = self.ring
        if self.den == r.one:
            return r.format(self.num)
        num, den = r.format(self.num), r.format(self.den)
        if not r.is_atomic_display(self.num):
            num = f"({num})"
        if not r.is_atomic_display(self.den):
            den = f"({den})"
        return f"{num}/{den}"


_FRACTION_FIELDS = {}


def fraction_field(base: EuclideanRing) -> "FractionField":
    """The (shared) fraction field of ``base``."""
    if base.name not in _FRACTION_FIELDS:
        _FRACTION_FIELDS[base.name] = FractionField(base)
    return _FRACTION_FIELDS[base.name]


class FractionField:
    """The fraction field ``Q(Phi)`` as a coefficient domain.

    Only the arithmetic side of the ring interface is offered: it is a field,
    so it can host algebra elements (for constructions that are elementary
    only over fractions) but is never accepted where a Euclidean ring is
    required.
    """

    is_field = True

    def __init__(self, base: EuclideanRing):
        self.base = base
        self.name = f"Frac({base.name})"
        self.zero = FractionScalar(base, base.zero)
        self.one = FractionScalar(base, base.one)

    def coerce(self, value) -> FractionScalar:
        if isinstance(value, FractionScalar):
            return value
        return FractionScalar(self.base, self.base.coerce(value))

    def is_unit(self, a) -> bool:
        return bool(a)

    def unit_inverse(self, a):
        return self.one / a

    def format(self, a) -> str:
        return str(a)

    def is_negative_display(self, a) -> bool:
        return a.den == self.base.one and self.base.is_negative_display(a.num)

    def is_atomic_display(self, a) -> bool:
        return a.den == self.base.one and self.base.is_atomic_display(a.num)

    def __repr__(self):
        return f"<field {self.name}>"
