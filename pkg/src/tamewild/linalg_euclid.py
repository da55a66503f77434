"""Exact dense linear algebra over a Euclidean ring.

Hermite normal form (row style), solving ``A x = b`` over the ring with
diagnostics that separate "inconsistent over the fraction field" from
"consistent over fractions but obstructed over the ring", determinants,
and factorization of invertible matrices into transvections and a unit
diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .euclid_ring import FractionScalar, RingError


class MatrixError(ValueError):
    pass


class RingMatrix:
    """Immutable dense matrix with entries in ``ring``."""

    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows: Sequence[Sequence], ncols: Optional[int] = None):
        rows = tuple(tuple(ring.coerce(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise MatrixError("ragged matrix")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def identity(cls, ring, n: int) -> "RingMatrix":
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, m: int, n: int) -> "RingMatrix":
        return cls(ring, [[ring.zero] * n for _ in range(m)], ncols=n)

    @classmethod
    def diagonal(cls, ring, entries: Sequence) -> "RingMatrix":
        n = len(entries)
        return cls(ring, [[entries[i] if i == j else ring.zero for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> List:
        return [r[j] for r in self.rows]

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.ring, [list(c) for c in zip(*self.rows)], ncols=self.nrows) if self.rows else \
            RingMatrix(self.ring, [[]] * self.ncols, ncols=0)

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        if self.ncols != other.nrows:
            raise MatrixError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.ring.zero
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = zero
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return RingMatrix(self.ring, out, ncols=other.ncols)

    def apply(self, vec: Sequence) -> List:
        return [sum((a * x for a, x in zip(r, vec)), self.ring.zero) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, RingMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def to_lists(self) -> List[List[str]]:
        return [[self.ring.format(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"RingMatrix({self.to_lists()})"


def _mutable(A: RingMatrix) -> List[list]:
    return [list(r) for r in A.rows]


def det(A: RingMatrix):
    """Exact determinant (fraction-free Bareiss elimination)."""
    if not A.is_square():
        raise MatrixError("determinant of a non-square matrix")
    ring = A.ring
    n = A.nrows
    if n == 0:
        return ring.one
    M = _mutable(A)
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not M[k][k]:
            p = next((i for i in range(k + 1, n) if M[i][k]), None)
            if p is None:
                return ring.zero
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = ring.exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign > 0 else -d


def is_invertible(A: RingMatrix) -> bool:
    return A.is_square() and A.ring.is_unit(det(A))


def hermite_normal_form(A: RingMatrix) -> Tuple[RingMatrix, RingMatrix]:
    """Row Hermite form ``H = U A`` with ``U`` unimodular.

    Pivots are canonical associates; entries above a pivot are canonical
    remainders modulo it.
    """
    ring = A.ring
    m, n = A.shape
    H = _mutable(A)
    U = _mutable(RingMatrix.identity(ring, m))

    def addrow(i, k, q):  # row_i -= q * row_k
        H[i] = [a - q * b for a, b in zip(H[i], H[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            live = [i for i in range(r, m) if H[i][c]]
            if not live:
                break
            p = min(live, key=lambda i: ring.norm(H[i][c]))
            if p != r:
                H[p], H[r] = H[r], H[p]
                U[p], U[r] = U[r], U[p]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q, _ = ring.div_rem(H[i][c], H[r][c])
                    addrow(i, r, q)
                    if H[i][c]:
                        done = False
            if done:
                break
        if not H[r][c]:
            continue
        u = ring.normal_unit(H[r][c])
        if u != ring.one:
            H[r] = [u * x for x in H[r]]
            U[r] = [u * x for x in U[r]]
        for i in range(r):
            if H[i][c]:
                q, _ = ring.div_rem(H[i][c], H[r][c])
                if q:
                    addrow(i, r, q)
        r += 1
    return RingMatrix(ring, H, ncols=n), RingMatrix(ring, U, ncols=m)


def hnf_pivots(H: RingMatrix) -> List[Tuple[int, int]]:
    """(row, column) pivot positions of a matrix in row echelon form."""
    out = []
    for i, row in enumerate(H.rows):
        j = next((j for j, x in enumerate(row) if x), None)
        if j is None:
            break
        out.append((i, j))
    return out


def inverse(A: RingMatrix) -> RingMatrix:
    if not is_invertible(A):
        raise MatrixError("matrix is not invertible over the ring")
    H, U = hermite_normal_form(A)
    return U


SOLVED = "solved"
FRACTION_ONLY = "fraction_only"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class SolveResult:
    status: str
    solution: Optional[list] = None
    fraction_solution: Optional[list] = None
    obstruction: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.status == SOLVED


def solve_with_diagnostics(A: RingMatrix, b: Sequence) -> SolveResult:
    """Solve ``A x = b`` over the ring via the Hermite form of ``A^T``.

    ``U A^T = H`` gives ``A U^T = H^T`` (column echelon), so the system turns
    into forward substitution in ``y`` with ``x = U^T y``. Pivot unknowns are
    determined uniquely over the fraction field; the free ones are set to 0.
    """
    ring = A.ring
    m, n = A.shape
    b = [ring.coerce(x) for x in b]
    if len(b) != m:
        raise MatrixError("right-hand side has the wrong length")
    if n == 0:
        if any(b):
            return SolveResult(INCONSISTENT, obstruction="nonzero right-hand side with no unknowns")
        return SolveResult(SOLVED, [], [])
    H, U = hermite_normal_form(A.transpose())
    L = H.transpose()
    piv = hnf_pivots(H)
    y = [FractionScalar(ring, ring.zero) for _ in range(n)]
    obstruction = None
    for r, row_idx in piv:
        s = FractionScalar(ring, b[row_idx])
        for k in range(r):
            if L[row_idx, k]:
                s = s - y[k] * L[row_idx, k]
        y[r] = s / L[row_idx, r]
        if obstruction is None and not y[r].is_integral():
            obstruction = (
                f"pivot equation {ring.format(L[row_idx, r])}*c = ... forces c = {y[r]}, not in {ring.name}"
            )
    for i in range(m):
        s = FractionScalar(ring, b[i])
        for k in range(len(piv)):
            if L[i, k]:
                s = s - y[k] * L[i, k]
        if s:
            return SolveResult(INCONSISTENT, obstruction=f"equation {i} is inconsistent over the fraction field")
    ut = U.transpose()
    xfrac = [sum((y[k] * ut[j, k] for k in range(n) if ut[j, k]), FractionScalar(ring, ring.zero)) for j in range(n)]
    if obstruction is not None:
        return SolveResult(FRACTION_ONLY, fraction_solution=xfrac, obstruction=obstruction)
    x = [v.to_ring() for v in xfrac]
    return SolveResult(SOLVED, x, xfrac)


def solve(A: RingMatrix, b: Sequence) -> Optional[list]:
    """A solution over the ring, or None."""
    return solve_with_diagnostics(A, b).solution


def solve_fraction_field(A: RingMatrix, b: Sequence):
    """Gauss-Jordan over the fraction field.

    Returns ``(particular_solution or None, rank)``; free unknowns are 0.
    Shares no code with the Hermite route.
    """
    ring = A.ring
    m, n = A.shape
    F = lambda x: FractionScalar(ring, ring.coerce(x))  # noqa: E731
    M = [[F(x) for x in row] + [F(bi)] for row, bi in zip(A.rows, b)]
    pivcols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c]
        M[r] = [x / inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivcols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n]:
            return None, r
    x = [F(0) for _ in range(n)]
    for i, c in enumerate(pivcols):
        x[c] = M[i][n]
    return x, r


# ---------------------------------------------------------------- factorization


@dataclass(frozen=True)
class Transvection:
    """``I + q E_ij``: left multiplication adds ``q * row_j`` to ``row_i``."""

    i: int
    j: int
    q: object

    def matrix(self, ring, n: int) -> RingMatrix:
        rows = _mutable(RingMatrix.identity(ring, n))
        rows[self.i][self.j] = self.q
        return RingMatrix(ring, rows)


@dataclass(frozen=True)
class Diagonal:
    units: tuple

    def matrix(self, ring, n: int) -> RingMatrix:
        return RingMatrix.diagonal(ring, self.units)


Factor = Union[Transvection, Diagonal]


def factor_into_elementary_diagonal(A: RingMatrix) -> List[Factor]:
    """Factors ``F_1, ..., F_k`` with ``F_1 @ ... @ F_k == A``.

    Row-reduces ``A`` to a unit diagonal ``D`` using transvections only:
    ``E_N ... E_1 A = D`` so ``A = E_1^-1 ... E_N^-1 D``.
    """
    if not is_invertible(A):
        raise MatrixError("factorization requires an invertible matrix")
    ring = A.ring
    n = A.nrows
    M = _mutable(A)
    ops: List[Transvection] = []

    def addrow(i, k, q):  # row_i += q * row_k
        M[i] = [a + q * b for a, b in zip(M[i], M[k])]
        ops.append(Transvection(i, k, q))

    for c in range(n):
        while True:
            live = [i for i in range(c, n) if M[i][c]]
            p = min(live, key=lambda i: (ring.norm(M[i][c]), i))
            others = [i for i in live if i != p]
            if not others:
                break
            for i in others:
                q, _ = ring.div_rem(M[i][c], M[p][c])
                addrow(i, p, -q)
        if p != c:
            addrow(c, p, ring.one)
            q = ring.exact_div(M[p][c], M[c][c])
            addrow(p, c, -q)
        pivot_inv = ring.unit_inverse(M[c][c])
        for i in range(n):
            if i != c and M[i][c]:
                addrow(i, c, -(M[i][c] * pivot_inv))
    units = tuple(M[i][i] for i in range(n))
    factors: List[Factor] = [Transvection(op.i, op.j, -op.q) for op in ops]
    if any(u != ring.one for u in units):
        factors.append(Diagonal(units))
    return factors


def factor_product(ring, n: int, factors: Sequence[Factor]) -> RingMatrix:
    out = RingMatrix.identity(ring, n)
    for f in factors:
        out = out @ f.matrix(ring, n)
    return out
