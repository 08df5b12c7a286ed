"""Exact 2x2 integer matrix and lattice arithmetic.

Presentation matrices, modular-group elements and Smith normal form factors
all share :class:`IntMatrix2`. Lattices are sublattices of the standard lattice
given by a column basis. The finite group ``A = Λ2/2Λ1`` is handled in the
standardized coordinates ``(Z/2m) ⊕ (Z/2n)`` obtained from the Smith form of
the presentation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, NamedTuple, Optional, Tuple

from loguru import logger
try:
    from sympy import igcdex
except ImportError:  # sympy >= 1.13 moved igcdex out of the top-level namespace
    from sympy.core.intfunc import igcdex

from netmap.services.errors import DomainError

IntPair = Tuple[int, int]


@dataclass(frozen=True)
class IntMatrix2:
    """Row-major 2x2 integer matrix ``[[a, b], [c, d]]``.

    The columns are the images of the basis vectors e1 and e2.
    """

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, m: int, n: int) -> "IntMatrix2":
        return cls(m, 0, 0, n)

    @classmethod
    def from_columns(cls, first: IntPair, second: IntPair) -> "IntMatrix2":
        return cls(first[0], second[0], first[1], second[1])

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    @property
    def columns(self) -> Tuple[IntPair, IntPair]:
        return (self.a, self.c), (self.b, self.d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def is_diagonal(self) -> bool:
        return self.b == 0 and self.c == 0

    def apply(self, v: IntPair) -> IntPair:
        x, y = v
        return self.a * x + self.b * y, self.c * x + self.d * y

    def adjugate(self) -> "IntMatrix2":
        return IntMatrix2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "IntMatrix2":
        """Inverse of a unimodular matrix."""
        det = self.det()
        if det not in (1, -1):
            raise DomainError(f"matrix {self} is not invertible over the integers (det {det})")
        adj = self.adjugate()
        return IntMatrix2(det * adj.a, det * adj.b, det * adj.c, det * adj.d)

    def solve(self, v: IntPair) -> Tuple[Fraction, Fraction]:
        """Return the rational vector u with ``self·u = v``."""
        det = self.det()
        if det == 0:
            raise DomainError(f"matrix {self} is singular")
        x, y = self.adjugate().apply(v)
        return Fraction(x, det), Fraction(y, det)

    def scaled(self, k: int) -> "IntMatrix2":
        return IntMatrix2(k * self.a, k * self.b, k * self.c, k * self.d)

    def to_rows(self) -> List[List[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "IntMatrix2":
        return self.scaled(-1)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


class SmithForm(NamedTuple):
    """Factorization ``A = Q·D·R`` with Q, R in SL(2,Z) and D = diag(m, n), n | m."""

    Q: IntMatrix2
    D: IntMatrix2
    R: IntMatrix2


class ElementaryDivisors(NamedTuple):
    m: int
    n: int

    @property
    def degree(self) -> int:
        return self.m * self.n


class AElement(NamedTuple):
    """Element of (Z/2m) ⊕ (Z/2n), stored with reduced coordinates."""

    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def det2(M: IntMatrix2) -> int:
    return M.det()


_SWAP = IntMatrix2(0, -1, 1, 0)


def _smith_reduce(A: IntMatrix2) -> Tuple[IntMatrix2, IntMatrix2, IntMatrix2]:
    """Diagonalize A by unimodular row and column operations.

    Returns ``(L, diag(e1, e2), Rt)`` with ``L·A·Rt = diag(e1, e2)``,
    ``0 < e1 | e2`` and det L = det Rt = 1.
    """
    w = [[A.a, A.b], [A.c, A.d]]
    left = [[1, 0], [0, 1]]
    right = [[1, 0], [0, 1]]

    def swap_rows(mat):
        mat[0], mat[1] = mat[1], mat[0]

    def swap_cols(mat):
        for row in mat:
            row[0], row[1] = row[1], row[0]

    def add_row(mat, target, source, k):
        mat[target] = [mat[target][j] + k * mat[source][j] for j in range(2)]

    def add_col(mat, target, source, k):
        for row in mat:
            row[target] += k * row[source]

    while True:
        _, pi, pj = min(
            (abs(w[i][j]), i, j) for i in range(2) for j in range(2) if w[i][j] != 0
        )
        if pi:
            swap_rows(w)
            swap_rows(left)
        if pj:
            swap_cols(w)
            swap_cols(right)
        pivot = w[0][0]
        if w[1][0]:
            q = w[1][0] // pivot
            add_row(w, 1, 0, -q)
            add_row(left, 1, 0, -q)
        if w[0][1]:
            q = w[0][1] // pivot
            add_col(w, 1, 0, -q)
            add_col(right, 1, 0, -q)
        if w[1][0] or w[0][1]:
            continue
        if w[1][1] % pivot == 0:
            break
        # diagonal but not dividing: fold row 1 into row 0 and keep reducing
        add_row(w, 0, 1, 1)
        add_row(left, 0, 1, 1)

    for i in range(2):
        if w[i][i] < 0:
            w[i] = [-x for x in w[i]]
            left[i] = [-x for x in left[i]]
    L = IntMatrix2.from_rows(left)
    Rt = IntMatrix2.from_rows(right)
    if L.det() == -1:
        L = IntMatrix2(-L.a, -L.b, L.c, L.d)
        Rt = IntMatrix2(-Rt.a, Rt.b, -Rt.c, Rt.d)
    return L, IntMatrix2.diagonal(w[0][0], w[1][1]), Rt


@lru_cache(maxsize=4096)
def snf2(A: IntMatrix2) -> SmithForm:
    """Smith normal form ``A = Q·diag(m, n)·R`` with Q, R in SL(2,Z).

    Diagonal matrices whose lower entry divides the upper one are returned
    with identity factors, so standardized presentations keep Q = I.

    Raises:
        DomainError: if det A <= 0 ("orientation").
    """
    det = A.det()
    if det <= 0:
        raise DomainError(f"orientation: presentation matrix {A} has determinant {det} <= 0")
    if A.is_diagonal() and A.a > 0 and A.d > 0 and A.a % A.d == 0:
        identity = IntMatrix2.identity()
        return SmithForm(identity, A, identity)

    L, diag, Rt = _smith_reduce(A)
    e1, e2 = diag.a, diag.d
    Q = (_SWAP @ L).inverse()
    R = _SWAP @ Rt.inverse()
    result = SmithForm(Q, IntMatrix2.diagonal(e2, e1), R)
    logger.debug("Smith form computed", matrix=str(A), m=e2, n=e1)
    return result


def elementary_divisors(A: IntMatrix2) -> ElementaryDivisors:
    D = snf2(A).D
    return ElementaryDivisors(D.a, D.d)


@dataclass(frozen=True, eq=False)
class Lattice:
    """Full-rank sublattice of Z² spanned by the columns of ``basis``.

    Two lattices compare equal when their column Hermite forms agree.
    """

    basis: IntMatrix2

    def __post_init__(self):
        if self.basis.det() == 0:
            raise DomainError(f"lattice basis {self.basis} is degenerate")

    @property
    def index(self) -> int:
        return abs(self.basis.det())

    def hermite_form(self) -> IntMatrix2:
        """Lower-triangular column Hermite form ``[[h11, 0], [h21, h22]]``.

        Pivots are positive and ``0 <= h21 < h22``.
        """
        B = self.basis
        x, y, g = (int(t) for t in igcdex(B.a, B.b))
        if g < 0:
            x, y, g = -x, -y, -g
        H = B @ IntMatrix2(x, -B.b // g, y, B.a // g)
        h21, h22 = H.c, H.d
        if h22 < 0:
            h22 = -h22
        return IntMatrix2(g, 0, h21 % h22, h22)

    def contains(self, v: IntPair) -> Optional[IntPair]:
        return lattice_contains(self, v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.hermite_form() == other.hermite_form()

    def __hash__(self) -> int:
        return hash(self.hermite_form())


def lattice_contains(L: Lattice, v: IntPair) -> Optional[IntPair]:
    """Integer coordinates of v in the basis of L, or None when v is not in L."""
    x, y = L.basis.solve(v)
    if x.denominator != 1 or y.denominator != 1:
        return None
    return int(x), int(y)


@dataclass(frozen=True)
class QuotientGroup:
    """The group (Z/2m) ⊕ (Z/2n) standing for A = Λ2/2Λ1."""

    m: int
    n: int

    @property
    def order(self) -> int:
        return 4 * self.m * self.n

    def reduce(self, x: int, y: int) -> AElement:
        return AElement(x % (2 * self.m), y % (2 * self.n))

    def add(self, h: AElement, k: AElement) -> AElement:
        return self.reduce(h.x + k.x, h.y + k.y)

    def neg(self, h: AElement) -> AElement:
        return self.reduce(-h.x, -h.y)

    def signed_rep(self, h: AElement) -> AElement:
        """Lexicographically smaller member of the ±-pair of h."""
        return min(h, self.neg(h))

    def parity(self, h: AElement) -> IntPair:
        return h.x % 2, h.y % 2

    def corner(self, i: int, j: int) -> AElement:
        """Image of i·λ1 + j·λ2, i.e. an element of Λ1/2Λ1."""
        return self.reduce(i * self.m, j * self.n)

    def corners(self) -> Tuple[AElement, ...]:
        return tuple(self.corner(i, j) for i, j in ((0, 0), (1, 0), (0, 1), (1, 1)))

    def order_two_elements(self) -> Tuple[AElement, ...]:
        return tuple(sorted(set(self.corners())))

    def elements(self) -> Iterator[AElement]:
        for x in range(2 * self.m):
            for y in range(2 * self.n):
                yield AElement(x, y)

    def signed_classes(self) -> Tuple[AElement, ...]:
        return tuple(sorted({self.signed_rep(h) for h in self.elements()}))


def quotient_group(A: IntMatrix2) -> QuotientGroup:
    m, n = elementary_divisors(A)
    return QuotientGroup(m, n)


def a_coords(A: IntMatrix2, v: IntPair) -> AElement:
    """Standardized coordinates of the class of v in Λ2/2Λ1."""
    smith = snf2(A)
    x, y = smith.Q.inverse().apply(v)
    return QuotientGroup(smith.D.a, smith.D.d).reduce(x, y)


def a_lift(A: IntMatrix2, h: AElement) -> IntPair:
    """A lattice point of Z² whose class in Λ2/2Λ1 is h."""
    return snf2(A).Q.apply((h.x, h.y))


def divisor_pairs(degree: int) -> Tuple[ElementaryDivisors, ...]:
    """All (m, n) with n | m and m·n = degree, largest m first."""
    pairs = []
    n = 1
    while n * n <= degree:
        if degree % (n * n) == 0:
            pairs.append(ElementaryDivisors(degree // n, n))
        n += 1
    return tuple(pairs)
