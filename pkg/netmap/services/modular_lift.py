"""Modular-group elements and their liftability through a NET map.

An element of the modular group is the class of an affine map
``x ↦ M·x + t`` with ``|det M| = 1`` modulo the kernel generated by
``x ↦ ±x + 2λ`` (λ ∈ Z²). It is liftable through the NET map of a
presentation when some representative ``Ψ(x) = ±M·x + t'`` with
``t' ∈ t + 2Z²`` preserves Λ1 and permutes the Hurwitz structure set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import FrozenSet, List, Optional

from loguru import logger
from sympy import primefactors

from netmap.services.errors import DomainError, UsageError
from netmap.services.lattice_core import AElement, IntMatrix2, IntPair, Lattice, a_coords, snf2
from netmap.services.presentation import NetMapPresentation


class ElementType(str, Enum):
    TRANSLATION = "translation"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    REFLECTION = "reflection"
    GLIDE_REFLECTION = "glide_reflection"


def _normalize_sign(M: IntMatrix2) -> IntMatrix2:
    for entry in (M.a, M.b, M.c, M.d):
        if entry:
            return M if entry > 0 else -M
    return M


@dataclass(frozen=True)
class ModularElement:
    """Class of x ↦ M·x + t; M up to sign, t modulo 2Z²."""

    matrix: IntMatrix2
    translation: IntPair = (0, 0)

    def __post_init__(self):
        if self.matrix.det() not in (1, -1):
            raise DomainError(f"modular element {self.matrix} must have determinant ±1")
        object.__setattr__(self, "matrix", _normalize_sign(self.matrix))
        object.__setattr__(self, "translation", (int(self.translation[0]) % 2, int(self.translation[1]) % 2))

    @property
    def orientation_preserving(self) -> bool:
        return self.matrix.det() == 1

    def compose(self, other: "ModularElement") -> "ModularElement":
        """self ∘ other as affine maps."""
        tx, ty = self.matrix.apply(other.translation)
        return ModularElement(
            self.matrix @ other.matrix,
            (tx + self.translation[0], ty + self.translation[1]),
        )

    def inverse(self) -> "ModularElement":
        inverse = self.matrix.inverse()
        tx, ty = inverse.apply(self.translation)
        return ModularElement(inverse, (-tx, -ty))

    def __str__(self) -> str:
        return f"{self.matrix} + ({self.translation[0]},{self.translation[1]})"


@dataclass(frozen=True)
class LiftRepresentative:
    """Ψ(x) = matrix·x + translation, an element of SAff(f) for a presentation."""

    matrix: IntMatrix2
    translation: IntPair

    def apply(self, v: IntPair) -> IntPair:
        x, y = self.matrix.apply(v)
        return x + self.translation[0], y + self.translation[1]


def element_type(e: ModularElement) -> ElementType:
    M = e.matrix
    if M.det() == 1:
        if M in (IntMatrix2.identity(), -IntMatrix2.identity()):
            return ElementType.TRANSLATION
        trace = abs(M.trace())
        if trace < 2:
            return ElementType.ELLIPTIC
        if trace == 2:
            return ElementType.PARABOLIC
        return ElementType.HYPERBOLIC
    if M @ M == IntMatrix2.identity():
        return ElementType.REFLECTION
    return ElementType.GLIDE_REFLECTION


def hs_classes(p: NetMapPresentation) -> FrozenSet[AElement]:
    """The Hurwitz structure set as its ±-class representatives."""
    group = p.group
    return frozenset(group.signed_rep(a_coords(p.matrix, arc.terminal)) for arc in p.arcs)


def _preserves_lattice(p: NetMapPresentation, M: IntMatrix2) -> bool:
    return Lattice(M @ p.matrix) == p.lattice


def _permutes_hs(p: NetMapPresentation, psi: LiftRepresentative, classes: FrozenSet[AElement]) -> bool:
    group = p.group
    images = {group.signed_rep(a_coords(p.matrix, psi.apply(arc.terminal))) for arc in p.arcs}
    return images == classes


def _translation_candidates(p: NetMapPresentation, t: IntPair) -> List[IntPair]:
    """Representatives of (t + 2Z²) modulo 2Λ1."""
    smith = snf2(p.matrix)
    m, n = smith.D.a, smith.D.d
    candidates = []
    for i in range(m):
        for j in range(n):
            qx, qy = smith.Q.apply((i, j))
            candidates.append((t[0] + 2 * qx, t[1] + 2 * qy))
    return candidates


def in_saff(p: NetMapPresentation, psi: LiftRepresentative) -> bool:
    """Whether Ψ preserves Λ1 and maps the Hurwitz structure set onto itself."""
    if psi.matrix.det() not in (1, -1) or not _preserves_lattice(p, psi.matrix):
        return False
    if p.lattice.contains(psi.translation) is None:
        return False
    return _permutes_hs(p, psi, hs_classes(p))


def is_liftable(p: NetMapPresentation, e: ModularElement) -> List[LiftRepresentative]:
    """All SAff(f) representatives of e; the list is empty when e does not lift."""
    if not _preserves_lattice(p, e.matrix):
        return []
    classes = hs_classes(p)
    lattice = p.lattice
    found = []
    for sign in (1, -1):
        M = e.matrix.scaled(sign)
        for t_prime in _translation_candidates(p, e.translation):
            if lattice.contains(t_prime) is None:
                continue
            psi = LiftRepresentative(M, t_prime)
            if _permutes_hs(p, psi, classes):
                found.append(psi)
    logger.debug("Liftability checked", element=str(e), representatives=len(found))
    return found


def is_pure_liftable(p: NetMapPresentation, e: ModularElement) -> bool:
    """Whether e lifts to a map fixing the postcritical set pointwise.

    Raises:
        DomainError: if e is not in the pure modular group ("not pure").
    """
    M = e.matrix
    if (M.a - 1) % 2 or M.b % 2 or M.c % 2 or (M.d - 1) % 2 or e.translation != (0, 0):
        raise DomainError(f"not pure: {e} is not congruent to the identity mod 2")
    if not _preserves_lattice(p, M):
        return False
    group = p.group
    for arc in p.arcs:
        h = a_coords(p.matrix, arc.terminal)
        image = a_coords(p.matrix, M.apply(arc.terminal))
        if image != h and image != group.neg(h):
            return False
    return True


def liftable_index_bound(degree: int) -> Fraction:
    """Upper bound 16·D³·∏_{p | 2D}(1 − p⁻²) on the index of the liftable subgroup."""
    if degree < 2:
        raise UsageError("degree must be at least 2")
    bound = Fraction(16 * degree ** 3)
    for prime in primefactors(2 * degree):
        bound *= 1 - Fraction(1, int(prime) ** 2)
    if bound.denominator != 1:
        raise DomainError(f"internal: index bound {bound} is not an integer")
    return bound


def parse_modular_element(entries: List[int], translation: Optional[List[int]] = None) -> ModularElement:
    """Build an element from row-major matrix entries and an optional translation."""
    if len(entries) != 4:
        raise UsageError("--matrix takes four integers a b c d (row-major)")
    t = tuple(translation) if translation else (0, 0)
    if len(t) != 2:
        raise UsageError("--translation takes two integers")
    return ModularElement(IntMatrix2(*entries), t)
