"""NET map presentations and their line-oriented text format.

A presentation is the datum ``(A, b, α1, ..., α4)``: the matrix whose columns
λ1, λ2 span Λ1, the translation term b ∈ Λ1 and four directed arcs. Arcs are
combinatorial endpoint pairs; only their endpoints enter any computation.

Text format (``#`` starts a comment)::

    matrix: a c b d          # columns λ1 = (a, c), λ2 = (b, d)
    translation: x y
    arc: x1 y1 -> x2 y2      # four lines
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, NamedTuple, Optional, Tuple

import regex
from loguru import logger

from netmap.services.errors import DomainError, NetMapParseError, UsageError
from netmap.services.lattice_core import (
    ElementaryDivisors,
    IntMatrix2,
    IntPair,
    Lattice,
    QuotientGroup,
    a_coords,
    elementary_divisors,
    lattice_contains,
)

_INT = r"[+-]?\d+"
_MATRIX_RE = regex.compile(rf"^matrix:\s*({_INT})\s+({_INT})\s+({_INT})\s+({_INT})$")
_TRANSLATION_RE = regex.compile(rf"^translation:\s*({_INT})\s+({_INT})$")
_ARC_RE = regex.compile(rf"^arc:\s*({_INT})\s+({_INT})\s*->\s*({_INT})\s+({_INT})$")


class Arc(NamedTuple):
    initial: IntPair
    terminal: IntPair


@dataclass(frozen=True)
class NetMapPresentation:
    """Validated presentation data; construction fails on any violated invariant."""

    matrix: IntMatrix2
    translation: IntPair
    arcs: Tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, "translation", tuple(int(t) for t in self.translation))
        object.__setattr__(
            self,
            "arcs",
            tuple(Arc(tuple(arc[0]), tuple(arc[1])) for arc in self.arcs),
        )
        validate_presentation(self)

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.matrix)

    @property
    def degree(self) -> int:
        return self.matrix.det()

    @property
    def divisors(self) -> ElementaryDivisors:
        return elementary_divisors(self.matrix)

    @property
    def group(self) -> QuotientGroup:
        m, n = self.divisors
        return QuotientGroup(m, n)

    def lattice_coords(self, v: IntPair) -> IntPair:
        coords = lattice_contains(self.lattice, v)
        if coords is None:
            raise DomainError(f"point {v} is not in Λ1")
        return coords

    def corner_index(self, v: IntPair) -> IntPair:
        """The class of a Λ1 point in Λ1/2Λ1 as coefficients (i, j) of λ1, λ2 mod 2."""
        i, j = self.lattice_coords(v)
        return i % 2, j % 2

    def affine_image(self, M: IntMatrix2, t: IntPair) -> "NetMapPresentation":
        """Apply x ↦ M·x + t to the translation term and every arc endpoint."""

        def image(v: IntPair) -> IntPair:
            x, y = M.apply(v)
            return x + t[0], y + t[1]

        return NetMapPresentation(
            matrix=self.matrix,
            translation=image(self.translation),
            arcs=tuple(Arc(image(arc.initial), image(arc.terminal)) for arc in self.arcs),
        )


def validate_presentation(p: NetMapPresentation) -> None:
    """Raise DomainError naming the first violated presentation invariant."""
    det = p.matrix.det()
    if det <= 0:
        raise DomainError(f"orientation: presentation matrix {p.matrix} has determinant {det} <= 0")
    if len(p.arcs) != 4:
        raise DomainError(f"a presentation needs exactly four arcs, got {len(p.arcs)}")
    lattice = Lattice(p.matrix)
    if lattice_contains(lattice, p.translation) is None:
        raise DomainError(f"invalid translation term: translation {p.translation} is not in Λ1")

    corners = set()
    for arc in p.arcs:
        coords = lattice_contains(lattice, arc.initial)
        if coords is None:
            raise DomainError(f"arc initial point {arc.initial} is not in Λ1")
        corners.add((coords[0] % 2, coords[1] % 2))
    if len(corners) != 4:
        raise DomainError("arc initial points must represent the four distinct classes of Λ1/2Λ1")

    m, n = elementary_divisors(p.matrix)
    group = QuotientGroup(m, n)
    classes = {group.signed_rep(a_coords(p.matrix, arc.terminal)) for arc in p.arcs}
    if len(classes) != 4:
        raise DomainError("not a Hurwitz structure set: arc terminal points have colliding ±-classes")


def euclidean_presentation(
    matrix: IntMatrix2, translation: IntPair = (0, 0)
) -> NetMapPresentation:
    """Presentation of the Euclidean map x ↦ A·x + b: every arc is trivial."""
    (l1x, l1y), (l2x, l2y) = matrix.columns
    points = [(0, 0), (l1x, l1y), (l2x, l2y), (l1x + l2x, l1y + l2y)]
    return NetMapPresentation(
        matrix=matrix,
        translation=translation,
        arcs=tuple(Arc(point, point) for point in points),
    )


def parse_presentation(text: str) -> NetMapPresentation:
    """Parse and validate the presentation text format.

    Raises:
        NetMapParseError: on a syntax error, with its line number.
        DomainError: when the parsed data violates a presentation invariant.
    """
    matrix: Optional[IntMatrix2] = None
    translation: Optional[IntPair] = None
    arcs: List[Arc] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if match := _MATRIX_RE.match(line):
            if matrix is not None:
                raise NetMapParseError("duplicate 'matrix' line", line=number)
            a, c, b, d = (int(g) for g in match.groups())
            matrix = IntMatrix2(a, b, c, d)
        elif match := _TRANSLATION_RE.match(line):
            if translation is not None:
                raise NetMapParseError("duplicate 'translation' line", line=number)
            translation = (int(match.group(1)), int(match.group(2)))
        elif match := _ARC_RE.match(line):
            x1, y1, x2, y2 = (int(g) for g in match.groups())
            arcs.append(Arc((x1, y1), (x2, y2)))
            if len(arcs) > 4:
                raise NetMapParseError("more than four 'arc' lines", line=number)
        else:
            raise NetMapParseError(f"unrecognized line {line!r}", line=number)

    if matrix is None:
        raise NetMapParseError("missing 'matrix' line")
    if len(arcs) != 4:
        raise NetMapParseError(f"expected four 'arc' lines, found {len(arcs)}")

    return NetMapPresentation(matrix=matrix, translation=translation or (0, 0), arcs=tuple(arcs))


def serialize_presentation(p: NetMapPresentation) -> str:
    lines = [
        f"matrix: {p.matrix.a} {p.matrix.c} {p.matrix.b} {p.matrix.d}",
        f"translation: {p.translation[0]} {p.translation[1]}",
    ]
    for arc in p.arcs:
        lines.append(
            f"arc: {arc.initial[0]} {arc.initial[1]} -> {arc.terminal[0]} {arc.terminal[1]}"
        )
    return "\n".join(lines) + "\n"


def load_presentation(path: str) -> NetMapPresentation:
    file_path = Path(path)
    if not file_path.is_file():
        raise UsageError(f"presentation file not found: {path}")
    logger.debug("Loading presentation", path=str(file_path))
    return parse_presentation(file_path.read_text(encoding="utf-8"))
