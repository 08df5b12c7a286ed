"""
Command report schemas

Every report renders as stable JSON through ``model_dump`` or as plain text
through ``to_text``.
"""
from typing import Dict, List, Optional
from pydantic import BaseModel, Field

from netmap.schemas.portrait import PortraitDocument

Matrix = List[List[int]]


def _matrix_text(rows: Matrix) -> str:
    return "[[" + "],[".join(",".join(str(x) for x in row) for row in rows) + "]]"


def _pair_text(pair: List[int]) -> str:
    return f"({pair[0]},{pair[1]})"


class Report(BaseModel):
    """Base class for command output"""

    def to_text(self) -> str:
        raise NotImplementedError


class ElementaryDivisorsReport(Report):
    m: int
    n: int
    degree: int

    def to_text(self) -> str:
        return f"({self.m},{self.n})"


class SmithFormReport(Report):
    """A = Q·D·R"""
    Q: Matrix
    D: Matrix
    R: Matrix

    def to_text(self) -> str:
        return "\n".join(
            [f"Q = {_matrix_text(self.Q)}", f"D = {_matrix_text(self.D)}", f"R = {_matrix_text(self.R)}"]
        )


class IndexBoundReport(Report):
    degree: int
    bound: int

    def to_text(self) -> str:
        return str(self.bound)


class HurwitzInvariantReport(Report):
    m: int
    n: int
    invariant: List[List[int]] = Field(..., description="Canonical ±-class representatives")
    display: str

    def to_text(self) -> str:
        return f"({self.m},{self.n}) {self.display}"


class WitnessReport(BaseModel):
    automorphism: List[int] = Field(..., description="(a, b, c, d) of the special automorphism")
    translation: List[int]
    matrix: Matrix


class HurwitzEqualReport(Report):
    equivalent: bool
    witness: Optional[WitnessReport] = None

    def to_text(self) -> str:
        if not self.equivalent:
            return "false"
        if self.witness is None:
            return "true"
        return (
            f"true\nwitness: M = {_matrix_text(self.witness.matrix)}, "
            f"t = {_pair_text(self.witness.translation)}"
        )


class HurwitzClassesReport(Report):
    m: int
    n: int
    count: int
    classes: List[str]

    def to_text(self) -> str:
        return "\n".join([f"{self.count} classes for ({self.m},{self.n})"] + self.classes)


class HurwitzCountReport(Report):
    degree: int
    count: int
    by_divisors: Dict[str, int]

    def to_text(self) -> str:
        return str(self.count)


class DeckGroupReport(Report):
    order: int
    generators: List[List[int]]

    def to_text(self) -> str:
        generators = ", ".join(_pair_text(g) for g in self.generators) or "none"
        return f"order {self.order}; generators: {generators}"


class AffineMapReport(BaseModel):
    """x ↦ matrix·x + translation"""
    matrix: Matrix
    translation: List[int]

    def to_text(self) -> str:
        return f"{_matrix_text(self.matrix)} + {_pair_text(self.translation)}"


class LiftabilityReport(Report):
    element: str
    element_type: str
    liftable: bool
    representatives: List[AffineMapReport]
    pure_liftable: Optional[bool] = None

    def to_text(self) -> str:
        lines = [f"liftable: {str(self.liftable).lower()}", f"type: {self.element_type}"]
        if self.pure_liftable is not None:
            lines.append(f"pure liftable: {str(self.pure_liftable).lower()}")
        lines.extend(f"lift: {rep.to_text()}" for rep in self.representatives)
        return "\n".join(lines)


class VMEReport(Report):
    element: str
    linear_part: Matrix
    values: List[AffineMapReport]
    teichmuller: str

    def to_text(self) -> str:
        lines = [f"linear part: ±{_matrix_text(self.linear_part)}", f"sigma: {self.teichmuller}"]
        lines.extend(f"value: {value.to_text()}" for value in self.values)
        return "\n".join(lines)


class PortraitReport(Report):
    degree: int
    portrait: PortraitDocument
    anonymous_critical: int
    dot: str = Field(..., exclude=True)

    def to_text(self) -> str:
        lines = [f"degree {self.degree}"]
        for v in self.portrait.postcritical:
            lines.append(f"{v.id} -> {v.to} (w={v.weight})")
        for e in self.portrait.extra_critical:
            lines.append(f"{e.count} anonymous critical -> {e.to}")
        return "\n".join(lines)

    def to_dot(self) -> str:
        return self.dot


class PresentationReport(Report):
    matrix: Matrix
    translation: List[int]
    arcs: List[List[List[int]]]
    text: str = Field(..., exclude=True)

    def to_text(self) -> str:
        return self.text.rstrip("\n")


class RealizabilityReport(Report):
    degree: Optional[int]
    valid: bool
    diagnostics: List[str] = Field(default_factory=list)
    mod2_divisors: Optional[List[int]] = None
    exceptional_ok: Optional[bool] = None
    branch_data: Optional[str] = None
    branch_data_type: Optional[int] = None
    realizable_with: Optional[bool] = None

    def to_text(self) -> str:
        if not self.valid:
            return "invalid portrait\n" + "\n".join(f"- {d}" for d in self.diagnostics)
        lines = [
            f"degree: {self.degree}",
            f"mod 2 divisors: {_pair_text(self.mod2_divisors)}",
            f"exceptional condition: {'ok' if self.exceptional_ok else 'violated'}",
            f"branch data: {self.branch_data} (type {self.branch_data_type})",
        ]
        if self.realizable_with is not None:
            lines.append(f"realizable with given divisors: {str(self.realizable_with).lower()}")
        return "\n".join(lines)


class PortraitCountReport(Report):
    degree: int
    count: int

    def to_text(self) -> str:
        return str(self.count)
