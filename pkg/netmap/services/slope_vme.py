"""Slopes, Euclidean slope maps and the virtual multi-endomorphism.

Slope p/q corresponds to the direction vector (q, p); 1/0 is vertical. Every
matrix action on slopes is derived from the action on directions.

Slope-oracle text format (``#`` starts a comment)::

    0/1 -> 2/1            # μ(0) = 2
    1/0 -> 1/1 ; 1/2      # with multiplier c/d
    -2/1 -> o             # non-slope
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import regex
from loguru import logger
from sympy import divisors

from netmap.services.errors import DomainError, InfeasibleError, NetMapParseError, UsageError
from netmap.services.lattice_core import IntMatrix2, IntPair, a_coords
from netmap.services.modular_lift import LiftRepresentative, ModularElement, in_saff, is_liftable
from netmap.services.portrait_builder import postcritical_set, trace_presentation
from netmap.services.presentation import NetMapPresentation

_SLOPE = r"(?:[+-]?\d+(?:/\d+)?|o)"
_ORACLE_LINE_RE = regex.compile(
    rf"^(?P<source>{_SLOPE})\s*->\s*(?P<target>{_SLOPE})\s*(?:;\s*(?P<c>\d+)\s*/\s*(?P<d>\d+))?$"
)
_SLOPE_RE = regex.compile(r"^(?P<p>[+-]?\d+)(?:/(?P<q>\d+))?$")

_TRANSLATION_CLASSES: Tuple[IntPair, ...] = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass(frozen=True, order=True)
class Slope:
    """Extended rational p/q in lowest terms with q >= 0; (0, 0) is the non-slope."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if (p, q) != (0, 0):
            g = gcd(p, q)
            p, q = p // g, q // g
            if q < 0 or (q == 0 and p < 0):
                p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_direction(cls, x: int, y: int) -> "Slope":
        if x == 0 and y == 0:
            raise DomainError("the zero vector has no slope")
        return cls(y, x)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        if text == "o":
            return NON_SLOPE
        match = _SLOPE_RE.match(text)
        if not match:
            raise NetMapParseError(f"cannot read slope {text!r}")
        p = int(match.group("p"))
        q = int(match.group("q")) if match.group("q") is not None else 1
        if p == 0 and q == 0:
            raise NetMapParseError("0/0 is not a slope")
        return cls(p, q)

    @property
    def is_slope(self) -> bool:
        return (self.p, self.q) != (0, 0)

    @property
    def direction(self) -> IntPair:
        if not self.is_slope:
            raise DomainError("non-slope: ⊙ has no direction")
        return self.q, self.p

    def negative_reciprocal(self) -> "Slope":
        """−1/s, the slope whose direction is orthogonal to this one's."""
        return Slope(-self.q, self.p)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}" if self.is_slope else "o"


NON_SLOPE = Slope(0, 0)


class Multiplier(NamedTuple):
    """c/d, kept unreduced."""

    c: int
    d: int

    def __str__(self) -> str:
        return f"{self.c}/{self.d}"


@dataclass(frozen=True)
class SlopeOracle:
    """Known values of a slope function, in file order."""

    entries: Tuple[Tuple[Slope, Slope], ...]
    multipliers: Dict[Slope, Multiplier] = field(default_factory=dict, compare=False)

    def get(self, s: Slope) -> Optional[Slope]:
        for source, target in self.entries:
            if source == s:
                return target
        return None

    def slopes(self) -> Tuple[Slope, ...]:
        return tuple(source for source, _ in self.entries)


def parse_slope_oracle(text: str) -> SlopeOracle:
    entries: List[Tuple[Slope, Slope]] = []
    multipliers: Dict[Slope, Multiplier] = {}
    seen = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _ORACLE_LINE_RE.match(line)
        if not match:
            raise NetMapParseError(f"unrecognized slope line {line!r}", line=number)
        try:
            source = Slope.parse(match.group("source"))
            target = Slope.parse(match.group("target"))
        except NetMapParseError as exc:
            raise NetMapParseError(str(exc), line=number) from exc
        if not source.is_slope:
            raise NetMapParseError("the input of a slope entry cannot be 'o'", line=number)
        if source in seen:
            raise NetMapParseError(f"duplicate entry for slope {source}", line=number)
        seen.add(source)
        entries.append((source, target))
        if match.group("c") is not None:
            d = int(match.group("d"))
            if d == 0:
                raise NetMapParseError("multiplier denominator must be positive", line=number)
            multipliers[source] = Multiplier(int(match.group("c")), d)
    return SlopeOracle(tuple(entries), multipliers)


def load_slope_oracle(path: str) -> SlopeOracle:
    file_path = Path(path)
    if not file_path.is_file():
        raise UsageError(f"slope file not found: {path}")
    logger.debug("Loading slope oracle", path=str(file_path))
    return parse_slope_oracle(file_path.read_text(encoding="utf-8"))


def matrix_on_slope(M: IntMatrix2, s: Slope) -> Slope:
    if not s.is_slope:
        raise DomainError("non-slope: matrices act on slopes only")
    return Slope.from_direction(*M.apply(s.direction))


def _primitive(u: Sequence[Fraction]) -> IntPair:
    scale = lcm(*(x.denominator for x in u))
    x, y = (int(v * scale) for v in u)
    g = gcd(x, y)
    return x // g, y // g


def euclidean_slope_map(A: IntMatrix2, s: Slope) -> Slope:
    """Pullback of slope s under the Euclidean map induced by A."""
    if not s.is_slope:
        raise DomainError("non-slope: the Euclidean slope map takes slopes only")
    return Slope.from_direction(*_primitive(A.solve(s.direction)))


def euclidean_multiplier(A: IntMatrix2, s: Slope) -> Multiplier:
    """Component count c and covering degree d of the pullback of slope s."""
    if A.det() <= 0:
        raise DomainError(f"orientation: matrix {A} has determinant {A.det()} <= 0")
    u = A.solve(s.direction)
    d = lcm(*(x.denominator for x in u))
    return Multiplier(A.det() // d, d)


def euclidean_oracle(A: IntMatrix2, slopes: Iterable[Slope]) -> SlopeOracle:
    entries = []
    multipliers = {}
    for s in dict.fromkeys(slopes):
        entries.append((s, euclidean_slope_map(A, s)))
        multipliers[s] = euclidean_multiplier(A, s)
    return SlopeOracle(tuple(entries), multipliers)


def _normalize_sign(M: IntMatrix2) -> IntMatrix2:
    for entry in (M.a, M.b, M.c, M.d):
        if entry:
            return M if entry > 0 else -M
    return M


def solve_linear_part(
    pair1: Tuple[Slope, Slope], pair2: Tuple[Slope, Slope], epsilon: int
) -> IntMatrix2:
    """The Q with det Q = ε taking the line of slope pairᵢ[0] to that of pairᵢ[1].

    Q·uᵢ = aᵢ·wᵢ with integers aᵢ, so a₁a₂ = ε·det[u₁ u₂]/det[w₁ w₂] and the
    candidates are the signed divisor pairs of that number.

    Raises:
        DomainError: "inconsistent slope data" when no integral Q exists, or
            "ambiguous slope data" when more than one ±-pair does.
    """
    if epsilon not in (1, -1):
        raise DomainError(f"determinant sign must be ±1, got {epsilon}")
    u1, w1 = pair1[0].direction, pair1[1].direction
    u2, w2 = pair2[0].direction, pair2[1].direction
    U = IntMatrix2.from_columns(u1, u2)
    W = IntMatrix2.from_columns(w1, w2)
    if U.det() == 0 or W.det() == 0:
        raise DomainError("inconsistent slope data: the two input slopes and the two output slopes must differ")

    N = Fraction(epsilon * U.det(), W.det())
    if N.denominator != 1:
        raise DomainError(f"inconsistent slope data: a₁a₂ = {N} is not an integer")
    N = int(N)

    solutions = set()
    for a1 in divisors(abs(N)):
        for a1_signed in (int(a1), -int(a1)):
            a2 = N // a1_signed
            # Q = W·diag(a1, a2)·U⁻¹
            scaled = IntMatrix2(W.a * a1_signed, W.b * a2, W.c * a1_signed, W.d * a2)
            Q = scaled @ U.adjugate()
            det = U.det()
            if any(entry % det for entry in (Q.a, Q.b, Q.c, Q.d)):
                continue
            Q = IntMatrix2(Q.a // det, Q.b // det, Q.c // det, Q.d // det)
            solutions.add(_normalize_sign(Q))

    if not solutions:
        raise DomainError("inconsistent slope data: no integral linear part")
    if len(solutions) > 1:
        raise DomainError(f"ambiguous slope data: {len(solutions)} linear parts fit")
    return solutions.pop()


def translation_part(p: NetMapPresentation, psi: LiftRepresentative) -> IntPair:
    """The τ ∈ {0, e1, e2, e1+e2} of the lift determined by Ψ.

    Raises:
        DomainError: "not a lift" if Ψ is not in SAff(f) for this presentation.
    """
    if not in_saff(p, psi):
        raise DomainError(f"not a lift: Ψ = {psi.matrix}·x + {psi.translation} is not in SAff(f)")
    trace = trace_presentation(p)
    group = trace.group
    h0 = trace.points[trace.name((0, 0))]
    image = group.signed_rep(a_coords(p.matrix, psi.apply(h0)))
    for tau in _TRANSLATION_CLASSES:
        if trace.name(tau) == image:
            return tau
    raise DomainError(f"not a lift: Ψ sends {trace.labels[trace.name((0, 0))]} outside the Hurwitz structure set")


@dataclass(frozen=True)
class VMEValue:
    """One value x ↦ Q·x + τ of the virtual multi-endomorphism, Q up to sign."""

    matrix: IntMatrix2
    translation: IntPair


def _choose_slopes(M: IntMatrix2, oracle: SlopeOracle) -> Tuple[Tuple[Slope, Slope], Tuple[Slope, Slope]]:
    entries = list(oracle.entries)
    missing: List[Slope] = []
    found_pair = False
    for i, (s, mu_s) in enumerate(entries):
        for t, mu_t in entries[i + 1:]:
            if not (mu_s.is_slope and mu_t.is_slope) or mu_s == mu_t:
                continue
            found_pair = True
            ms, mt = matrix_on_slope(M, s), matrix_on_slope(M, t)
            mu_ms, mu_mt = oracle.get(ms), oracle.get(mt)
            for image, value in ((ms, mu_ms), (mt, mu_mt)):
                if value is None and image not in missing:
                    missing.append(image)
            if mu_ms is None or mu_mt is None:
                continue
            if mu_ms.is_slope and mu_mt.is_slope and mu_ms != mu_mt:
                logger.debug("Slopes chosen", s=str(s), t=str(t), ms=str(ms), mt=str(mt))
                return (mu_s, mu_ms), (mu_t, mu_mt)
    if not found_pair:
        raise InfeasibleError("slope oracle needs two slopes whose images are distinct slopes")
    needed = ", ".join(str(s) for s in missing) if missing else "none usable"
    raise InfeasibleError(f"slope oracle is insufficient; missing slopes: {needed}")


def virtual_multiendomorphism(
    p: NetMapPresentation, e: ModularElement, oracle: SlopeOracle
) -> List[VMEValue]:
    """All values (Q, τ) of the lift of e, one per deck transformation.

    Raises:
        DomainError: when p has fewer than four postcritical points; τ then
            cannot tell the deck cosets apart.
        InfeasibleError: when e is not liftable or the oracle lacks needed slopes.
    """
    if len(postcritical_set(p)) < 4:
        raise DomainError("not a NET map: fewer than four postcritical points")
    representatives = is_liftable(p, e)
    if not representatives:
        raise InfeasibleError(f"element {e} is not liftable")
    pair1, pair2 = _choose_slopes(e.matrix, oracle)
    Q = solve_linear_part(pair1, pair2, e.matrix.det())

    values = {translation_part(p, psi) for psi in representatives}
    result = [VMEValue(Q, tau) for tau in sorted(values)]
    logger.debug("Virtual multi-endomorphism computed", element=str(e), linear=str(Q), values=len(result))
    return result
