"""Action of modular-group elements on the upper half-plane.

M = [[a, b], [c, d]] acts by z ↦ (dz + b)/(cz + a), through z̄ when
det M = −1. The assignment reverses composition order.
"""

from __future__ import annotations

from dataclasses import dataclass

from netmap.services.errors import DomainError
from netmap.services.lattice_core import IntMatrix2
from netmap.services.modular_lift import ElementType, ModularElement, element_type
from netmap.services.slope_vme import Slope


@dataclass(frozen=True)
class MobiusMap:
    """z ↦ (alpha·w + beta)/(gamma·w + delta) with w = z̄ when ``conjugate``."""

    alpha: int
    beta: int
    gamma: int
    delta: int
    conjugate: bool = False

    def __post_init__(self):
        # sign fixed by the denominator so that equal maps compare equal
        lead = self.gamma or self.delta
        if lead < 0:
            for name in ("alpha", "beta", "gamma", "delta"):
                object.__setattr__(self, name, -getattr(self, name))

    @property
    def matrix(self) -> IntMatrix2:
        return IntMatrix2(self.alpha, self.beta, self.gamma, self.delta)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self ∘ other."""
        product = self.matrix @ other.matrix
        return MobiusMap(product.a, product.b, product.c, product.d, self.conjugate != other.conjugate)

    def element_type(self) -> ElementType:
        return element_type(ModularElement(self.matrix))

    def __str__(self) -> str:
        var = "conj(z)" if self.conjugate else "z"
        numerator = _affine_text(self.alpha, self.beta, var)
        denominator = _affine_text(self.gamma, self.delta, var)
        if denominator == "1":
            return f"z -> {numerator}"
        if _is_compound(numerator):
            numerator = f"({numerator})"
        if _is_compound(denominator):
            denominator = f"({denominator})"
        return f"z -> {numerator}/{denominator}"


def _affine_text(coef: int, const: int, var: str) -> str:
    parts = []
    if coef:
        parts.append(var if coef == 1 else f"-{var}" if coef == -1 else f"{coef}{var}")
    if const or not parts:
        if parts:
            parts.append(f"+{const}" if const > 0 else str(const))
        else:
            parts.append(str(const))
    return "".join(parts)


def _is_compound(text: str) -> bool:
    return "+" in text or "-" in text[1:]


def teichmuller_action(e: ModularElement) -> MobiusMap:
    M = e.matrix
    return MobiusMap(M.d, M.b, M.c, M.a, conjugate=M.det() == -1)


def positive_parabolic_generator(r: Slope) -> IntMatrix2:
    """The positive generator of the parabolic stabilizer of r = p/q."""
    p, q = r.p, r.q
    return IntMatrix2(1 - p * q, p * p, -q * q, 1 + p * q)


def parabolic_power(sigma: MobiusMap, r: Slope) -> int:
    """The k with σ = (positive generator at r)^k.

    Raises:
        DomainError: if σ is not a power of that generator.
    """
    if sigma.conjugate:
        raise DomainError(f"{sigma} reverses orientation and is not a parabolic power")
    p, q = r.p, r.q
    nilpotent = (-p * q, p * p, -q * q, p * q)
    for S in (sigma.matrix, -sigma.matrix):
        diff = (S.a - 1, S.b, S.c, S.d - 1)
        pivot = next(i for i, entry in enumerate(nilpotent) if entry)
        k, rem = divmod(diff[pivot], nilpotent[pivot])
        if rem == 0 and all(d == k * n for d, n in zip(diff, nilpotent)):
            return k
    raise DomainError(f"{sigma} is not a power of the parabolic generator fixing {r}")
