"""Hurwitz structure sets and modular-group Hurwitz classes.

A Hurwitz structure set is a set of four disjoint ±-pairs in
A = (Z/2m) ⊕ (Z/2n). Two NET maps with the same elementary divisors are
modular-group Hurwitz equivalent exactly when their structure sets lie in one
orbit of the group generated by special automorphisms and translations by
elements of order at most 2. The canonical invariant is the lexicographically
smallest structure set in that orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from multiprocessing import Pool
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from loguru import logger
from sympy import primefactors

try:
    from sympy import igcdex
except ImportError:  # sympy >= 1.13 moved igcdex out of the top-level namespace
    from sympy.core.intfunc import igcdex
from sympy.ntheory.modular import crt

from netmap.services.errors import DomainError, UsageError
from netmap.services.lattice_core import (
    AElement,
    ElementaryDivisors,
    IntMatrix2,
    QuotientGroup,
    a_coords,
    divisor_pairs,
)
from netmap.services.portrait_builder import postcritical_set
from netmap.services.presentation import Arc, NetMapPresentation

HSKey = Tuple[AElement, ...]

_ATYPICAL = {(2, 1), (2, 2)}


@dataclass(frozen=True)
class HurwitzStructureSet:
    """Four disjoint ±-pairs, each stored as its smaller member, sorted."""

    divisors: ElementaryDivisors
    pairs: HSKey

    @classmethod
    def from_elements(cls, m: int, n: int, elements: Iterable[Tuple[int, int]]) -> "HurwitzStructureSet":
        group = QuotientGroup(m, n)
        reps = [group.signed_rep(group.reduce(*h)) for h in elements]
        if len(reps) != 4 or len(set(reps)) != 4:
            raise DomainError("not a Hurwitz structure set: the four ±-classes must be distinct")
        return cls(ElementaryDivisors(m, n), tuple(sorted(reps)))

    @property
    def group(self) -> QuotientGroup:
        return QuotientGroup(*self.divisors)

    def elements(self) -> FrozenSet[AElement]:
        group = self.group
        return frozenset(h for rep in self.pairs for h in (rep, group.neg(rep)))

    def translated(self, t: AElement) -> "HurwitzStructureSet":
        group = self.group
        return HurwitzStructureSet(self.divisors, _image_key(self.pairs, None, t, group))

    def image(self, phi: "SpecialAutomorphism") -> "HurwitzStructureSet":
        return HurwitzStructureSet(self.divisors, _image_key(self.pairs, phi, AElement(0, 0), self.group))

    def __str__(self) -> str:
        group = self.group
        parts = [str(h) if h == group.neg(h) else f"±{h}" for h in self.pairs]
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class SpecialAutomorphism:
    """(x, y) ↦ (ax + by mod 2m, cx + dy mod 2n)."""

    a: int
    b: int
    c: int
    d: int
    m: int
    n: int

    def apply(self, h: AElement) -> AElement:
        return AElement(
            (self.a * h.x + self.b * h.y) % (2 * self.m),
            (self.c * h.x + self.d * h.y) % (2 * self.n),
        )

    def compose(self, other: "SpecialAutomorphism") -> "SpecialAutomorphism":
        """self ∘ other."""
        mm, nn = 2 * self.m, 2 * self.n
        return SpecialAutomorphism(
            (self.a * other.a + self.b * other.c) % mm,
            (self.a * other.b + self.b * other.d) % mm,
            (self.c * other.a + self.d * other.c) % nn,
            (self.c * other.b + self.d * other.d) % nn,
            self.m,
            self.n,
        )


@dataclass(frozen=True)
class DeckGroup:
    order: int
    generators: Tuple[AElement, ...]
    elements: Tuple[AElement, ...]


@dataclass(frozen=True)
class HurwitzWitness:
    """M·hs1 + t = hs2 in A, with M ∈ SL(2,Z) lifting a special automorphism."""

    automorphism: SpecialAutomorphism
    translation: AElement
    matrix: IntMatrix2


def _image_key(
    pairs: Sequence[AElement], phi: Optional[SpecialAutomorphism], t: AElement, group: QuotientGroup
) -> HSKey:
    images = (phi.apply(h) if phi else h for h in pairs)
    return tuple(sorted(group.signed_rep(group.add(h, t)) for h in images))


def _is_automorphism(a: int, b: int, c: int, d: int, m: int, n: int) -> bool:
    """Bijectivity of (x, y) ↦ (ax + by mod m, cx + dy mod n) by kernel search."""
    for x in range(m):
        for y in range(n):
            if (x or y) and (a * x + b * y) % m == 0 and (c * x + d * y) % n == 0:
                return False
    return True


@lru_cache(maxsize=64)
def _special_automorphisms(m: int, n: int) -> Tuple[SpecialAutomorphism, ...]:
    mm, nn = 2 * m, 2 * n
    step = m // n
    found = []
    for a in range(mm):
        for b in range(0, mm, step):
            for c in range(nn):
                for d in range(nn):
                    if (a * d - b * c - 1) % nn:
                        continue
                    if _is_automorphism(a, b, c, d, mm, nn):
                        found.append(SpecialAutomorphism(a, b, c, d, m, n))
    logger.debug("Special automorphisms enumerated", m=m, n=n, count=len(found))
    return tuple(found)


def _check_divisors(m: int, n: int) -> None:
    if m < 1 or n < 1 or m % n:
        raise DomainError(f"invalid elementary divisors ({m},{n}): need n | m")


def enumerate_special_automorphisms(m: int, n: int) -> List[SpecialAutomorphism]:
    _check_divisors(m, n)
    return list(_special_automorphisms(m, n))


def hs_from_presentation(p: NetMapPresentation) -> HurwitzStructureSet:
    m, n = p.divisors
    return HurwitzStructureSet.from_elements(m, n, (a_coords(p.matrix, arc.terminal) for arc in p.arcs))


def _orbit(key: HSKey, m: int, n: int) -> Set[HSKey]:
    group = QuotientGroup(m, n)
    translations = group.order_two_elements()
    orbit = set()
    for phi in _special_automorphisms(m, n):
        images = [phi.apply(h) for h in key]
        for t in translations:
            orbit.add(tuple(sorted(group.signed_rep(group.add(h, t)) for h in images)))
    return orbit


def canonical_hurwitz_invariant(hs: HurwitzStructureSet) -> HurwitzStructureSet:
    m, n = hs.divisors
    return HurwitzStructureSet(hs.divisors, min(_orbit(hs.pairs, m, n)))


def hurwitz_equivalent(p1: NetMapPresentation, p2: NetMapPresentation) -> bool:
    if p1.divisors != p2.divisors:
        return False
    return canonical_hurwitz_invariant(hs_from_presentation(p1)) == canonical_hurwitz_invariant(
        hs_from_presentation(p2)
    )


def hurwitz_witness(hs1: HurwitzStructureSet, hs2: HurwitzStructureSet) -> Optional[HurwitzWitness]:
    """A group element carrying hs1 onto hs2, lifted to SL(2,Z); None if inequivalent."""
    if hs1.divisors != hs2.divisors:
        return None
    m, n = hs1.divisors
    group = hs1.group
    for phi in _special_automorphisms(m, n):
        for t in group.order_two_elements():
            if _image_key(hs1.pairs, phi, t, group) == hs2.pairs:
                matrix = lift_special_automorphism(phi.a, phi.b, phi.c, phi.d, 2 * m, 2 * n)
                return HurwitzWitness(phi, t, matrix)
    return None


def standard_presentation(
    hs: HurwitzStructureSet, eta: Sequence[int], b_bar: Tuple[int, int] = (0, 0)
) -> NetMapPresentation:
    """Presentation with A = diag(m, n): arc k runs from the k-th corner of
    Λ1/2Λ1 (order 0, λ1, λ2, λ1+λ2) to the pair ``hs.pairs[eta[k]]``.
    """
    m, n = hs.divisors
    corners = [(0, 0), (m, 0), (0, n), (m, n)]
    arcs = tuple(Arc(corners[k], tuple(hs.pairs[eta[k]])) for k in range(4))
    return NetMapPresentation(
        matrix=IntMatrix2.diagonal(m, n),
        translation=(b_bar[0] * m, b_bar[1] * n),
        arcs=arcs,
    )


def _has_net_realization(hs: HurwitzStructureSet) -> bool:
    """Some arc pairing and translation class give four postcritical points."""
    for eta in permutations(range(4)):
        for b_bar in ((0, 0), (1, 0), (0, 1), (1, 1)):
            if len(postcritical_set(standard_presentation(hs, eta, b_bar))) == 4:
                return True
    return False


def _orbit_minima(task: Tuple[int, int, Sequence[HSKey]]) -> Set[HSKey]:
    m, n, candidates = task
    seen: Set[HSKey] = set()
    minima: Set[HSKey] = set()
    for key in candidates:
        if key in seen:
            continue
        orbit = _orbit(key, m, n)
        seen |= orbit
        minima.add(min(orbit))
    return minima


def _chunks(items: Sequence[HSKey], count: int) -> List[Sequence[HSKey]]:
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


def enumerate_hurwitz_classes(m: int, n: int, workers: int = 1) -> List[HurwitzStructureSet]:
    """One canonical structure set per modular-group Hurwitz class of NET maps.

    With ``workers > 1`` the candidate sets are split across a process pool;
    the merged result is the same sorted list.
    """
    _check_divisors(m, n)
    if (m, n) == (1, 1):
        raise UsageError("degree must be at least 2")

    group = QuotientGroup(m, n)
    candidates = list(combinations(group.signed_classes(), 4))
    logger.debug("Enumerating Hurwitz classes", m=m, n=n, candidates=len(candidates), workers=workers)

    if workers > 1:
        tasks = [(m, n, chunk) for chunk in _chunks(candidates, workers * 4)]
        with Pool(processes=workers) as pool:
            partial = pool.map(_orbit_minima, tasks)
        minima = set().union(*partial)
    else:
        minima = _orbit_minima((m, n, candidates))

    classes = [HurwitzStructureSet(ElementaryDivisors(m, n), key) for key in sorted(minima)]
    if (m, n) in _ATYPICAL:
        classes = [hs for hs in classes if _has_net_realization(hs)]
    logger.info("Hurwitz classes enumerated", m=m, n=n, count=len(classes))
    return classes


def count_hurwitz_classes(degree: int, workers: int = 1) -> int:
    if degree < 2:
        raise UsageError("degree must be at least 2")
    return sum(len(enumerate_hurwitz_classes(m, n, workers)) for m, n in divisor_pairs(degree))


def deck_group(hs: HurwitzStructureSet) -> DeckGroup:
    """Translations in (2Λ2 ∩ Λ1)/2Λ1 that stabilize the structure set."""
    m, n = hs.divisors
    xs = (0, m) if m % 2 == 0 else (0,)
    ys = (0, n) if n % 2 == 0 else (0,)
    stabilizer = tuple(
        sorted(AElement(x, y) for x in xs for y in ys if hs.translated(AElement(x, y)) == hs)
    )
    order = len(stabilizer)
    if order == 4:
        generators = (AElement(m, 0), AElement(0, n))
    else:
        generators = tuple(t for t in stabilizer if t != AElement(0, 0))
    return DeckGroup(order, generators, stabilizer)


def _minimal_bezout(a: int, b: int) -> Tuple[int, int]:
    """x, y with a·x + b·y = 1, |x| minimal, ties toward x >= 0."""
    if b == 0:
        return a, 0
    x0, _, g = (int(v) for v in igcdex(a, b))
    if abs(g) != 1:
        raise DomainError(f"not special: {a} and {b} are not coprime")
    x0 *= g
    period = abs(b)
    low = x0 % period
    high = low - period
    x = low if low <= -high else high
    y = (1 - a * x) // b
    return x, y


def lift_special_automorphism(a: int, b: int, c: int, d: int, m: int, n: int) -> IntMatrix2:
    """Lift a special automorphism of (Z/m) ⊕ (Z/n) to SL(2,Z).

    The result has first row ≡ (a, b) mod m and second row ≡ (c, d) mod n.
    When lifting automorphisms of A pass (2m, 2n).

    Raises:
        DomainError: if (a, b, c, d) is not a special automorphism ("not special").
    """
    if m < 1 or n < 1 or m % n:
        raise DomainError(f"not special: moduli ({m},{n}) need n | m")
    a, b, c, d = a % m, b % m, c % n, d % n
    if b % (m // n) or (a * d - b * c - 1) % n or not _is_automorphism(a, b, c, d, m, n):
        raise DomainError(f"not special: ({a},{b},{c},{d}) mod ({m},{n})")

    if a == 0:
        a = m
    primes = [int(p) for p in primefactors(abs(a))]
    z = 0
    if primes:
        residues = [1 if b % p == 0 else 0 for p in primes]
        z = int(crt(primes, residues)[0])
    b_lift = b + z * m
    x, y = _minimal_bezout(a, b_lift)
    delta = a * d - b_lift * c
    return IntMatrix2(a, b_lift, c - y * (1 - delta), d + x * (1 - delta))
