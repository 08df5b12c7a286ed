"""Dynamic portraits of NET maps.

A portrait is a weighted functional digraph on critical and postcritical
vertices. Anonymous critical vertices carry no label and are stored only as a
count per target, so a portrait is determined by its named vertices plus
``extra_critical`` counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from loguru import logger

from netmap.services.errors import DomainError

# (weight, target index, anonymous critical count) per postcritical vertex
PortraitKey = Tuple[Tuple[int, int, int], ...]

_PERMUTATIONS = tuple(permutations(range(4)))


@dataclass(frozen=True)
class PortraitVertex:
    id: str
    weight: int
    to: str


@dataclass(frozen=True)
class DynamicPortrait:
    vertices: Tuple[PortraitVertex, ...]
    extra_critical: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "extra_critical", tuple((str(to), int(count)) for to, count in self.extra_critical)
        )

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(v.id for v in self.vertices)

    def vertex(self, vertex_id: str) -> PortraitVertex:
        for v in self.vertices:
            if v.id == vertex_id:
                return v
        raise KeyError(vertex_id)

    def successor(self) -> Dict[str, str]:
        return {v.id: v.to for v in self.vertices}

    def extra_counts(self) -> Dict[str, int]:
        counts: Counter = Counter()
        for to, count in self.extra_critical:
            counts[to] += count
        return dict(counts)

    def critical_count(self) -> int:
        return sum(1 for v in self.vertices if v.weight == 2) + sum(self.extra_counts().values())

    def incoming(self, vertex_id: str) -> int:
        named = sum(v.weight for v in self.vertices if v.to == vertex_id)
        return named + 2 * self.extra_counts().get(vertex_id, 0)

    def critical_values(self) -> FrozenSet[str]:
        values = {v.to for v in self.vertices if v.weight == 2}
        values.update(to for to, count in self.extra_counts().items() if count > 0)
        return frozenset(values)

    def postcritical(self) -> FrozenSet[str]:
        """Forward orbit of the critical values."""
        successor = self.successor()
        seen = set()
        frontier = list(self.critical_values())
        while frontier:
            x = frontier.pop()
            if x in seen:
                continue
            seen.add(x)
            if x in successor:
                frontier.append(successor[x])
        return frozenset(seen)


class PortraitValidation(NamedTuple):
    degree: Optional[int]
    diagnostics: Tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.diagnostics


class Mod2Divisors(NamedTuple):
    m: int
    n: int

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


def validate_portrait(portrait: DynamicPortrait) -> PortraitValidation:
    """Check the NET portrait conditions; violations are reported, not raised."""
    diagnostics: List[str] = []
    id_counts = Counter(portrait.ids)
    for vertex_id, count in sorted(id_counts.items()):
        if count > 1:
            diagnostics.append(f"vertex '{vertex_id}' has {count} out-edges; exactly one is required")
    known = set(id_counts)

    for v in portrait.vertices:
        if v.weight not in (1, 2):
            diagnostics.append(f"vertex '{v.id}' has weight {v.weight}; weights must be 1 or 2")
        if v.to not in known:
            diagnostics.append(f"edge from '{v.id}' ends at unknown vertex '{v.to}'")
    for to, count in portrait.extra_critical:
        if to not in known:
            diagnostics.append(f"anonymous critical vertices point at unknown vertex '{to}'")
        if count < 0:
            diagnostics.append(f"negative anonymous critical count {count} for '{to}'")

    critical = portrait.critical_count()
    degree: Optional[int] = None
    if critical % 2 or (critical + 2) // 2 < 2:
        diagnostics.append(
            f"{critical} critical vertices do not equal 2d-2 for any degree d >= 2"
        )
    else:
        degree = (critical + 2) // 2
        for vertex_id in sorted(known):
            incoming = portrait.incoming(vertex_id)
            if incoming > degree:
                diagnostics.append(
                    f"incoming degree of '{vertex_id}' is {incoming}, more than the degree {degree}"
                )

    postcritical = portrait.postcritical()
    for v in portrait.vertices:
        if v.weight != 2 and v.id not in postcritical:
            diagnostics.append(f"vertex '{v.id}' is neither critical nor postcritical")
    if len(postcritical) != 4:
        diagnostics.append(
            f"postcritical set has {len(postcritical)} vertices; a NET portrait has exactly 4"
        )

    if diagnostics:
        logger.debug("Portrait rejected", problems=len(diagnostics))
        return PortraitValidation(None, tuple(diagnostics))
    return PortraitValidation(degree, ())


def require_valid(portrait: DynamicPortrait) -> int:
    result = validate_portrait(portrait)
    if not result.valid:
        raise DomainError("malformed portrait: " + "; ".join(result.diagnostics))
    return result.degree


def _full_critical_values(portrait: DynamicPortrait, degree: int) -> int:
    """Critical values with incoming degree d and no weight-1 in-edge."""
    weight_one_targets = {v.to for v in portrait.vertices if v.weight == 1}
    return sum(
        1
        for x in portrait.critical_values()
        if portrait.incoming(x) == degree and x not in weight_one_targets
    )


_MOD2_BY_K = {0: Mod2Divisors(1, 1), 2: Mod2Divisors(0, 1), 3: Mod2Divisors(0, 0)}


def mod2_divisors(portrait: DynamicPortrait) -> Mod2Divisors:
    degree = require_valid(portrait)
    k = _full_critical_values(portrait, degree)
    if k not in _MOD2_BY_K:
        raise DomainError(f"malformed portrait: {k} critical values have only critical preimages")
    return _MOD2_BY_K[k]


def exceptional_ok(portrait: DynamicPortrait) -> bool:
    degree = require_valid(portrait)
    return mod2_divisors(portrait) != (0, 0) or degree % 4 == 0


def realizable_with(portrait: DynamicPortrait, m: int, n: int) -> bool:
    degree = require_valid(portrait)
    if m < 1 or n < 1 or m % n or m * n != degree:
        raise DomainError(
            f"elementary divisors ({m},{n}) must satisfy n | m and m·n = {degree}"
        )
    return mod2_divisors(portrait) == (m % 2, n % 2)


@dataclass(frozen=True)
class BranchData:
    """Partitions of the degree over the critical values (parts 1 and 2)."""

    degree: int
    partitions: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        normalized = tuple(sorted((tuple(sorted(p, reverse=True)) for p in self.partitions), reverse=True))
        object.__setattr__(self, "partitions", normalized)

    @property
    def kernel(self) -> Tuple[int, ...]:
        """Number of noncritical preimages over each critical value."""
        return tuple(sorted((p.count(1) for p in self.partitions), reverse=True))

    @property
    def kind(self) -> Optional[int]:
        full = [p for p in self.partitions if 1 not in p]
        rest = [p.count(1) for p in self.partitions if 1 in p]
        if not full and rest and all(ones == 1 for ones in rest):
            return 1
        if len(full) == 2 and all(ones == 2 for ones in rest):
            return 2
        if len(full) == 3 and all(ones == 4 for ones in rest):
            return 3
        return None

    def __str__(self) -> str:
        return ", ".join("{" + ",".join(map(str, p)) + "}" for p in self.partitions)


def branch_data(portrait: DynamicPortrait) -> BranchData:
    degree = require_valid(portrait)
    extra = portrait.extra_counts()
    partitions = []
    for x in sorted(portrait.critical_values()):
        twos = sum(1 for v in portrait.vertices if v.weight == 2 and v.to == x) + extra.get(x, 0)
        partitions.append((2,) * twos + (1,) * (degree - 2 * twos))
    return BranchData(degree, tuple(partitions))


def branch_data_from_divisors(degree: int, m: int, n: int) -> BranchData:
    if m < 1 or n < 1 or m % n or m * n != degree:
        raise DomainError(f"elementary divisors ({m},{n}) must satisfy n | m and m·n = {degree}")
    if degree < 2:
        raise DomainError("degree must be at least 2")
    parity = (m % 2, n % 2)
    if parity == (1, 1):
        partitions = [(2,) * ((degree - 1) // 2) + (1,)] * 4
    elif parity == (0, 1):
        partitions = [(2,) * (degree // 2)] * 2 + [(2,) * ((degree - 2) // 2) + (1, 1)] * 2
    else:
        partitions = [(2,) * (degree // 2)] * 3 + [(2,) * ((degree - 4) // 2) + (1,) * 4]
    return BranchData(degree, tuple(p for p in partitions if 2 in p))


def branch_data_realizable(data: BranchData) -> bool:
    kind = data.kind
    return kind in (1, 2) or (kind == 3 and data.degree % 4 == 0)


def canonical_key(
    targets: Sequence[int], weights: Sequence[int], counts: Sequence[int]
) -> PortraitKey:
    """Minimum encoding over all relabelings of the four postcritical vertices."""
    best: Optional[PortraitKey] = None
    for perm in _PERMUTATIONS:
        inverse = [0] * 4
        for i, image in enumerate(perm):
            inverse[image] = i
        encoded = tuple(
            (weights[inverse[j]], perm[targets[inverse[j]]], counts[inverse[j]]) for j in range(4)
        )
        if best is None or encoded < best:
            best = encoded
    return best


def portrait_canonical(portrait: DynamicPortrait) -> PortraitKey:
    require_valid(portrait)
    postcritical = sorted(portrait.postcritical())
    index = {vertex_id: i for i, vertex_id in enumerate(postcritical)}
    targets = [0] * 4
    weights = [0] * 4
    counts = [0] * 4
    for v in portrait.vertices:
        if v.id in index:
            i = index[v.id]
            targets[i] = index[v.to]
            weights[i] = v.weight
        else:
            # critical and not postcritical: indistinguishable from an anonymous vertex
            counts[index[v.to]] += 1
    for to, count in portrait.extra_counts().items():
        counts[index[to]] += count
    return canonical_key(targets, weights, counts)


def portrait_isomorphic(first: DynamicPortrait, second: DynamicPortrait) -> bool:
    return portrait_canonical(first) == portrait_canonical(second)


def portrait_from_key(key: PortraitKey) -> DynamicPortrait:
    ids = [f"p{i}" for i in range(4)]
    vertices = tuple(PortraitVertex(ids[i], weight, ids[target]) for i, (weight, target, _) in enumerate(key))
    extra = tuple((ids[i], count) for i, (_, _, count) in enumerate(key) if count)
    return DynamicPortrait(vertices, extra)
