"""Portraits from presentations and presentations from portraits.

Reading a presentation: P1 is the set of classes of arc initial points,
P2 the set of classes of terminal points, both taken in Λ2/2Λ1 up to sign.
Arcs give the bijection η from the corners Λ1/2Λ1 onto P2, and the affine
map x ↦ A·x + b sends a class with representative (r, s) to the corner
with coefficients (r + b1, s + b2) mod 2. The portrait map is φ = η∘γ.

Building a presentation runs the same bookkeeping backwards in the
standardized frame A' = diag(m, n) and finally changes basis by a lift Q of
the affine map over the two-element field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from loguru import logger

from netmap.schemas.portrait import ChoicePolicy
from netmap.services.errors import DomainError, InfeasibleError
from netmap.services.lattice_core import AElement, IntMatrix2, IntPair, QuotientGroup, a_coords
from netmap.services.portrait import (
    DynamicPortrait,
    PortraitVertex,
    realizable_with,
    require_valid,
)
from netmap.services.presentation import Arc, NetMapPresentation

_CORNERS: Tuple[IntPair, ...] = ((0, 0), (1, 0), (0, 1), (1, 1))

# SL(2,Z) representatives of SL(2,F2), keyed by the row-major entries mod 2
_SL2_F2_LIFTS: Dict[Tuple[int, int, int, int], IntMatrix2] = {
    (1, 0, 0, 1): IntMatrix2(1, 0, 0, 1),
    (0, 1, 1, 0): IntMatrix2(0, -1, 1, 0),
    (1, 1, 0, 1): IntMatrix2(1, 1, 0, 1),
    (1, 0, 1, 1): IntMatrix2(1, 0, 1, 1),
    (0, 1, 1, 1): IntMatrix2(0, -1, 1, 1),
    (1, 1, 1, 0): IntMatrix2(1, 1, -1, 0),
}


# Hand-picked choices for the degree-4 reference portrait on v2..v5
REFERENCE_CHOICE_POLICY = ChoicePolicy(
    new_points={"v8": "v3", "v9": "v4", "v10": "v4"},
    corners={"v2": (0, 0), "v8": (1, 0), "v9": (0, 1), "v10": (1, 1)},
    eta={"v2": "v2", "v8": "v3", "v9": "v4", "v10": "v5"},
    parities={"v2": (1, 0)},
)


def _label(point: IntPair) -> str:
    return f"({point[0]},{point[1]})"


@dataclass(frozen=True)
class PresentationTrace:
    """The P1/P2 bookkeeping of a presentation."""

    group: QuotientGroup
    labels: Dict[AElement, str]
    points: Dict[AElement, IntPair]
    p1: Tuple[AElement, ...]
    p2: Tuple[AElement, ...]
    eta: Dict[IntPair, AElement]
    translation_coords: IntPair

    def gamma(self, point: IntPair) -> IntPair:
        b1, b2 = self.translation_coords
        return (point[0] + b1) % 2, (point[1] + b2) % 2

    def phi(self, cls: AElement) -> AElement:
        return self.eta[self.gamma(self.points[cls])]

    def name(self, tau: IntPair) -> AElement:
        """The P2 class naming the lattice point τ ∈ {0, e1, e2, e1+e2}."""
        return self.eta[self.gamma(tau)]


def trace_presentation(p: NetMapPresentation) -> PresentationTrace:
    group = p.group

    def signed(point: IntPair) -> AElement:
        return group.signed_rep(a_coords(p.matrix, point))

    labels: Dict[AElement, str] = {}
    points: Dict[AElement, IntPair] = {}
    eta: Dict[IntPair, AElement] = {}
    p1: List[AElement] = []
    p2: List[AElement] = []
    for arc in p.arcs:
        terminal = signed(arc.terminal)
        p2.append(terminal)
        labels[terminal] = _label(arc.terminal)
        points[terminal] = arc.terminal
        eta[p.corner_index(arc.initial)] = terminal
    for arc in p.arcs:
        initial = signed(arc.initial)
        p1.append(initial)
        if initial not in labels:
            labels[initial] = _label(arc.initial)
            points[initial] = arc.initial

    b1, b2 = p.lattice_coords(p.translation)
    return PresentationTrace(
        group=group,
        labels=labels,
        points=points,
        p1=tuple(p1),
        p2=tuple(p2),
        eta=eta,
        translation_coords=(b1 % 2, b2 % 2),
    )


def portrait_from_presentation(p: NetMapPresentation) -> DynamicPortrait:
    """Portrait of the NET map given by a presentation.

    P2 classes become named vertices (weight 1 when also in P1, else 2) and
    anonymous critical vertices fill every P2 vertex up to incoming degree d,
    counting the P1-only preimages as noncritical.

    Raises:
        DomainError: if the counts are inconsistent, which means a broken invariant.
    """
    trace = trace_presentation(p)
    degree = p.degree
    p1 = set(trace.p1)
    p2 = set(trace.p2)

    vertices = []
    for cls in trace.p2:
        weight = 1 if cls in p1 else 2
        vertices.append(PortraitVertex(trace.labels[cls], weight, trace.labels[trace.phi(cls)]))

    extra = []
    for cls in trace.p2:
        incoming = sum(
            (1 if other in p1 else 2) for other in trace.p2 if trace.phi(other) == cls
        )
        p1_only = sum(1 for other in trace.p1 if other not in p2 and trace.phi(other) == cls)
        remainder = degree - incoming - p1_only
        if remainder < 0 or remainder % 2:
            raise DomainError(
                f"internal: preimage count {remainder} over {trace.labels[cls]} is not a nonnegative even number"
            )
        if remainder:
            extra.append((trace.labels[cls], remainder // 2))

    logger.debug("Portrait built from presentation", degree=degree, anonymous=sum(c for _, c in extra))
    return DynamicPortrait(tuple(vertices), tuple(extra))


def postcritical_set(p: NetMapPresentation) -> frozenset:
    """Labels of the P2 points in the forward orbit of the critical values."""
    return portrait_from_presentation(p).postcritical()


@dataclass
class _Realization:
    """Working state for presentation_from_portrait."""

    m: int
    n: int
    phi: Dict[str, str]
    p1: List[str]
    p2: List[str]
    new_points: List[str]


def _extend_to_p1(portrait: DynamicPortrait, degree: int, policy: ChoicePolicy) -> Tuple[Dict[str, str], List[str]]:
    """Adjoin noncritical P1 points so every P2 vertex has exactly d preimages."""
    postcritical = sorted(portrait.postcritical())
    deficits = {x: degree - portrait.incoming(x) for x in postcritical}

    if policy.new_points:
        assigned: Dict[str, int] = {}
        for target in policy.new_points.values():
            assigned[target] = assigned.get(target, 0) + 1
        wanted = {x: k for x, k in deficits.items() if k}
        if assigned != wanted:
            raise DomainError(f"choice policy new_points {assigned} do not match the deficits {wanted}")
        clash = set(policy.new_points) & set(portrait.ids)
        if clash:
            raise DomainError(f"choice policy reuses existing vertex names {sorted(clash)}")
        return dict(policy.new_points), list(policy.new_points)

    taken = set(portrait.ids)
    new_phi: Dict[str, str] = {}
    order: List[str] = []
    counter = 1
    for target in postcritical:
        for _ in range(deficits[target]):
            while f"n{counter}" in taken:
                counter += 1
            name = f"n{counter}"
            taken.add(name)
            new_phi[name] = target
            order.append(name)
            counter += 1
    return new_phi, order


def _corner_parity(corner: IntPair, m: int, n: int) -> IntPair:
    return (corner[0] * m) % 2, (corner[1] * n) % 2


def _assign_corners(state: _Realization, policy: ChoicePolicy) -> Dict[str, IntPair]:
    if policy.corners:
        corners = {vertex: tuple(c) for vertex, c in policy.corners.items()}
        if set(corners) != set(state.p1) or sorted(corners.values()) != sorted(_CORNERS):
            raise DomainError("choice policy corners must place each P1 point at a distinct corner")
    else:
        by_value: Dict[str, List[str]] = {}
        for x in state.p1:
            by_value.setdefault(state.phi[x], []).append(x)
        point_groups = [
            sorted(by_value[value], key=lambda x: (x in state.new_points, state.p1.index(x)))
            for value in sorted(by_value)
        ]
        by_parity: Dict[IntPair, List[IntPair]] = {}
        for corner in _CORNERS:
            by_parity.setdefault(_corner_parity(corner, state.m, state.n), []).append(corner)
        corner_groups = list(by_parity.values())
        if sorted(map(len, point_groups)) != sorted(map(len, corner_groups)):
            raise DomainError("internal: realizability contract violated (P1 fibers do not match corner parities)")
        corners = {}
        for points, slots in zip(point_groups, corner_groups):
            if len(points) != len(slots):
                raise DomainError("internal: realizability contract violated (P1 fiber sizes differ)")
            corners.update(zip(points, slots))

    for x in state.p1:
        for y in state.p1:
            same_value = state.phi[x] == state.phi[y]
            same_parity = _corner_parity(corners[x], state.m, state.n) == _corner_parity(corners[y], state.m, state.n)
            if same_value != same_parity:
                raise DomainError(
                    f"internal: realizability contract violated (corners of '{x}' and '{y}' disagree with φ)"
                )
    return corners


def _choose_eta(state: _Realization, policy: ChoicePolicy) -> Dict[str, str]:
    if policy.eta:
        eta = dict(policy.eta)
        if set(eta) != set(state.p1) or sorted(eta.values()) != sorted(state.p2):
            raise DomainError("choice policy eta must be a bijection from P1 onto P2")
        return eta
    shared = [x for x in state.p1 if x in state.p2]
    eta = {x: x for x in shared}
    eta.update(
        zip(
            sorted(x for x in state.p1 if x not in state.p2),
            sorted(y for y in state.p2 if y not in state.p1),
        )
    )
    return eta


def _position_parities(
    state: _Realization, corners: Dict[str, IntPair], eta: Dict[str, str], policy: ChoicePolicy
) -> Dict[IntPair, IntPair]:
    """θ: parity class of a standardized point ↦ corner index of its γ-image."""
    eta_inverse = {y: x for x, y in eta.items()}
    theta: Dict[IntPair, IntPair] = {}
    for x in state.p1:
        parity = _corner_parity(corners[x], state.m, state.n)
        theta[parity] = corners[eta_inverse[state.phi[x]]]

    fresh_values = sorted(
        {state.phi[y] for y in state.p2 if y not in state.p1} - {state.phi[x] for x in state.p1}
    )
    free = [parity for parity in _CORNERS if parity not in theta]
    chosen = {value: tuple(parity) for value, parity in (policy.parities or {}).items()}
    for value in fresh_values:
        parity = chosen.get(value) or (free[0] if free else None)
        if parity is None or parity not in free:
            raise DomainError(f"internal: realizability contract violated (no parity left for φ-value '{value}')")
        free.remove(parity)
        theta[parity] = corners[eta_inverse[value]]

    remaining = sorted(set(_CORNERS) - set(theta.values()))
    for parity, corner in zip(sorted(free), remaining):
        theta[parity] = corner
    return theta


def _choose_positions(
    state: _Realization,
    corners: Dict[str, IntPair],
    theta: Dict[IntPair, IntPair],
    eta: Dict[str, str],
    policy: ChoicePolicy,
) -> Dict[str, IntPair]:
    group = QuotientGroup(state.m, state.n)
    eta_inverse = {y: x for x, y in eta.items()}
    theta_inverse = {corner: parity for parity, corner in theta.items()}

    positions: Dict[str, IntPair] = {}
    used = set()
    for x in state.p1:
        corner = corners[x]
        position = (corner[0] * state.m, corner[1] * state.n)
        used.add(group.signed_rep(group.reduce(*position)))
        if x in state.p2:
            positions[x] = position

    chosen = {vertex: tuple(point) for vertex, point in (policy.positions or {}).items()}
    for y in sorted(v for v in state.p2 if v not in state.p1):
        parity = theta_inverse[corners[eta_inverse[state.phi[y]]]]
        candidates = [chosen[y]] if y in chosen else [
            (px, py)
            for px in range(2 * state.m + 1)
            for py in range(state.n + 1)
        ]
        for point in candidates:
            cls = group.signed_rep(group.reduce(*point))
            if (point[0] % 2, point[1] % 2) == parity and cls not in used:
                positions[y] = point
                used.add(cls)
                break
        else:
            raise DomainError(f"internal: realizability contract violated (no position for '{y}')")
    return positions


def presentation_from_portrait(
    portrait: DynamicPortrait, m: int, n: int, policy: Optional[ChoicePolicy] = None
) -> NetMapPresentation:
    """Realize a portrait by a presentation with elementary divisors (m, n).

    Raises:
        InfeasibleError: when the portrait is not realizable with (m, n).
        DomainError: when a supplied choice policy is inconsistent, or when
            construction fails for a realizable portrait ("internal: ...").
    """
    degree = require_valid(portrait)
    if not realizable_with(portrait, m, n):
        raise InfeasibleError(f"portrait is not realizable with elementary divisors ({m},{n})")
    policy = policy or ChoicePolicy()

    new_phi, new_points = _extend_to_p1(portrait, degree, policy)
    postcritical = sorted(portrait.postcritical())
    phi = {v.id: v.to for v in portrait.vertices if v.id in portrait.postcritical()}
    phi.update(new_phi)
    weights = {v.id: v.weight for v in portrait.vertices}
    p1 = [x for x in postcritical if weights[x] == 1] + new_points
    state = _Realization(m=m, n=n, phi=phi, p1=p1, p2=postcritical, new_points=new_points)

    corners = _assign_corners(state, policy)
    eta = _choose_eta(state, policy)
    theta = _position_parities(state, corners, eta, policy)
    positions = _choose_positions(state, corners, theta, eta, policy)

    b0 = theta[(0, 0)]
    columns = []
    for basis in ((1, 0), (0, 1)):
        image = theta[basis]
        columns.append(((image[0] - b0[0]) % 2, (image[1] - b0[1]) % 2))
    q_bar = (columns[0][0], columns[1][0], columns[0][1], columns[1][1])
    if q_bar not in _SL2_F2_LIFTS:
        raise DomainError("internal: realizability contract violated (θ is not affine)")
    Q = _SL2_F2_LIFTS[q_bar]
    A = Q @ IntMatrix2.diagonal(m, n)
    b = A.apply(b0)

    arcs = []
    for x in sorted(p1, key=lambda point: _CORNERS.index(corners[point])):
        corner = corners[x]
        arcs.append(Arc(Q.apply((corner[0] * m, corner[1] * n)), Q.apply(positions[eta[x]])))

    logger.debug("Presentation built from portrait", matrix=str(A), translation=b, q_bar=q_bar)
    return NetMapPresentation(matrix=A, translation=b, arcs=tuple(arcs))
