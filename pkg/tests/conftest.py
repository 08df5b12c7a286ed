"""Shared fixtures and random-presentation helpers."""

import random
from pathlib import Path

import pytest

from netmap.services.lattice_core import IntMatrix2, QuotientGroup, a_lift, elementary_divisors
from netmap.services.portrait_io import load_portrait
from netmap.services.presentation import Arc, NetMapPresentation, load_presentation

FIXTURES = Path(__file__).parent / "fixtures"

CORNERS = ((0, 0), (1, 0), (0, 1), (1, 1))


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def random_matrix(rng: random.Random, max_det: int, min_det: int = 2, bound: int = 12) -> IntMatrix2:
    while True:
        A = IntMatrix2(*(rng.randint(-bound, bound) for _ in range(4)))
        if min_det <= A.det() <= max_det:
            return A


def random_unimodular(rng: random.Random, steps: int = 6) -> IntMatrix2:
    """A product of elementary SL(2,Z) generators."""
    generators = (
        IntMatrix2(1, 1, 0, 1),
        IntMatrix2(1, -1, 0, 1),
        IntMatrix2(1, 0, 1, 1),
        IntMatrix2(1, 0, -1, 1),
        IntMatrix2(0, -1, 1, 0),
    )
    M = IntMatrix2.identity()
    for _ in range(steps):
        M = M @ rng.choice(generators)
    return M


def random_congruence_matrix(rng: random.Random, level: int, steps: int) -> IntMatrix2:
    """A product of elementary matrices congruent to the identity mod level."""
    generators = (
        IntMatrix2(1, level, 0, 1),
        IntMatrix2(1, -level, 0, 1),
        IntMatrix2(1, 0, level, 1),
        IntMatrix2(1, 0, -level, 1),
    )
    M = IntMatrix2.identity()
    for _ in range(steps):
        M = M @ rng.choice(generators)
    return M


def random_presentation(rng: random.Random, max_det: int = 12) -> NetMapPresentation:
    """A valid presentation with random matrix, translation, corners and structure set."""
    A = random_matrix(rng, max_det)
    m, n = elementary_divisors(A)
    group = QuotientGroup(m, n)

    def lattice_point(i: int, j: int) -> tuple:
        return A.apply((i, j))

    bx, by = lattice_point(rng.randint(-3, 3), rng.randint(-3, 3))
    terminals = rng.sample(group.signed_classes(), 4)
    arcs = []
    for (i, j), h in zip(CORNERS, terminals):
        initial = lattice_point(i + 2 * rng.randint(-2, 2), j + 2 * rng.randint(-2, 2))
        tx, ty = a_lift(A, h)
        ox, oy = lattice_point(2 * rng.randint(-2, 2), 2 * rng.randint(-2, 2))
        sign = rng.choice((1, -1))
        arcs.append(Arc(initial, (sign * tx + ox, sign * ty + oy)))
    rng.shuffle(arcs)
    return NetMapPresentation(matrix=A, translation=(bx, by), arcs=tuple(arcs))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def deg6_shear():
    return load_presentation(fixture_path("deg6_shear.net"))


@pytest.fixture
def example_deg10():
    return load_presentation(fixture_path("example_deg10.net"))


@pytest.fixture
def example_deg4_portrait():
    return load_portrait(fixture_path("example_deg4_portrait.json"))
