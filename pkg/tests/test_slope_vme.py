import random
from math import gcd

import pytest

from conftest import fixture_path, random_congruence_matrix, random_matrix, random_presentation, random_unimodular
from netmap.services.errors import DomainError, InfeasibleError, NetMapParseError, UsageError
from netmap.services.hurwitz_classes import deck_group, hs_from_presentation
from netmap.services.lattice_core import IntMatrix2, Lattice
from netmap.services.modular_lift import LiftRepresentative, ModularElement
from netmap.services.portrait_builder import postcritical_set
from netmap.services.presentation import Arc, NetMapPresentation, euclidean_presentation
from netmap.services.slope_vme import (
    NON_SLOPE,
    Multiplier,
    Slope,
    VMEValue,
    euclidean_multiplier,
    euclidean_oracle,
    euclidean_slope_map,
    load_slope_oracle,
    matrix_on_slope,
    parse_slope_oracle,
    solve_linear_part,
    translation_part,
    virtual_multiendomorphism,
)
from netmap.services.teichmuller import teichmuller_action

INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)


@pytest.fixture
def deg6_shear_oracle():
    return load_slope_oracle(fixture_path("deg6_shear_slopes.txt"))


def test_slope_normal_form():
    assert Slope(2, -4) == Slope(-1, 2)
    assert Slope(-3, 0) == INFINITY
    assert str(Slope(4, 6)) == "2/3"
    assert str(NON_SLOPE) == "o"
    assert not NON_SLOPE.is_slope


@pytest.mark.parametrize(
    "text, expected",
    [("1/0", INFINITY), ("-2", Slope(-2, 1)), ("+3/6", Slope(1, 2)), ("o", NON_SLOPE), (" 0/5 ", ZERO)],
)
def test_slope_parse(text, expected):
    assert Slope.parse(text) == expected


@pytest.mark.parametrize("text", ["0/0", "1/x", "", "1/-2"])
def test_slope_parse_rejects(text):
    with pytest.raises(NetMapParseError):
        Slope.parse(text)


def test_negative_reciprocal():
    assert Slope(2, 3).negative_reciprocal() == Slope(-3, 2)
    assert ZERO.negative_reciprocal() == INFINITY
    assert INFINITY.negative_reciprocal() == ZERO


def test_matrix_on_slope():
    M = IntMatrix2(1, 0, 2, 1)
    assert matrix_on_slope(M, ZERO) == Slope(2, 1)
    assert matrix_on_slope(M, INFINITY) == INFINITY
    assert matrix_on_slope(M, Slope(-2, 1)) == ZERO
    with pytest.raises(DomainError, match="non-slope"):
        matrix_on_slope(M, NON_SLOPE)


def test_matrix_on_slope_is_a_group_action():
    rng = random.Random(71)
    for _ in range(200):
        M1, M2 = random_unimodular(rng), random_unimodular(rng)
        p, q = rng.randint(-9, 9), rng.randint(-9, 9)
        if (p, q) == (0, 0):
            continue
        s = Slope(p, q)
        assert matrix_on_slope(M1 @ M2, s) == matrix_on_slope(M1, matrix_on_slope(M2, s))
    assert matrix_on_slope(IntMatrix2.identity(), Slope(3, 5)) == Slope(3, 5)


def test_deg6_shear_oracle_file(deg6_shear_oracle):
    assert deg6_shear_oracle.slopes() == (ZERO, INFINITY, Slope(-2, 1))
    assert deg6_shear_oracle.get(Slope(-2, 1)) == Slope(4, 3)
    assert deg6_shear_oracle.get(Slope(5, 1)) is None


def test_oracle_multipliers_and_non_slopes():
    oracle = parse_slope_oracle("1/0 -> 1/1 ; 1/2\n-2/1 -> o  # non-slope\n")
    assert oracle.multipliers[INFINITY] == Multiplier(1, 2)
    assert str(oracle.multipliers[INFINITY]) == "1/2"
    assert oracle.get(Slope(-2, 1)) == NON_SLOPE


@pytest.mark.parametrize(
    "text, line, message",
    [
        ("0/1 -> 2/1\n0/1 -> 3/1\n", 2, "duplicate"),
        ("# header\no -> 1/1\n", 2, "cannot be 'o'"),
        ("0/1 -> 2/1\n\n1/0 => 1/1\n", 3, "unrecognized"),
        ("0/1 -> 0/0\n", 1, "0/0"),
    ],
)
def test_oracle_errors_carry_line_numbers(text, line, message):
    with pytest.raises(NetMapParseError, match=message) as excinfo:
        parse_slope_oracle(text)
    assert excinfo.value.line == line


def test_missing_oracle_file(tmp_path):
    with pytest.raises(UsageError, match="slope file not found"):
        load_slope_oracle(str(tmp_path / "missing.txt"))


def test_euclidean_slope_map_examples():
    A = IntMatrix2.diagonal(2, 1)
    assert euclidean_slope_map(A, ZERO) == ZERO
    assert euclidean_slope_map(A, INFINITY) == INFINITY
    assert euclidean_slope_map(A, Slope(1, 1)) == Slope(2, 1)


def test_euclidean_multiplier_examples():
    A = IntMatrix2.diagonal(2, 1)
    assert euclidean_multiplier(A, ZERO) == Multiplier(1, 2)
    assert euclidean_multiplier(A, INFINITY) == Multiplier(2, 1)
    assert euclidean_multiplier(A, Slope(1, 1)) == Multiplier(1, 2)


def _brute_force_multiplier(A, s):
    """Components from the index of ⟨v⟩ + Λ1 sublattices, degree from the first multiple of v in Λ1."""
    v = s.direction
    (l1x, l1y), (l2x, l2y) = A.columns
    c = gcd(v[0] * l1y - v[1] * l1x, v[0] * l2y - v[1] * l2x)
    lattice = Lattice(A)
    d = next(k for k in range(1, A.det() + 1) if lattice.contains((k * v[0], k * v[1])) is not None)
    return Multiplier(c, d)


def test_euclidean_multiplier_matches_brute_force():
    rng = random.Random(47)
    for _ in range(200):
        A = random_matrix(rng, max_det=40, bound=10)
        while True:
            p, q = rng.randint(-9, 9), rng.randint(0, 9)
            if gcd(p, q) == 1:
                break
        s = Slope(p, q)
        multiplier = euclidean_multiplier(A, s)
        assert multiplier == _brute_force_multiplier(A, s)
        assert multiplier.c * multiplier.d == A.det()


def test_solve_linear_part_deg6_shear_pairs():
    Q = solve_linear_part((Slope(1, 1), Slope(1, 1)), (Slope(4, 3), Slope(2, 1)), 1)
    assert Q == IntMatrix2(3, -2, 2, -1)


def test_solve_linear_part_identity():
    assert solve_linear_part((ZERO, ZERO), (INFINITY, INFINITY), 1) == IntMatrix2.identity()
    assert solve_linear_part((ZERO, ZERO), (INFINITY, INFINITY), -1) == IntMatrix2(1, 0, 0, -1)


def test_solve_linear_part_inconsistent():
    with pytest.raises(DomainError, match="inconsistent slope data"):
        solve_linear_part((ZERO, ZERO), (INFINITY, Slope(2, 1)), 1)
    with pytest.raises(DomainError, match="inconsistent slope data"):
        solve_linear_part((ZERO, ZERO), (ZERO, INFINITY), 1)
    with pytest.raises(DomainError):
        solve_linear_part((ZERO, ZERO), (INFINITY, INFINITY), 2)


def test_translation_part_on_euclidean_maps():
    p = euclidean_presentation(IntMatrix2.diagonal(2, 1))
    identity = IntMatrix2.identity()
    assert translation_part(p, LiftRepresentative(identity, (0, 0))) == (0, 0)
    assert translation_part(p, LiftRepresentative(identity, (2, 0))) == (1, 0)
    with pytest.raises(DomainError, match="not a lift"):
        translation_part(euclidean_presentation(IntMatrix2.diagonal(3, 1)), LiftRepresentative(identity, (2, 0)))


def test_deg6_shear_virtual_multiendomorphism(deg6_shear, deg6_shear_oracle):
    values = virtual_multiendomorphism(deg6_shear, ModularElement(IntMatrix2(1, 0, 2, 1)), deg6_shear_oracle)
    assert values == [VMEValue(IntMatrix2(3, -2, 2, -1), (0, 0))]


def test_vme_of_non_liftable_element(deg6_shear, deg6_shear_oracle):
    with pytest.raises(InfeasibleError, match="not liftable"):
        virtual_multiendomorphism(deg6_shear, ModularElement(IntMatrix2(1, 2, 0, 1)), deg6_shear_oracle)


def test_vme_reports_missing_slopes(deg6_shear):
    oracle = parse_slope_oracle("0/1 -> 2/1\n1/0 -> 1/1\n")
    with pytest.raises(InfeasibleError, match="missing slopes: 2/1"):
        virtual_multiendomorphism(deg6_shear, ModularElement(IntMatrix2(1, 0, 2, 1)), oracle)


def test_vme_needs_two_distinct_images(deg6_shear):
    oracle = parse_slope_oracle("0/1 -> 2/1\n1/0 -> o\n")
    with pytest.raises(InfeasibleError, match="two slopes"):
        virtual_multiendomorphism(deg6_shear, ModularElement(IntMatrix2(1, 0, 2, 1)), oracle)


def test_euclidean_vme_is_conjugation():
    A = IntMatrix2.diagonal(2, 1)
    M = IntMatrix2(1, 0, 2, 1)
    p = euclidean_presentation(A)
    oracle = euclidean_oracle(A, [ZERO, INFINITY, matrix_on_slope(M, ZERO), matrix_on_slope(M, INFINITY)])
    values = virtual_multiendomorphism(p, ModularElement(M), oracle)
    assert {value.matrix for value in values} == {IntMatrix2(1, 0, 4, 1)}
    assert [value.translation for value in values] == [(0, 0), (1, 0)]


def test_identity_vme_has_one_value_per_deck_transformation():
    A = IntMatrix2.diagonal(2, 2)
    values = virtual_multiendomorphism(
        euclidean_presentation(A), ModularElement(IntMatrix2.identity()), euclidean_oracle(A, [ZERO, INFINITY])
    )
    assert len(values) == 4
    assert all(value.matrix == IntMatrix2.identity() for value in values)


IDENTITY_ORACLE = "0/1 -> 0/1\n1/0 -> 1/0\n"


def test_vme_has_one_value_per_deck_transformation():
    rng = random.Random(73)
    oracle = parse_slope_oracle(IDENTITY_ORACLE)
    checked = 0
    for _ in range(200):
        p = random_presentation(rng)
        if len(postcritical_set(p)) < 4:
            continue
        values = virtual_multiendomorphism(p, ModularElement(IntMatrix2.identity()), oracle)
        assert len(values) == deck_group(hs_from_presentation(p)).order
        checked += 1
    assert checked >= 40


def test_vme_rejects_maps_with_three_postcritical_points():
    p = NetMapPresentation(
        matrix=IntMatrix2.diagonal(2, 1),
        translation=(0, 0),
        arcs=[Arc((0, 0), (0, 0)), Arc((2, 0), (2, 0)), Arc((0, 1), (1, 0)), Arc((2, 1), (1, 1))],
    )
    with pytest.raises(DomainError, match="fewer than four postcritical points"):
        virtual_multiendomorphism(p, ModularElement(IntMatrix2.identity()), parse_slope_oracle(IDENTITY_ORACLE))


def _lifted_action(p, A, e):
    slopes = [ZERO, INFINITY, matrix_on_slope(e.matrix, ZERO), matrix_on_slope(e.matrix, INFINITY)]
    Q = virtual_multiendomorphism(p, e, euclidean_oracle(A, slopes))[0].matrix
    return teichmuller_action(ModularElement(Q))


@pytest.mark.parametrize("A", [IntMatrix2.diagonal(2, 1), IntMatrix2.diagonal(3, 1), IntMatrix2.diagonal(2, 2)])
def test_lifted_actions_compose_in_reverse_order(A):
    rng = random.Random(79)
    p = euclidean_presentation(A)
    for _ in range(20):
        e1 = ModularElement(random_congruence_matrix(rng, 2 * A.det(), rng.randint(1, 3)))
        e2 = ModularElement(random_congruence_matrix(rng, 2 * A.det(), rng.randint(1, 3)))
        assert _lifted_action(p, A, e1.compose(e2)) == _lifted_action(p, A, e2).compose(_lifted_action(p, A, e1))


def test_lifted_actions_compose_on_shears():
    A = IntMatrix2.diagonal(2, 1)
    p = euclidean_presentation(A)
    e1 = ModularElement(IntMatrix2(1, 0, 4, 1))
    e2 = ModularElement(IntMatrix2(1, 4, 0, 1))
    assert _lifted_action(p, A, e1) == teichmuller_action(ModularElement(IntMatrix2(1, 0, 8, 1)))
    assert _lifted_action(p, A, e2) == teichmuller_action(ModularElement(IntMatrix2(1, 2, 0, 1)))
    assert _lifted_action(p, A, e1.compose(e2)) == _lifted_action(p, A, e2).compose(_lifted_action(p, A, e1))
