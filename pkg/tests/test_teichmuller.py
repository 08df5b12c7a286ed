import pytest

from netmap.services.errors import DomainError
from netmap.services.lattice_core import IntMatrix2
from netmap.services.modular_lift import ElementType, ModularElement, is_liftable
from netmap.services.presentation import euclidean_presentation
from netmap.services.slope_vme import (
    Slope,
    euclidean_multiplier,
    euclidean_oracle,
    euclidean_slope_map,
    matrix_on_slope,
    virtual_multiendomorphism,
)
from netmap.services.teichmuller import MobiusMap, parabolic_power, positive_parabolic_generator, teichmuller_action


@pytest.mark.parametrize(
    "matrix, text",
    [
        (IntMatrix2(1, 0, 2, 1), "z -> z/(2z+1)"),
        (IntMatrix2.identity(), "z -> z"),
        (IntMatrix2(0, -1, 1, 0), "z -> -1/z"),
        (IntMatrix2(1, 3, 0, 1), "z -> z+3"),
        (IntMatrix2(3, -2, 2, -1), "z -> (-z-2)/(2z+3)"),
    ],
)
def test_teichmuller_action_text(matrix, text):
    assert str(teichmuller_action(ModularElement(matrix))) == text


def test_orientation_reversing_action_uses_conjugate():
    sigma = teichmuller_action(ModularElement(IntMatrix2(1, 0, 0, -1)))
    assert sigma.conjugate
    assert str(sigma) == "z -> -conj(z)"


def test_rotation_is_elliptic():
    assert teichmuller_action(ModularElement(IntMatrix2(0, -1, 1, 0))).element_type() == ElementType.ELLIPTIC


def test_action_reverses_composition():
    M = ModularElement(IntMatrix2(1, 0, 2, 1))
    N = ModularElement(IntMatrix2(2, 1, 1, 1))
    assert teichmuller_action(M.compose(N)) == teichmuller_action(N).compose(teichmuller_action(M))


def test_denominator_sign_is_normalized():
    assert MobiusMap(1, 0, -2, -1) == MobiusMap(-1, 0, 2, 1)


@pytest.mark.parametrize("r", [Slope(0, 1), Slope(1, 0), Slope(2, 3), Slope(-1, 4)])
def test_parabolic_generator_fixes_r(r):
    S = positive_parabolic_generator(r)
    assert S.det() == 1
    assert S.trace() == 2
    assert parabolic_power(MobiusMap(S.a, S.b, S.c, S.d), r) == 1


def test_parabolic_power_of_non_power():
    with pytest.raises(DomainError, match="not a power"):
        parabolic_power(MobiusMap(2, 1, 1, 1), Slope(0, 1))
    with pytest.raises(DomainError, match="reverses orientation"):
        parabolic_power(MobiusMap(1, 0, 0, 1, True), Slope(0, 1))


def _twist(s, k):
    p, q = s.p, s.q
    return IntMatrix2(1 - k * p * q, k * q * q, -k * p * p, 1 + k * p * q)


@pytest.mark.parametrize("s", [Slope(0, 1), Slope(1, 0), Slope(1, 1), Slope(-2, 3)])
def test_twist_acts_as_parabolic_power(s):
    k = 2 * 6
    M = _twist(s, k)
    assert matrix_on_slope(M, s) == s
    assert parabolic_power(teichmuller_action(ModularElement(M)), s.negative_reciprocal()) == k


@pytest.mark.parametrize("s, other", [(Slope(0, 1), Slope(1, 0)), (Slope(1, 0), Slope(0, 1))])
def test_lifted_twist_power_follows_multiplier(s, other):
    A = IntMatrix2.diagonal(2, 1)
    k = 2 * A.det()
    M = _twist(s, k)
    p = euclidean_presentation(A)
    e = ModularElement(M)
    assert is_liftable(p, e)

    oracle = euclidean_oracle(A, [s, other, matrix_on_slope(M, other)])
    Q = virtual_multiendomorphism(p, e, oracle)[0].matrix
    c, d = euclidean_multiplier(A, s)
    power = parabolic_power(teichmuller_action(ModularElement(Q)), euclidean_slope_map(A, s).negative_reciprocal())
    assert power * d == k * c
