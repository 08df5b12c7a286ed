import pytest

from netmap.services.errors import UsageError
from netmap.services.portrait import exceptional_ok, portrait_canonical, validate_portrait
from netmap.services.portrait_census import enumerate_portraits

TABLE_2 = {
    2: 16,
    3: 94,
    4: 272,
    5: 144,
    6: 338,
    7: 152,
    8: 476,
    9: 153,
    10: 353,
    11: 153,
    12: 483,
    13: 153,
    14: 353,
    15: 153,
    16: 483,
}


@pytest.mark.parametrize("degree", range(2, 7))
def test_portrait_counts(degree):
    assert enumerate_portraits(degree).count == TABLE_2[degree]


@pytest.mark.slow
@pytest.mark.parametrize("degree", range(7, 17))
def test_portrait_counts_large_degrees(degree):
    assert enumerate_portraits(degree).count == TABLE_2[degree]


@pytest.mark.slow
def test_counts_stabilize_with_period_four():
    assert enumerate_portraits(13).count == enumerate_portraits(9).count
    assert enumerate_portraits(14).count == enumerate_portraits(10).count


def test_representatives_are_valid_and_distinct():
    census = enumerate_portraits(4)
    keys = set()
    for portrait in census.representatives():
        result = validate_portrait(portrait)
        assert result.valid
        assert result.degree == 4
        assert exceptional_ok(portrait)
        keys.add(portrait_canonical(portrait))
    assert keys == set(census.keys)


def test_exceptional_portraits_only_in_degrees_divisible_by_four():
    for degree in (5, 6):
        for portrait in enumerate_portraits(degree).representatives():
            assert exceptional_ok(portrait)


def test_workers_do_not_change_the_census():
    assert enumerate_portraits(5, workers=2) == enumerate_portraits(5)


def test_degree_one_is_rejected():
    with pytest.raises(UsageError):
        enumerate_portraits(1)
