import math
import random

import pytest
from hypothesis import given, strategies as st

from q2lab.lattice import (
    BadCharacterError,
    DuplicateSubsetError,
    Family,
    LineLengthError,
    MissingHeaderError,
    binom,
    elements,
    layer,
    middle_layer_size,
    parse_family,
    serialize_family,
    subset,
    tail_bound_check,
    tail_sum,
)


def test_subset_bits():
    assert subset() == 0
    assert subset(1, 3) == 0b101
    assert elements(0b101) == (1, 3)


def test_binom_examples():
    assert binom(4, 2) == 6
    assert binom(5, 0) == 1
    assert binom(30, 15) == 155117520
    assert binom(4, 5) == 0 and binom(4, -1) == 0


def test_binom_pascal_and_rows():
    row = [1]
    for n in range(65):
        assert [binom(n, k) for k in range(n + 1)] == row
        assert sum(row) == 2 ** n
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]


def test_middle_layer():
    assert middle_layer_size(4) == 6
    assert middle_layer_size(0) == 1
    assert middle_layer_size(20) == 184756


def test_layer():
    assert layer(3, 0).members == (0,)
    assert layer(3, 1).as_sets() == [(1,), (2,), (3,)]
    assert len(layer(4, 2)) == 6
    with pytest.raises(ValueError):
        layer(3, 4)


def test_family_rejects_duplicates_and_range():
    with pytest.raises(ValueError):
        Family(2, (1, 1))
    with pytest.raises(ValueError):
        Family(2, (4,))


def test_tail_bound():
    r = tail_bound_check(8)
    assert r.lhs == 1.0 and r.holds
    assert tail_bound_check(125).holds
    assert tail_bound_check(1000).holds
    with pytest.raises(ValueError):
        tail_bound_check(7)


def test_tail_sum_matches_real_threshold():
    # the integer test |2k-n|^3 >= 8 n^2 is |k - n/2| >= n^(2/3)
    for n in range(8, 300):
        direct = sum(math.comb(n, k) for k in range(n + 1) if abs(k - n / 2) >= n ** (2 / 3) - 1e-9)
        assert tail_sum(n) == direct, n


def test_parse_examples():
    assert parse_family("n=2\n10\n11\n") == Family.from_sets(2, [[1], [1, 2]])
    with pytest.raises(DuplicateSubsetError):
        parse_family("n=2\n10\n10\n")
    assert serialize_family(layer(3, 1)) == "n=3\n100\n010\n001\n"


def test_parse_errors_are_distinct():
    with pytest.raises(MissingHeaderError):
        parse_family("10\n")
    with pytest.raises(LineLengthError):
        parse_family("n=2\n101\n")
    with pytest.raises(BadCharacterError):
        parse_family("n=2\n1x\n")


def test_round_trip_1000():
    rng = random.Random(5)
    for _ in range(1000):
        n = rng.randint(1, 16)
        members = tuple({rng.randrange(1 << n) for _ in range(rng.randint(0, 60))})
        fam = Family(n, members)
        assert parse_family(serialize_family(fam)) == fam


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1)))))
def test_round_trip_property(arg):
    n, members = arg
    fam = Family(n, tuple(members))
    assert parse_family(serialize_family(fam)) == fam
    assert list(fam.members) == sorted(members, key=lambda x: (x.bit_count(), x))


def test_serialize_n0():
    assert parse_family(serialize_family(Family(0, ()))) == Family(0, ())
    with pytest.raises(ValueError):
        serialize_family(Family(0, (0,)))
