import math

import pytest

from q2lab.chains import chain_census
from q2lab.lattice import Family, binom, layer_masks
from q2lab.patterns import is_q2_free
from q2lab.search import (
    branch_and_bound_ex,
    brute_force_ex,
    conclusions_check,
    construct_conclusions_family,
    construct_two_middle_layers,
    search_order,
    theorem1_report,
    witness_sets,
)


def test_witness_sets_n2():
    assert witness_sets(2) == ((0, 1, 2, 3),)


def test_witness_sets_match_definition():
    from itertools import combinations
    from q2lab.patterns import Q2, contains_pattern
    for n in (2, 3):
        want = {w for w in combinations(range(1 << n), 4) if contains_pattern(Family(n, w), Q2)}
        assert set(witness_sets(n)) == want


def test_brute_force_small():
    assert [brute_force_ex(n).best_size for n in range(5)] == [1, 2, 3, 6, 10]
    r = brute_force_ex(2)
    assert r.proved_optimal and is_q2_free(r.best_family) is None


def test_bnb_matches_brute():
    for n in range(5):
        r = branch_and_bound_ex(n)
        assert r.proved_optimal
        assert r.best_size == brute_force_ex(n).best_size
        assert is_q2_free(r.best_family) is None and len(r.best_family) == r.best_size


def test_bnb_budget_returns_incumbent():
    r = branch_and_bound_ex(6, time_budget=0.5)
    assert not r.proved_optimal
    assert r.best_size >= 35 and is_q2_free(r.best_family) is None


def test_search_order_is_a_permutation():
    for n in range(6):
        assert sorted(search_order(n)) == list(range(1 << n))


def test_two_middle_layers():
    assert construct_two_middle_layers(2) == Family.from_sets(2, [[1], [2], [1, 2]])
    f = construct_two_middle_layers(4)
    assert len(f) == 10 and is_q2_free(f) is None
    assert len(construct_two_middle_layers(5)) == 20


def test_conclusions_family():
    g = construct_conclusions_family(4)
    T = [x for x in g.nonempty if x.bit_count() == 2]
    U = [x for x in g.nonempty if x.bit_count() == 3]
    assert sorted(T) == sorted([0b0011, 0b1100]) and len(U) == 4
    g = construct_conclusions_family(6)
    assert sum(x.bit_count() == 2 for x in g.nonempty) == 6
    assert sum(x.bit_count() == 3 for x in g.nonempty) == 18
    with pytest.raises(ValueError):
        construct_conclusions_family(5)


def test_conclusions_bound():
    assert conclusions_check(4).lower == 8
    assert conclusions_check(6).lower == 216
    for m in (4, 6, 8, 10):
        r = conclusions_check(m)
        assert r.holds and r.upsilon3 >= r.lower and 4 * r.upsilon3 >= math.factorial(m)


def test_theorem1_report():
    r = theorem1_report(4, 10)
    assert r.lower_ref == 12 and r.upper_ref == pytest.approx(13.699566)
    r = theorem1_report(2, 3)
    assert r.lower_ref == 4 and r.upper_ref == pytest.approx(4.566522)
    assert r.lower_ref < r.upper_ref
