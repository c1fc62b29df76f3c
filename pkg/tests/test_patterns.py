import random

import pytest
from hypothesis import given, settings, strategies as st

from q2lab.lattice import Family, is_proper_subset, layer_masks, subset
from q2lab.patterns import (
    Q2,
    NotQ2FreeError,
    PosetPattern,
    Q2FreeBuilder,
    assert_q2_free,
    builtin_pattern,
    contains_pattern,
    is_q2_free,
    parse_pattern,
    serialize_pattern,
)


def fam(n, *sets):
    return Family.from_sets(n, sets)


def test_contains_q2_itself():
    f = fam(2, [], [1], [2], [1, 2])
    emb = contains_pattern(f, Q2)
    assert emb == {1: 0, 2: subset(1), 3: subset(2), 4: subset(1, 2)}


def test_three_members_never_contain_q2():
    assert contains_pattern(fam(3, [1], [1, 2], [1, 2, 3]), Q2) is None


def test_four_chain_contains_q2():
    f = fam(3, [], [1], [1, 2], [1, 2, 3])
    assert contains_pattern(f, Q2) is not None
    assert is_q2_free(f) is not None


def test_two_middle_layers_are_free():
    f = Family(4, layer_masks(4, 2) + layer_masks(4, 3))
    assert is_q2_free(f) is None
    assert contains_pattern(f, Q2) is None


def test_witness_is_a_real_q2():
    w = is_q2_free(fam(2, [], [1], [2], [1, 2]))
    assert w is not None
    assert is_proper_subset(w.a, w.b) and is_proper_subset(w.a, w.c)
    assert is_proper_subset(w.b, w.d) and is_proper_subset(w.c, w.d)
    with pytest.raises(NotQ2FreeError):
        assert_q2_free(fam(2, [], [1], [2], [1, 2]))


def test_specialized_check_agrees_on_every_family_of_q3():
    for code in range(1 << 8):
        f = Family(3, tuple(x for x in range(8) if code >> x & 1))
        assert (is_q2_free(f) is None) == (contains_pattern(f, Q2) is None), code


def test_specialized_check_agrees_on_every_family_of_q4():
    for code in range(1 << 16):
        f = Family(4, tuple(x for x in range(16) if code >> x & 1))
        assert (is_q2_free(f) is None) == (contains_pattern(f, Q2) is None), code


def test_specialized_check_agrees_on_random_families():
    rng = random.Random(3)
    for _ in range(10_000):
        n = rng.randint(1, 8)
        f = Family(n, tuple({rng.randrange(1 << n) for _ in range(rng.randint(0, 12))}))
        assert (is_q2_free(f) is None) == (contains_pattern(f, Q2) is None)


@settings(max_examples=300)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1)))))
def test_builder_agrees_with_check(arg):
    n, members = arg
    b = Q2FreeBuilder(n)
    for x in sorted(members):
        before = b.family()
        added = b.add(x)
        after = Family(n, before.members + (x,))
        assert added == (is_q2_free(after) is None)
    assert is_q2_free(b.family()) is None


def test_pattern_text_round_trip():
    for name in ("q2", "v2", "butterfly", "chain3"):
        p = builtin_pattern(name)
        q = parse_pattern(serialize_pattern(p))
        assert (q.size, q.relations) == (p.size, p.relations)


def test_pattern_validation():
    with pytest.raises(ValueError):
        PosetPattern(2, ((1, 2), (2, 1)))
    with pytest.raises(ValueError):
        PosetPattern(2, ((1, 3),))
    with pytest.raises(KeyError):
        builtin_pattern("nope")


def test_chain_and_butterfly():
    f = fam(3, [1], [2], [1, 2], [1, 2, 3])
    assert contains_pattern(f, builtin_pattern("chain3")) is not None
    assert contains_pattern(f, builtin_pattern("chain4")) is None
    g = fam(3, [1], [2], [1, 2, 3], [1, 2])
    assert contains_pattern(g, builtin_pattern("butterfly")) is not None
    assert contains_pattern(fam(3, [1], [2], [1, 2]), builtin_pattern("butterfly")) is None
