import math
import random

import pytest

from q2lab.chains import census_through, chain_census
from q2lab.lattice import Family, subset
from q2lab.local import (
    LocalFamily,
    aux_graph,
    build_aux_graph,
    compress,
    extract_local,
    partition_tu,
    relabel_eta,
    star_lower_bound,
    ub3_upper_bound,
    upsilon,
    validate_local,
)
from q2lab.randgen import random_q2_free_family, random_valid_local


def local(m, *sets):
    return LocalFamily.from_sets(m, sets)


def test_extract_examples():
    f = Family.from_sets(3, [[1], [1, 2], [1, 3]])
    g = extract_local(f, subset(1))
    assert g.m == 2 and g.family == Family.from_sets(2, [[], [1], [2]])
    assert g.ground == (2, 3)
    assert extract_local(Family.from_sets(3, [[2]]), subset(2)).family.members == (0,)
    with pytest.raises(ValueError):
        extract_local(f, subset(1, 2))


def test_validate_examples():
    assert validate_local(local(2, [1], [1, 2], [2])) == (subset(1), subset(2), subset(1, 2))
    assert validate_local(local(2, [1], [1, 2])) is None
    assert validate_local(local(3, [1], [2, 3], [1, 2, 3])) is not None


def test_partition_examples():
    tu = partition_tu(local(2, [1], [1, 2]))
    assert tu.T.members == (subset(1),) and tu.U.members == (subset(1, 2),)
    tu = partition_tu(local(3))
    assert not tu.T.members and not tu.U.members


def test_relabel_small():
    r = relabel_eta(local(3, [2]))
    assert r.eta == 2 and r.permutation[1] == 3
    r = relabel_eta(local(3, [1, 2]))
    assert r.eta == 3 and r.permutation == (1, 2, 3)


def test_relabel_nine_points_four_singletons():
    # m = 9 with singleton minimal sets {2}, {5}, {7}, {9}, so eta = 5
    g = local(9, [2], [5], [7], [9], [1, 3], [4, 6], [3, 8], [1, 3, 4], [2, 4])
    assert validate_local(g) is None
    r = relabel_eta(g)
    assert r.eta == 5
    assert r.permutation == (1, 6, 2, 3, 7, 4, 8, 5, 9)
    st = build_aux_graph(r.local)
    assert (st.m, st.eta) == (9, 5)
    assert sorted(st.edges) == [(1, 2), (2, 5), (3, 4)]
    assert chain_census(r.local.family) == chain_census(g.family)
    with pytest.raises(ValueError):
        build_aux_graph(g)


def test_compress_example():
    g = compress(local(3, [1], [1, 2, 3]))
    assert g.family == Family.from_sets(3, [[], [1], [1, 2], [1, 3]])


def test_star_examples():
    assert star_lower_bound(local(4, [1, 2])).bound == 0
    b = star_lower_bound(local(4, [1], [2], [3], [4]))
    assert aux_graph(local(4, [1], [2], [3], [4])).eta == 0 and b.bound == 0 and b.holds


def test_ub3_empty():
    b = ub3_upper_bound(local(5))
    assert b.actual == 0 and b.holds


def test_local_scaling_identity():
    rng = random.Random(31)
    for _ in range(300):
        n = rng.randint(2, 7)
        f = random_q2_free_family(rng, n)
        for s in f.minimal():
            g = extract_local(f, s)
            assert validate_local(g) is None
            k = math.factorial(s.bit_count())
            assert census_through(f, s)[: g.m + 2] == [k * c for c in chain_census(g.family).counts]


def test_compression_and_bounds_random():
    rng = random.Random(32)
    for _ in range(300):
        g = random_valid_local(rng, rng.randint(4, 9))
        g2 = compress(g)
        assert validate_local(g2) is None
        assert upsilon(g, 3) <= upsilon(g2, 3)
        assert star_lower_bound(g).holds
        assert ub3_upper_bound(g).holds
