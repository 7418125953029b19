import math

import pytest

from finmulticat import perms


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_group_size(n):
    group = set(perms.all_perms(n))
    assert len(group) == math.factorial(n)
    assert perms.identity(n) in group


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_compose_apply(n):
    items = tuple(range(100, 100 + n))
    for p in perms.all_perms(n):
        for q in perms.all_perms(n):
            # apply is an action: (p.q)(a) = p(q(a))
            assert perms.apply_to(perms.compose(p, q), items) == \
                perms.apply_to(p, perms.apply_to(q, items))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_apply_places_entries(n):
    items = tuple(range(n))
    for p in perms.all_perms(n):
        out = perms.apply_to(p, items)
        assert all(out[p[i]] == items[i] for i in range(n))


def test_identity_detection():
    assert perms.is_identity(())
    assert perms.is_identity((0, 1, 2))
    assert not perms.is_identity((1, 0))


def test_inverse():
    for p in perms.all_perms(4):
        assert perms.compose(p, perms.inverse(p)) == perms.identity(4)
        assert perms.compose(perms.inverse(p), p) == perms.identity(4)


def test_transpositions_generate():
    # adjacent transpositions only
    gens = set(perms.transpositions(4))
    assert len(gens) == 3
    closure = set(gens) | {perms.identity(4)}
    grew = True
    while grew:
        grew = False
        for p in list(closure):
            for t in gens:
                q = perms.compose(t, p)
                if q not in closure:
                    closure.add(q)
                    grew = True
    assert len(closure) == 24


def test_block_permutes_whole_segments():
    # blocks of sizes (2, 1) swapped: the length-2 segment lands after the
    # length-1 segment, order inside each segment kept
    p = (1, 0)
    big = perms.block(p, (2, 1))
    assert perms.apply_to(big, ("a", "b", "c")) == ("c", "a", "b")


def test_direct_sum():
    s = perms.direct_sum([(1, 0), (0, 1, 2)])
    assert perms.apply_to(s, (1, 2, 3, 4, 5)) == (2, 1, 3, 4, 5)
    assert perms.direct_sum([]) == ()


@pytest.mark.parametrize("sizes", [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)])
def test_block_compatible_with_composition(sizes):
    n = len(sizes)
    for p in perms.all_perms(n):
        for q in perms.all_perms(n):
            qsizes = perms.apply_to(q, sizes)
            lhs = perms.block(perms.compose(p, q), sizes)
            rhs = perms.compose(perms.block(p, qsizes), perms.block(q, sizes))
            assert lhs == rhs
