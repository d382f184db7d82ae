import itertools
from math import comb

import pytest

from helpers import brute_fillings
from sympflag.partitions import (
    NOT_NESTED,
    Bipartition,
    Bitableau,
    Composition,
    Partition,
    bip,
    bitableau_to_sequence,
    d_alpha,
    enumerate_bipartitions,
    enumerate_partitions,
    enumerate_semistandard,
    is_semistandard,
    is_vertical_strip_removal,
    n_stat,
    semistandard_chains,
    sequence_to_bitableau,
    vertical_strip_children,
)

P = Partition


def test_partition_validation():
    with pytest.raises(ValueError):
        P((1, 2))
    with pytest.raises(ValueError):
        P((2, -1))
    assert P((3, 1, 0, 0)).parts == (3, 1)  # trailing zeros never stored


def test_add():
    assert (P((3, 1)) + P((2, 2, 1))).parts == (5, 3, 1)
    assert (P(()) + P((4, 2))).parts == (4, 2)
    assert (P((1, 1)) + P((1,))).parts == (2, 1)


def test_union():
    assert P((2, 1)).union(P((2,))).parts == (2, 2, 1)
    assert P((5, 3)).union(P(())).parts == (5, 3)
    assert P((5, 3, 1)).union(P((5, 3, 1))).parts == (5, 5, 3, 3, 1, 1)


def brute_transpose(lam):
    """Transpose by explicitly building the set of boxes."""
    boxes = {(i, j) for i, part in enumerate(lam.parts) for j in range(part)}
    flipped = {(j, i) for (i, j) in boxes}
    rows = []
    i = 0
    while (i, 0) in flipped:
        rows.append(sum(1 for j in range(len(boxes) + 1) if (i, j) in flipped))
        i += 1
    return tuple(rows)


def test_transpose():
    assert P((1, 1, 1)).transpose().parts == (3,)
    assert P((2, 2, 1)).transpose().parts == brute_transpose(P((2, 2, 1))) == (3, 2)
    assert P(()).transpose().parts == ()
    for n in range(13):
        for lam in enumerate_partitions(n):
            assert lam.transpose().transpose() == lam
            assert lam.transpose().parts == brute_transpose(lam)


def test_sizes_additive():
    for a in enumerate_partitions(5):
        for b in enumerate_partitions(4):
            assert (a + b).size == a.size + b.size
            assert a.union(b).size == a.size + b.size


def test_n_stat():
    for n in range(9):
        assert n_stat(P((1,) * n)) == n * (n - 1) // 2
    assert n_stat(P((2, 1))) == 1
    for n2 in range(4):
        for n1 in range(4):
            lam = P((2,) * n2 + (1,) * n1)
            assert n_stat(lam) == (n2 + n1) * (n2 + n1 - 1) // 2 + n2 * (n2 - 1) // 2


def test_n_stat_transpose_identity():
    # N(lam) equals the sum of binom(column height, 2)
    for n in range(13):
        for lam in enumerate_partitions(n):
            assert n_stat(lam) == sum(comb(c, 2) for c in lam.transpose().parts)


def test_d_alpha():
    assert d_alpha(bip((), (2, 1)), Composition((1, 2))) == 4
    for b in enumerate_bipartitions(3):
        alpha = Composition((1,) * 3)
        assert d_alpha(b, alpha) == 2 * n_stat(b.mu + b.nu) + b.nu.size
    assert d_alpha(bip((1, 1), ()), Composition((2,))) == 1
    with pytest.raises(ValueError):
        d_alpha(bip((1,), ()), Composition((2,)))


def test_enumerate_bipartitions():
    assert enumerate_bipartitions(0) == [bip((), ())]
    assert len(enumerate_bipartitions(2)) == 5
    # brute-force double loop over partition pairs
    def brute(n):
        out = set()
        for a in range(n + 1):
            for mu in enumerate_partitions(a):
                for nu in enumerate_partitions(n - a):
                    out.add((mu.parts, nu.parts))
        return out

    got = enumerate_bipartitions(3)
    assert len(got) == 10
    assert {(b.mu.parts, b.nu.parts) for b in got} == brute(3)
    # deterministic order: lexicographic on (|mu|, mu, nu)
    keys = [b.sort_key() for b in got]
    assert keys == sorted(keys)


def test_sequence_to_bitableau_examples():
    # single growth step: a column of two 1s in the first diagram
    t = sequence_to_bitableau((bip((), ()), bip((1, 1), ())))
    assert t.fill1 == ((1,), (1,)) and t.fill2 == ()
    # non-nested chain
    assert sequence_to_bitableau((bip((), ()), bip((), (1,)), bip((1, 1), ()))) is NOT_NESTED
    # nested but not semistandard
    t = sequence_to_bitableau((bip((), ()), bip((), (2,)), bip((), (2, 1))))
    assert t.fill2 == ((1, 1), (2,))
    assert not is_semistandard(t, Composition((1, 2)))


def test_bitableau_roundtrip():
    for b in enumerate_bipartitions(4):
        for alpha_parts in [(4,), (2, 2), (1, 3), (1, 1, 2), (1, 1, 1, 1)]:
            for chain in semistandard_chains(b, Composition(alpha_parts)):
                t = sequence_to_bitableau(chain)
                assert t is not NOT_NESTED
                assert bitableau_to_sequence(t) == chain


def test_is_semistandard_examples():
    t = sequence_to_bitableau((bip((), ()), bip((1, 1), ())))
    assert is_semistandard(t, Composition((2,)))
    t = Bitableau(bip((), (2, 1)), (), ((1, 1), (2,)))
    assert not is_semistandard(t, Composition((1, 2)))
    t = Bitableau(bip((), (2,)), (), ((1, 1),))
    assert not is_semistandard(t, Composition((2,)))
    with pytest.raises(ValueError):
        is_semistandard(t, Composition((1, 1)))


def test_enumerate_semistandard_examples():
    got = enumerate_semistandard(bip((1, 1), ()), Composition((2,)))
    assert len(got) == 1 and got[0].fill1 == ((1,), (1,))
    got = enumerate_semistandard(bip((), (2, 1)), Composition((1, 2)))
    assert len(got) == 1
    assert got[0].fill2 == ((1, 2), (1,))


def test_enumerate_semistandard_against_brute_force():
    for n, alphas in [(3, [(3,), (1, 2), (2, 1), (1, 1, 1)]), (4, [(2, 2), (1, 3), (1, 1, 2)])]:
        for b in enumerate_bipartitions(n):
            for aparts in alphas:
                alpha = Composition(aparts)
                got = enumerate_semistandard(b, alpha)
                expected = brute_fillings(b, tuple(reversed(aparts)))
                assert {(t.fill1, t.fill2) for t in got} == expected
                for t in got:
                    assert is_semistandard(t, alpha)


def test_semistandard_chain_steps_are_vertical_strips():
    revalpha = (1, 2, 1)
    alpha = Composition(tuple(reversed(revalpha)))
    for b in enumerate_bipartitions(4):
        for chain in semistandard_chains(b, alpha):
            for t in range(1, len(chain)):
                k = chain[t].size - chain[t - 1].size
                assert is_vertical_strip_removal(chain[t], chain[t - 1], k)


def test_vertical_strip_removal():
    n, k = 5, 2
    assert is_vertical_strip_removal(bip((), (1,) * n), bip((), (1,) * (n - k)), k)
    assert not is_vertical_strip_removal(bip((1,) * n, ()), bip((), (1,) * (n - k)), k)
    assert not is_vertical_strip_removal(bip((), (2, 2)), bip((), (2,)), 2)


def test_vertical_strip_children_counts():
    kids = vertical_strip_children(bip((2, 1), (1,)), 2)
    for child in kids:
        assert is_vertical_strip_removal(bip((2, 1), (1,)), child, 2)
    # brute force: all sub-bipartitions at distance 2 that are strips
    all_subs = [
        c
        for c in enumerate_bipartitions(2)
        if is_vertical_strip_removal(bip((2, 1), (1,)), c, 2)
    ]
    assert sorted(k.sort_key() for k in kids) == sorted(c.sort_key() for c in all_subs)
