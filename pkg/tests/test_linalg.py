import itertools
import json
import random

import pytest

from helpers import brute_subspaces, random_matrix, random_subspace
from sympflag.linalg import (
    Mat,
    Subspace,
    count_isotropic_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
    image,
    kernel,
    nullspace_matrix,
    restrict_operator,
    rref,
    solve,
)
from sympflag.symplectic import degenerate_gram, standard_space


def test_rref_basic():
    eye = Mat.identity(3, 5)
    assert rref(eye) == eye
    z = Mat.zero(2, 3, 2)
    assert rref(z).nrows == 0
    m = Mat(((1, 1), (1, 1)), 2)
    assert rref(m).rows == ((1, 1),)


def test_rref_idempotent_and_canonical():
    rng = random.Random(7)
    for p in (2, 3, 5):
        for _ in range(40):
            m = random_matrix(rng, rng.randint(0, 4), rng.randint(1, 5), p)
            e = rref(m)
            assert rref(e) == e
            # span invariance under random row mixing
            rows = list(m.rows)
            rng.shuffle(rows)
            if rows and rng.random() < 0.8:
                c = rng.randrange(1, p)
                i, j = rng.randrange(len(rows)), rng.randrange(len(rows))
                if i != j:
                    rows[i] = tuple((a + c * b) % p for a, b in zip(rows[i], rows[j]))
            assert rref(Mat(tuple(rows), p, ncols=m.ncols)) == e


def test_kernel_image():
    z4 = Mat.zero(4, 4, 2)
    assert kernel(z4).dim == 4
    assert image(z4).dim == 0
    # two nilpotent 2-blocks
    j22 = Mat(((0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)), 2)
    assert kernel(j22).dim == 2
    assert image(j22).dim == 2


def test_rank_nullity_random():
    rng = random.Random(3)
    for p in (2, 3):
        for _ in range(50):
            m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), p)
            assert m.rank() + kernel(m).dim == m.ncols


def test_solve():
    rng = random.Random(11)
    for p in (2, 3, 5):
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), p)
            x = tuple(rng.randrange(p) for _ in range(m.ncols))
            b = m.apply(x)
            got = solve(m, b)
            assert got is not None and m.apply(got) == b
    assert solve(Mat.zero(2, 2, 3), (1, 0)) is None


def test_sum_intersect():
    p = 2
    a = Subspace.from_rows([(1, 0)], p, 2)
    b = Subspace.from_rows([(0, 1)], p, 2)
    zero = Subspace.zero(2, p)
    full = Subspace.full(2, p)
    assert a.sum(zero) == a
    assert a.intersect(full) == a
    assert a.sum(b) == full
    assert a.intersect(b) == zero
    with pytest.raises(ValueError):
        a.sum(Subspace.zero(3, p))


def test_modular_law_dims():
    rng = random.Random(5)
    for p in (2, 3):
        for _ in range(100):
            d = rng.randint(1, 5)
            a = random_subspace(rng, d, p)
            b = random_subspace(rng, d, p)
            assert a.sum(b).dim + a.intersect(b).dim == a.dim + b.dim
            assert a.sum(b).contains(a) and a.contains(a.intersect(b))


def test_perp():
    sp = standard_space(2, 3)
    full = Subspace.full(4, 3)
    zero = Subspace.zero(4, 3)
    assert zero.perp(sp.form) == full
    assert full.perp(sp.form) == zero
    rng = random.Random(9)
    for _ in range(100):
        f = random_subspace(rng, 4, 3)
        pf = f.perp(sp.form)
        assert pf.dim == 4 - f.dim
        assert pf.perp(sp.form) == f


def test_restrict_operator():
    p = 3
    x = Mat(((0, 1, 0), (0, 0, 1), (0, 0, 0)), p)  # one nilpotent 3-block
    full = Subspace.full(3, p)
    zero = Subspace.zero(3, p)
    assert restrict_operator(x, full, zero).rows == x.rows
    assert restrict_operator(x, full, full).nrows == 0
    k1 = kernel(x)
    k2 = kernel(x * x)
    ind = restrict_operator(x, k2, k1)
    assert ind.nrows == 1 and ind.is_zero()
    with pytest.raises(ValueError):
        restrict_operator(x, k1, Subspace.from_rows([(0, 0, 1)], p, 3))


def test_enumerate_subspaces_counts():
    got = list(enumerate_subspaces(4, 2, 2))
    assert len(got) == 35
    assert set(got) == brute_subspaces(4, 2, 2)
    assert len(set(got)) == 35
    assert list(enumerate_subspaces(3, 0, 5)) == [Subspace.zero(3, 5)]
    assert list(enumerate_subspaces(3, 3, 2)) == [Subspace.full(3, 2)]
    for p in (2, 3):
        for d in range(0, 6):
            for k in range(0, d + 1):
                n = sum(1 for _ in enumerate_subspaces(d, k, p))
                assert n == gaussian_binomial(d, k, p)


def test_enumerate_subspaces_within():
    p = 2
    w = Subspace.from_rows([(1, 0, 0, 1), (0, 1, 1, 0)], p, 4)
    got = list(enumerate_subspaces(4, 1, p, within=w))
    assert len(got) == gaussian_binomial(2, 1, p)
    for s in got:
        assert w.contains(s)


def test_vectorized_isotropic_count_vs_filter():
    for p in (2, 3):
        for d, r in [(2, 1), (3, 1), (4, 2), (4, 1), (5, 2), (5, 0)]:
            g = degenerate_gram(d, r, p)
            for k in range(0, d + 1):
                brute = 0
                for s in enumerate_subspaces(d, k, p):
                    rows = s.basis.rows
                    pair = lambda u, w: sum(
                        a * b for a, b in zip(u, g.apply(w))
                    ) % p
                    if all(pair(u, w) == 0 for u in rows for w in rows):
                        brute += 1
                assert count_isotropic_subspaces(k, p, g) == brute


def test_mat_json_roundtrip():
    m = Mat(((1, 2, 0), (0, 1, 4)), 5)
    d = json.loads(json.dumps(m.to_json()))
    assert Mat.from_json(d) == m
