import random

import pytest

from helpers import random_invariant_pair, random_nilpotent
from sympflag.jordan import (
    exotic_jordan_type,
    jordan_subquotient_direct,
    jordan_subquotient_formula,
    jordan_type,
    predict_types_general_l,
    recover_bipartition,
)
from sympflag.linalg import Mat, Subspace, kernel, restrict_operator
from sympflag.partitions import Partition, bip, enumerate_bipartitions
from sympflag.symplectic import enumerate_isotropic, normal_basis, quotient_point


def test_jordan_type_basic():
    assert jordan_type(Mat.zero(5, 5, 2)).parts == (1,) * 5
    j3 = Mat(((0, 1, 0), (0, 0, 1), (0, 0, 0)), 3)
    assert jordan_type(j3).parts == (3,)
    with pytest.raises(ValueError):
        jordan_type(Mat.identity(2, 3))


def test_jordan_type_normal_basis():
    pt = normal_basis(bip((3, 1), (2, 2, 1)), 3)
    assert jordan_type(pt.x).parts == (5, 5, 3, 3, 1, 1)
    for p in (2, 3):
        for b in enumerate_bipartitions(4):
            lam = b.mu + b.nu
            assert jordan_type(normal_basis(b, p).x) == lam.union(lam)


def test_subquotient_direct_edges():
    p = 2
    x = random_nilpotent(random.Random(0), 5, p)
    full = Subspace.full(5, p)
    zero = Subspace.zero(5, p)
    assert jordan_subquotient_direct(x, full, zero) == jordan_type(x)
    assert jordan_subquotient_direct(x, full, full).parts == ()


def test_quotient_by_line_example():
    # v spans a line in the kernel of x = 0 on a 4-dim space; the middle
    # subquotient F1^perp/F1 is 2-dimensional with trivial operator
    pt = normal_basis(bip((1, 1), ()), 2)
    f1 = Subspace.from_rows([pt.v], 2, 4)
    qpt, _ = quotient_point(pt, f1)
    assert jordan_type(qpt.x).parts == (1, 1)


def test_formula_equals_direct_random():
    rng = random.Random(42)
    checked = 0
    while checked < 400:
        p = rng.choice((2, 3))
        dim = rng.randint(1, 8)
        x = random_nilpotent(rng, dim, p)
        w, u = random_invariant_pair(rng, x)
        if not w.contains(u):
            u = u.intersect(w)
        assert jordan_subquotient_formula(x, w, u) == jordan_subquotient_direct(x, w, u)
        checked += 1


def test_formula_covers_quot_and_res_shapes():
    rng = random.Random(9)
    for p in (2, 3):
        for _ in range(40):
            dim = rng.randint(2, 7)
            x = random_nilpotent(rng, dim, p)
            full = Subspace.full(dim, p)
            zero = Subspace.zero(dim, p)
            # u = F inside ker x, w = V
            kx = kernel(x)
            f = kx.intersect(
                Subspace.from_rows(
                    [tuple(rng.randrange(p) for _ in range(dim)) for _ in range(2)], p, dim
                )
            )
            assert jordan_subquotient_formula(x, full, f) == jordan_subquotient_direct(
                x, full, f
            )
            # w = F containing Im x, u = 0
            im = Subspace(x.transpose(), ambient=dim)
            g = im.sum(
                Subspace.from_rows([tuple(rng.randrange(p) for _ in range(dim))], p, dim)
            )
            assert jordan_subquotient_formula(x, g, zero) == jordan_subquotient_direct(
                x, g, zero
            )


def test_exotic_jordan_type_roundtrip_small():
    for p in (2, 3):
        for n in range(4):
            for b in enumerate_bipartitions(n):
                assert exotic_jordan_type(normal_basis(b, p)) == b


def test_exotic_jordan_type_zero():
    pt = normal_basis(bip((), (1, 1, 1)), 2)
    assert exotic_jordan_type(pt) == bip((), (1, 1, 1))
    assert pt.x.is_zero() and not any(pt.v)


def test_recover_bipartition_example():
    lam = Partition((5, 5, 3, 3, 1, 1))
    lam2 = Partition((5, 3, 3, 2, 1, 1))
    assert recover_bipartition(lam, lam2) == bip((3, 1), (2, 2, 1))
    with pytest.raises(ValueError):
        recover_bipartition(Partition((2, 1)), Partition((2,)))


def test_predict_types_x_zero():
    pt = normal_basis(bip((), (1, 1, 1)), 2)
    sp = pt.space
    for k in range(4):
        for f in enumerate_isotropic(sp, k):
            quot, sub = predict_types_general_l(pt.x, f, sp)
            assert quot.parts == (1,) * (6 - k)
            assert sub.parts == (1,) * (6 - 2 * k)


def test_predict_types_matches_direct_x2():
    for b in [bip((), (2, 1)), bip((1,), (1, 1)), bip((2, 1), ())]:
        pt = normal_basis(b, 2)
        sp = pt.space
        kx = kernel(pt.x)
        full = Subspace.full(sp.dim, 2)
        for k in range(kx.dim + 1):
            for f in enumerate_isotropic(sp, k, within=kx):
                quot, sub = predict_types_general_l(pt.x, f, sp)
                assert quot == jordan_subquotient_direct(pt.x, full, f)
                assert sub == jordan_subquotient_direct(pt.x, sp.perp(f), f)


def test_predict_types_matches_direct_l3():
    b = bip((1,), (2,))
    pt = normal_basis(b, 2)
    sp = pt.space
    kx = kernel(pt.x)
    full = Subspace.full(sp.dim, 2)
    for k in range(kx.dim + 1):
        for f in enumerate_isotropic(sp, k, within=kx):
            quot, sub = predict_types_general_l(pt.x, f, sp)
            assert quot == jordan_subquotient_direct(pt.x, full, f)
            assert sub == jordan_subquotient_direct(pt.x, sp.perp(f), f)
