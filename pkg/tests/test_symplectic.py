import itertools
import random

import pytest

from helpers import random_subspace
from sympflag.linalg import Mat, Subspace, kernel
from sympflag.partitions import bip, enumerate_bipartitions
from sympflag.symplectic import (
    ExoticPoint,
    SymplecticSpace,
    degenerate_gram,
    enumerate_isotropic,
    grass_perp_dim,
    induced_form,
    is_self_adjoint,
    normal_basis,
    normal_basis_diagram,
    perp_pp,
    quotient_point,
    standard_space,
)


def test_standard_space_valid():
    for p in (2, 3, 5):
        sp = standard_space(2, p)
        assert sp.dim == 4
        assert sp.form.rank() == 4
    with pytest.raises(ValueError):
        SymplecticSpace(Mat(((0, 1), (1, 0)), 3))  # symmetric, not skew
    with pytest.raises(ValueError):
        SymplecticSpace(Mat(((1, 1), (1, 1)), 2))  # nonzero diagonal at p=2


def test_normal_basis_small():
    pt = normal_basis(bip((1, 1), ()), 2)
    assert pt.space.dim == 4
    assert pt.x.is_zero()
    assert pt.v == (1, 1, 0, 0)
    # dual pairing: <v_{11}, v*_{11}> = 1, basis order v11 v21 v*21 v*11
    assert pt.space.pair((1, 0, 0, 0), (0, 0, 0, 1)) == 1
    assert pt.space.pair((0, 1, 0, 0), (0, 0, 1, 0)) == 1

    empty = normal_basis(bip((), ()), 3)
    assert empty.space.dim == 0


def test_normal_basis_example_boxes():
    pt = normal_basis(bip((3, 1), (2, 2, 1)), 5)
    assert pt.space.dim == 18
    # v = v_{1,3} + v_{2,1}: positions 2 and 5 in the v block
    v = [0] * 18
    v[2] = v[5] = 1
    assert pt.v == tuple(v)
    # x moves one box left: x v_{1,3} = v_{1,2}
    e = [0] * 18
    e[2] = 1
    assert pt.x.apply(tuple(e))[1] == 1


def test_normal_basis_is_self_adjoint_everywhere():
    for p in (2, 3):
        for b in enumerate_bipartitions(3):
            pt = normal_basis(b, p)
            assert is_self_adjoint(pt.x, pt.space)


def test_exotic_point_validation():
    sp = standard_space(1, 3)
    with pytest.raises(ValueError):
        ExoticPoint(sp, Mat.identity(2, 3), (0, 0))  # not nilpotent
    bad = Mat(((0, 1), (0, 0)), 3)
    assert not is_self_adjoint(bad, sp) or ExoticPoint(sp, bad, (0, 0))


def test_grass_perp_dim():
    assert grass_perp_dim(2, 4, 2) == 3
    for n in (2, 3):
        assert grass_perp_dim(1, 2 * n, n) == 2 * n - 1
    # third term vanishes at k = r and k = r + 1
    assert grass_perp_dim(2, 5, 2) == 2 * 3 - 1
    assert grass_perp_dim(3, 5, 2) == 3 * 2 - 3 + 0
    with pytest.raises(ValueError):
        grass_perp_dim(5, 6, 2)
    with pytest.raises(ValueError):
        grass_perp_dim(1, 4, 3)


def test_enumerate_isotropic_lines_and_lagrangians():
    sp = standard_space(2, 2)
    lines = list(enumerate_isotropic(sp, 1))
    assert len(lines) == 15  # every line is isotropic for an alternating form
    assert list(enumerate_isotropic(sp, 3)) == []
    lag = list(enumerate_isotropic(sp, 2))
    # brute force: spans of pairwise-pairing-zero independent pairs
    brute = set()
    vecs = [v for v in itertools.product(range(2), repeat=4) if any(v)]
    for u, w in itertools.combinations(vecs, 2):
        s = Subspace.from_rows([u, w], 2, 4)
        if s.dim == 2 and sp.pair(u, w) == 0:
            brute.add(s)
    assert set(lag) == brute
    assert len(lag) == 15


def test_isotropic_perp_dims():
    sp = standard_space(2, 3)
    for k in range(3):
        for f in enumerate_isotropic(sp, k):
            fp = sp.perp(f)
            assert fp.contains(f)
            assert fp.dim == 4 - k


def test_induced_form():
    pt = normal_basis(bip((), (2,)), 3)
    dom, gram = induced_form(pt.x, pt.space, 0)
    assert dom.dim == 4
    dom1, gram1 = induced_form(pt.x, pt.space, 1)
    assert dom1.dim == 2
    assert gram1.rank() == 2
    z = normal_basis(bip((), (1, 1)), 3)  # x = 0
    dom0, _ = induced_form(z.x, z.space, 1)
    assert dom0.dim == 0


def test_perp_pp_props():
    pt = normal_basis(bip((), (2, 2)), 3)
    sp = pt.space
    dom, _ = induced_form(pt.x, sp, 1)
    assert perp_pp(Subspace.zero(sp.dim, 3), pt.x, sp, 1) == dom
    rng = random.Random(1)
    for _ in range(30):
        w = random_subspace(rng, dom.dim, 3)
        wa = Subspace.from_rows(
            [dom.basis.transpose().apply(c) for c in w.basis.rows], 3, sp.dim
        )
        ww = perp_pp(perp_pp(wa, pt.x, sp, 1), pt.x, sp, 1)
        assert ww == wa


def test_f_rad_lemma():
    # x^j(F^perp) equals the induced-form perp of F cap Im(x^j)
    rng = random.Random(4)
    for p in (2, 3):
        for shape in [bip((), (2, 2)), bip((1,), (2, 1)), bip((), (3, 1)), bip((2,), (2,))]:
            pt = normal_basis(shape, p)
            sp = pt.space
            for j in (1, 2):
                dom, _ = induced_form(pt.x, sp, j)
                xj = pt.x**j
                for _ in range(25):
                    f = random_subspace(rng, sp.dim, p)
                    lhs = sp.perp(f).image_under(xj)
                    rhs = perp_pp(f.intersect(dom), pt.x, sp, j)
                    assert lhs == rhs


def test_ker_perp_lemma():
    for p in (2, 3):
        for b in enumerate_bipartitions(3):
            pt = normal_basis(b, p)
            power = Mat.identity(pt.space.dim, p)
            for j in range(4):
                im = Subspace(power.transpose(), ambient=pt.space.dim)
                assert im == pt.space.perp(kernel(power))
                power = power * pt.x


def test_quotient_point():
    pt = normal_basis(bip((), (2, 1)), 2)
    cons = pt.constraint_space()
    f = next(iter(enumerate_isotropic(pt.space, 1, within=cons)))
    qpt, ctx = quotient_point(pt, f)
    assert qpt.space.dim == pt.space.dim - 2
    assert is_self_adjoint(qpt.x, qpt.space)
    # lifted subspaces sit between F and F^perp
    sub = Subspace.from_rows([qpt.v], qpt.p, qpt.space.dim)
    lifted = ctx.lift_subspace(sub)
    assert pt.space.perp(f).contains(lifted) and lifted.contains(f)


def test_diagram_smoke():
    text = normal_basis_diagram(bip((3, 1), (2, 2, 1)))
    assert "v13" in text and "|" in text
