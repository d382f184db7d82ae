"""Shared brute-force oracles and random generators for the test suite."""

import itertools
import random

from sympflag.linalg import Mat, Subspace, span_closure
from sympflag.partitions import Bipartition, Partition


def all_vectors(dim, p):
    return list(itertools.product(range(p), repeat=dim))


def brute_subspaces(dim, p, k):
    """All k-subspaces of F_p^dim by spanning-set closure (slow oracle)."""
    vecs = [v for v in all_vectors(dim, p) if any(v)]
    seen = set()
    for combo in itertools.combinations(vecs, k):
        s = Subspace.from_rows(list(combo), p, dim)
        if s.dim == k:
            seen.add(s)
    if k == 0:
        return {Subspace.zero(dim, p)}
    return seen


def random_matrix(rng, nrows, ncols, p):
    return Mat(
        tuple(tuple(rng.randrange(p) for _ in range(ncols)) for _ in range(nrows)),
        p,
        ncols=ncols,
    )


def random_invertible(rng, n, p):
    while True:
        m = random_matrix(rng, n, n, p)
        if m.rank() == n:
            return m


def random_subspace(rng, dim, p, k=None):
    if k is None:
        k = rng.randrange(dim + 1)
    return Subspace.from_rows(
        [tuple(rng.randrange(p) for _ in range(dim)) for _ in range(k)], p, dim
    )


def solve_right_inverse(m, p):
    from sympflag.linalg import solve

    cols = []
    n = m.nrows
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        cols.append(solve(m, e))
    return Mat(tuple(zip(*cols)), p, ncols=n)


def random_nilpotent(rng, dim, p):
    """Random nilpotent operator: a Jordan-block matrix conjugated randomly."""
    parts = []
    left = dim
    while left:
        s = rng.randint(1, left)
        parts.append(s)
        left -= s
    rows = [[0] * dim for _ in range(dim)]
    off = 0
    for s in parts:
        for t in range(s - 1):
            rows[off + t][off + t + 1] = 1
        off += s
    jmat = Mat(tuple(tuple(r) for r in rows), p, ncols=dim)
    g = random_invertible(rng, dim, p)
    ginv = solve_right_inverse(g, p)
    return g * jmat * ginv


def random_invariant_pair(rng, x, max_gens=3):
    """Random x-invariant subspaces u <= w."""
    dim = x.ncols
    p = x.p
    wvecs = [tuple(rng.randrange(p) for _ in range(dim)) for _ in range(rng.randint(0, max_gens))]
    w = span_closure(x, wvecs) if wvecs else Subspace.zero(dim, p)
    if rng.random() < 0.3:
        w = Subspace.full(dim, p)
    uvecs = []
    wall = list(w.vectors())
    for _ in range(rng.randint(0, max_gens)):
        uvecs.append(rng.choice(wall))
    u = span_closure(x, uvecs) if uvecs else Subspace.zero(dim, p)
    return w, u


def brute_fillings(shape: Bipartition, content):
    """All tableaux fillings with the given label multiset satisfying the
    row-strict / column-weak conditions, by raw placement."""
    labels = [i + 1 for i, c in enumerate(content) for _ in range(c)]
    boxes1 = [(r, c) for r, ln in enumerate(shape.mu.parts) for c in range(ln)]
    boxes2 = [(r, c) for r, ln in enumerate(shape.nu.parts) for c in range(ln)]
    nb1 = len(boxes1)
    out = set()
    for perm in set(itertools.permutations(labels)):
        f1 = {b: v for b, v in zip(boxes1, perm[:nb1])}
        f2 = {b: v for b, v in zip(boxes2, perm[nb1:])}
        ok = True
        for f, lam in ((f1, shape.mu.parts), (f2, shape.nu.parts)):
            for (r, c), v in f.items():
                if c + 1 < lam[r] and f[(r, c + 1)] <= v:
                    ok = False
                if r + 1 < len(lam) and c < lam[r + 1] and f[(r + 1, c)] < v:
                    ok = False
        if ok:
            t1 = tuple(tuple(f1[(r, c)] for c in range(ln)) for r, ln in enumerate(shape.mu.parts))
            t2 = tuple(tuple(f2[(r, c)] for c in range(ln)) for r, ln in enumerate(shape.nu.parts))
            out.add((t1, t2))
    return out
