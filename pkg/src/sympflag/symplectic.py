"""Symplectic spaces over F_p, self-adjoint nilpotent pairs and their
canonical representatives.

A self-adjoint operator satisfies x^T J = J x together with diag(Jx) = 0;
the diagonal condition is implied at odd p (it encodes <xv,v> = 0, which
over a field of characteristic zero follows from <xv,v> = <v,xv> =
-<xv,v>) and is what keeps characteristic 2 honest, exactly parallel to
requiring alternating rather than merely skew forms.
"""

from __future__ import annotations

from .linalg import (
    Mat,
    Subquotient,
    Subspace,
    gaussian_binomial,
    kernel,
    kernel_power_dims,
    nullspace_matrix,
    solve,
    enumerate_subspaces,
)
from .partitions import Bipartition, Partition


class SymplecticSpace:
    """F_p^{2n} with a nondegenerate alternating form."""

    __slots__ = ("p", "dim", "form")

    def __init__(self, form: Mat):
        self.form = form
        self.p = form.p
        self.dim = form.nrows
        if form.ncols != self.dim or self.dim % 2:
            raise ValueError("form must be square of even size")
        if (form + form.transpose()).rows != Mat.zero(self.dim, self.dim, self.p).rows:
            raise ValueError("form must be skew-symmetric")
        if any(form.rows[i][i] for i in range(self.dim)):
            raise ValueError("form must be alternating (zero diagonal)")
        if Mat(form.rows, self.p, ncols=self.dim).rank() != self.dim:
            raise ValueError("form must be nondegenerate")

    @property
    def n(self) -> int:
        return self.dim // 2

    def pair(self, u, w) -> int:
        jw = self.form.apply(w)
        return sum(a * b for a, b in zip(u, jw)) % self.p

    def perp(self, s: Subspace) -> Subspace:
        return s.perp(self.form)

    def is_isotropic(self, s: Subspace) -> bool:
        rows = s.basis.rows
        return all(self.pair(u, w) == 0 for u in rows for w in rows)

    def __repr__(self):
        return f"SymplecticSpace(dim={self.dim}, p={self.p})"


def standard_space(n: int, p: int) -> SymplecticSpace:
    """Antidiagonal form: <e_i, e_{2n-1-i}> = 1 for i < n."""
    d = 2 * n
    rows = [[0] * d for _ in range(d)]
    for i in range(n):
        rows[i][d - 1 - i] = 1
        rows[d - 1 - i][i] = (-1) % p
    return SymplecticSpace(Mat(tuple(tuple(r) for r in rows), p, ncols=d))


def is_self_adjoint(x: Mat, space: SymplecticSpace) -> bool:
    j = space.form
    if (x.transpose() * j).rows != (j * x).rows:
        return False
    jx = j * x
    return all(jx.rows[i][i] == 0 for i in range(space.dim))


class ExoticPoint:
    """A vector v together with a self-adjoint nilpotent operator x."""

    __slots__ = ("space", "x", "v")

    def __init__(self, space: SymplecticSpace, x: Mat, v, check: bool = True):
        self.space = space
        self.x = x
        self.v = tuple(int(e) % space.p for e in v)
        if check:
            if x.nrows != space.dim or x.ncols != space.dim:
                raise ValueError("operator shape mismatch")
            if len(self.v) != space.dim:
                raise ValueError("vector length mismatch")
            if not is_self_adjoint(x, space):
                raise ValueError("operator is not self-adjoint for the form")
            if kernel_power_dims(x)[-1] != space.dim:
                raise ValueError("operator is not nilpotent")

    @property
    def p(self) -> int:
        return self.space.p

    def cyclic_span(self) -> Subspace:
        """Span of v, xv, x^2 v, ..."""
        vecs = []
        w = self.v
        for _ in range(self.space.dim + 1):
            vecs.append(w)
            w = self.x.apply(w)
        return Subspace.from_rows(vecs, self.p, self.space.dim)

    def constraint_space(self) -> Subspace:
        """ker(x) intersected with the perp of the cyclic span of v."""
        return kernel(self.x).intersect(self.space.perp(self.cyclic_span()))

    def __repr__(self):
        return f"ExoticPoint(dim={self.space.dim}, p={self.p})"


def normal_basis(b: Bipartition, p: int) -> ExoticPoint:
    """Canonical representative of the orbit labelled by (mu, nu).

    Basis vectors come in dual families v_{ij} and v*_{ij} over rows
    i <= len(mu+nu) and columns j <= (mu+nu)_i, ordered v-block row by row
    and then the starred block in exact reverse; x shifts v's down a column
    index and v*'s up one, and v is the sum of the v_{i, mu_i}.
    """
    lam = b.mu + b.nu
    rows = lam.parts
    labels = [(i, j) for i in range(1, len(rows) + 1) for j in range(1, rows[i - 1] + 1)]
    n = len(labels)
    d = 2 * n
    index = {}
    for a, lab in enumerate(labels):
        index[("v", lab)] = a
    for a, lab in enumerate(reversed(labels)):
        index[("w", lab)] = n + a

    jrows = [[0] * d for _ in range(d)]
    xcols = [[0] * d for _ in range(d)]
    for (i, j) in labels:
        a = index[("v", (i, j))]
        bst = index[("w", (i, j))]
        jrows[a][bst] = 1
        jrows[bst][a] = (-1) % p
        if j >= 2:
            xcols[index[("v", (i, j - 1))]][a] = 1
        if j <= rows[i - 1] - 1:
            xcols[index[("w", (i, j + 1))]][bst] = 1
    space = SymplecticSpace(Mat(tuple(tuple(r) for r in jrows), p, ncols=d))
    x = Mat(tuple(tuple(r) for r in xcols), p, ncols=d)
    v = [0] * d
    for i in range(1, len(b.mu.parts) + 1):
        v[index[("v", (i, b.mu[i]))]] = 1
    return ExoticPoint(space, x, tuple(v))


def normal_basis_diagram(b: Bipartition) -> str:
    """Text picture of the normal basis, wall between the two diagrams."""
    lam = b.mu + b.nu
    width = max([b.mu[1]] + [0])
    lines = []

    def row(i, star):
        cells = []
        for j in range(1, lam[i] + 1):
            name = f"v*{i}{j}" if star else f"v{i}{j}"
            cells.append(name)
        left = cells[: b.mu[i]]
        right = cells[b.mu[i] :]
        if star:
            left, right = [c for c in reversed(right)], [c for c in reversed(left)]
            pad = "      " * (width - (lam[i] - b.mu[i]) if width > lam[i] - b.mu[i] else 0)
        else:
            pad = "      " * (width - b.mu[i])
        return pad + " ".join(f"{c:5s}" for c in left) + "| " + " ".join(f"{c:5s}" for c in right)

    nrows = len(lam.parts)
    for i in range(1, nrows + 1):
        lines.append(row(i, star=False))
    lines.append("-" * max((len(x) for x in lines), default=8))
    for i in range(nrows, 0, -1):
        lines.append(row(i, star=True))
    return "\n".join(lines)


def grass_perp_dim(k: int, d: int, r: int) -> int:
    """Dimension of the space of k-dim isotropic subspaces for a form of
    rank 2r on a d-dim space; the correction term only enters for k > r."""
    if not (0 <= 2 * r <= d):
        raise ValueError(f"rank parameter out of range: d={d}, r={r}")
    if not (0 <= k <= d - r):
        raise ValueError(f"k out of range: k={k}, d={d}, r={r}")
    dim = k * (d - k) - k * (k - 1) // 2
    if k > r:
        dim += (k - r) * (k - r - 1) // 2
    return dim


def degenerate_gram(d: int, r: int, p: int) -> Mat:
    """Alternating Gram matrix of rank 2r on F_p^d, radical first."""
    rows = [[0] * d for _ in range(d)]
    for i in range(r):
        a, b = d - 2 * r + 2 * i, d - 2 * r + 2 * i + 1
        rows[a][b] = 1
        rows[b][a] = (-1) % p
    return Mat(tuple(tuple(x) for x in rows), p, ncols=d)


def enumerate_isotropic(space: SymplecticSpace, k: int, within: Subspace | None = None):
    """All k-dim isotropic subspaces inside `within`, by filtered echelon
    enumeration."""
    if within is None:
        within = Subspace.full(space.dim, space.p)
    for s in enumerate_subspaces(space.dim, k, space.p, within=within):
        if space.is_isotropic(s):
            yield s


def induced_form(x: Mat, space: SymplecticSpace, j: int):
    """The pairing <<u,w>>_j = <z,w> with x^j z = u, on the domain Im(x^j).

    Returns (domain, gram) where gram is expressed in the coordinates of
    the domain's echelon basis.  Well-definedness is asserted by recomputing
    each row with a shifted preimage.
    """
    if not is_self_adjoint(x, space):
        raise ValueError("operator is not self-adjoint")
    if kernel_power_dims(x)[-1] != space.dim:
        raise ValueError("operator is not nilpotent")
    xj = x**j
    domain = Subspace(xj.transpose(), ambient=space.dim)
    ker_rows = nullspace_matrix(xj).rows
    shift = ker_rows[0] if ker_rows else None
    grows = []
    p = space.p
    for u in domain.basis.rows:
        z = solve(xj, u)
        assert z is not None
        row = tuple(space.pair(z, w) for w in domain.basis.rows)
        if shift is not None:
            z2 = tuple((a + b) % p for a, b in zip(z, shift))
            row2 = tuple(space.pair(z2, w) for w in domain.basis.rows)
            if row2 != row:
                raise ValueError("induced pairing is not well defined")
        grows.append(row)
    gram = Mat(tuple(grows), p, ncols=domain.dim)
    if domain.dim:
        if gram.rank() != domain.dim:
            raise ValueError("induced form is degenerate")
        if (gram + gram.transpose()).rank() != 0 or any(
            gram.rows[i][i] for i in range(domain.dim)
        ):
            raise ValueError("induced form is not alternating")
    return domain, gram


def perp_pp(w: Subspace, x: Mat, space: SymplecticSpace, j: int) -> Subspace:
    """Perpendicular of w inside Im(x^j) for the induced pairing."""
    domain, gram = induced_form(x, space, j)
    if not domain.contains(w):
        raise ValueError("subspace is not contained in Im(x^j)")
    coords = [_coords_against(domain, r) for r in w.basis.rows]
    m = Mat(tuple(coords), space.p, ncols=domain.dim)
    sol = nullspace_matrix(m * gram.transpose())
    amb_rows = []
    for c in sol.rows:
        v = [0] * space.dim
        for ci, brow in zip(c, domain.basis.rows):
            if ci:
                for t, e in enumerate(brow):
                    v[t] = (v[t] + ci * e) % space.p
        amb_rows.append(tuple(v))
    return Subspace.from_rows(amb_rows, space.p, space.dim)


def _coords_against(s: Subspace, v):
    from .linalg import reduce_vector

    c = reduce_vector(s.basis, v)
    if c is None:
        raise ValueError("vector outside subspace")
    return c


def quotient_point(pt: ExoticPoint, f: Subspace):
    """The induced pair (v + F, x) on F^perp / F, with the subquotient map.

    F must be isotropic and x-invariant with v perpendicular to it.
    """
    space = pt.space
    fperp = space.perp(f)
    if not fperp.contains(f):
        raise ValueError("subspace is not isotropic")
    ctx = Subquotient(fperp, f)
    x2 = ctx.induced_operator(pt.x)
    form2 = ctx.induced_form(space.form)
    v2 = ctx.project(pt.v)
    qpt = ExoticPoint(SymplecticSpace(form2), x2, v2, check=False)
    return qpt, ctx


def isotropic_count(space: SymplecticSpace, k: int, within: Subspace | None = None) -> int:
    """Exact count of isotropic k-subspaces inside `within` (plain loop)."""
    return sum(1 for _ in enumerate_isotropic(space, k, within))
