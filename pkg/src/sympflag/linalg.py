"""Exact linear algebra over a prime field F_p.

Matrices are immutable tuples of row tuples with entries reduced mod p.
Vectors are plain int tuples and operators act on column vectors, so the
image of a row vector v under the operator X is X.apply(v).

A subspace is stored as the reduced row echelon form of a spanning set;
two subspaces are equal iff their echelon bases are, which makes them
hashable census keys.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np


def inv_mod(a: int, p: int) -> int:
    return pow(a, p - 2, p)


class Mat:
    """Immutable matrix over F_p."""

    __slots__ = ("p", "nrows", "ncols", "rows", "_hash")

    def __init__(self, rows, p, ncols=None):
        rows = tuple(tuple(int(e) % p for e in r) for r in rows)
        self.p = p
        self.nrows = len(rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("ncols required for an empty matrix")
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    @classmethod
    def identity(cls, n, p):
        return cls(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), p, ncols=n
        )

    @classmethod
    def zero(cls, nrows, ncols, p):
        return cls(tuple((0,) * ncols for _ in range(nrows)), p, ncols=ncols)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.p == other.p
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        return f"Mat({list(map(list, self.rows))}, p={self.p})"

    def __add__(self, other):
        self._check(other)
        return Mat(
            tuple(
                tuple((a + b) % self.p for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
            self.p,
            ncols=self.ncols,
        )

    def __sub__(self, other):
        self._check(other)
        return Mat(
            tuple(
                tuple((a - b) % self.p for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            ),
            self.p,
            ncols=self.ncols,
        )

    def __neg__(self):
        return Mat(tuple(tuple(-a % self.p for a in r) for r in self.rows), self.p, ncols=self.ncols)

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.ncols != other.nrows or self.p != other.p:
            raise ValueError("shape or modulus mismatch in product")
        p = self.p
        bt = other.transpose().rows
        return Mat(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) % p for col in bt) for row in self.rows),
            p,
            ncols=other.ncols,
        )

    def __pow__(self, e):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        out = Mat.identity(self.nrows, self.p)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def _check(self, other):
        if self.p != other.p or self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape or modulus mismatch")

    def transpose(self) -> "Mat":
        if not self.rows:
            return Mat(tuple(() for _ in range(self.ncols)), self.p, ncols=0)
        return Mat(tuple(zip(*self.rows)), self.p, ncols=self.nrows)

    def apply(self, v) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        p = self.p
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.rows)

    def is_zero(self) -> bool:
        return all(all(e == 0 for e in r) for r in self.rows)

    def stack(self, other) -> "Mat":
        if self.ncols != other.ncols or self.p != other.p:
            raise ValueError("stack mismatch")
        return Mat(self.rows + other.rows, self.p, ncols=self.ncols)

    def rank(self) -> int:
        return rref(self).nrows

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "rows": self.nrows,
            "cols": self.ncols,
            "data": [e for r in self.rows for e in r],
        }

    @classmethod
    def from_json(cls, d) -> "Mat":
        r, c = d["rows"], d["cols"]
        data = d["data"]
        return cls(tuple(tuple(data[i * c : (i + 1) * c]) for i in range(r)), d["p"], ncols=c)


def rref(m: Mat) -> Mat:
    """Reduced row echelon form with zero rows dropped."""
    p = m.p
    rows = [list(r) for r in m.rows]
    nr, nc = len(rows), m.ncols
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = inv_mod(rows[r][c], p)
        rows[r] = [(e * inv) % p for e in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Mat(tuple(tuple(row) for row in rows[:r]), p, ncols=nc)


def pivot_columns(echelon: Mat) -> tuple[int, ...]:
    out = []
    for row in echelon.rows:
        out.append(next(c for c, e in enumerate(row) if e))
    return tuple(out)


def solve(a: Mat, b) -> tuple[int, ...] | None:
    """One solution x of a x = b, or None."""
    aug = Mat(tuple(r + (v,) for r, v in zip(a.rows, b)), a.p, ncols=a.ncols + 1)
    e = rref(aug)
    piv = pivot_columns(e)
    if a.ncols in piv:
        return None
    x = [0] * a.ncols
    for row, c in zip(e.rows, piv):
        x[c] = row[-1]
    return tuple(x)


def nullspace_matrix(m: Mat) -> Mat:
    """Rows span the solution space of m x = 0."""
    e = rref(m)
    piv = pivot_columns(e)
    free = [c for c in range(m.ncols) if c not in piv]
    p = m.p
    rows = []
    for f in free:
        v = [0] * m.ncols
        v[f] = 1
        for row, c in zip(e.rows, piv):
            v[c] = (-row[f]) % p
        rows.append(tuple(v))
    return Mat(tuple(rows), p, ncols=m.ncols)


class Subspace:
    """Row span of an echelon basis inside F_p^ambient."""

    __slots__ = ("p", "ambient", "basis", "_hash")

    def __init__(self, basis: Mat, ambient: int | None = None):
        self.basis = rref(basis)
        self.p = basis.p
        self.ambient = basis.ncols if ambient is None else ambient
        if self.basis.ncols != self.ambient:
            raise ValueError("basis width != ambient dimension")
        self._hash = None

    @classmethod
    def from_rows(cls, rows, p, ambient) -> "Subspace":
        return cls(Mat(tuple(rows), p, ncols=ambient))

    @classmethod
    def zero(cls, ambient, p) -> "Subspace":
        return cls(Mat((), p, ncols=ambient))

    @classmethod
    def full(cls, ambient, p) -> "Subspace":
        return cls(Mat.identity(ambient, p))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.p == other.p
            and self.ambient == other.ambient
            and self.basis.rows == other.basis.rows
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.ambient, self.basis.rows))
        return self._hash

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, p={self.p})"

    def sort_key(self):
        return self.basis.rows

    def contains_vector(self, v) -> bool:
        return reduce_vector(self.basis, v) is not None

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(r) for r in other.basis.rows)

    def vectors(self):
        """All vectors of the subspace (p^dim of them), zero first."""
        p = self.p
        for coeffs in itertools.product(range(p), repeat=self.dim):
            v = [0] * self.ambient
            for c, row in zip(coeffs, self.basis.rows):
                if c:
                    for i, e in enumerate(row):
                        v[i] = (v[i] + c * e) % p
            yield tuple(v)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.basis.stack(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return self.dot_perp().sum(other.dot_perp()).dot_perp()

    def dot_perp(self) -> "Subspace":
        """Annihilator for the standard dot pairing."""
        return Subspace(nullspace_matrix(self.basis))

    def perp(self, form: Mat) -> "Subspace":
        """Perpendicular space for the bilinear form u^T (form) w."""
        if form.nrows != self.ambient or form.ncols != self.ambient:
            raise ValueError("form shape mismatch")
        return Subspace(nullspace_matrix(self.basis * form))

    def image_under(self, x: Mat) -> "Subspace":
        """Span of x applied to the subspace."""
        return Subspace.from_rows([x.apply(r) for r in self.basis.rows], self.p, self.ambient)

    def _check(self, other):
        if self.p != other.p or self.ambient != other.ambient:
            raise ValueError("ambient mismatch between subspaces")


def reduce_vector(echelon: Mat, v) -> tuple[int, ...] | None:
    """Coefficients of v against an echelon basis, or None if outside."""
    p = echelon.p
    v = [int(e) % p for e in v]
    coeffs = []
    for row in echelon.rows:
        c = next(i for i, e in enumerate(row) if e)
        f = v[c]
        coeffs.append(f)
        if f:
            for i, e in enumerate(row):
                v[i] = (v[i] - f * e) % p
    if any(v):
        return None
    return tuple(coeffs)


def kernel(x: Mat) -> Subspace:
    return Subspace(nullspace_matrix(x))


def image(x: Mat) -> Subspace:
    """Column space of x, as a row-vector subspace."""
    return Subspace(rref(x.transpose()), ambient=x.nrows)


def span_closure(x: Mat, vectors) -> Subspace:
    """Smallest x-invariant subspace containing the given vectors."""
    p = x.p
    cur = Subspace.from_rows(list(vectors), p, x.ncols)
    while True:
        nxt = cur.sum(cur.image_under(x))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def kernel_power_dims(x: Mat) -> list[int]:
    """Dimensions of ker(x^j) for j = 0, 1, ... until stabilization."""
    dims = [0]
    power = Mat.identity(x.nrows, x.p)
    while True:
        power = power * x
        d = kernel(power).dim
        if d == dims[-1]:
            return dims
        dims.append(d)


class Subquotient:
    """Coordinates on w/u for nested subspaces u <= w.

    The rows of `comp` are representatives of a basis of w/u.  project()
    expresses a vector of w in those coordinates; lift() walks back.
    """

    __slots__ = ("p", "ambient", "u", "w", "comp", "_solver")

    def __init__(self, w: Subspace, u: Subspace):
        if not w.contains(u):
            raise ValueError("u is not contained in w")
        self.p = w.p
        self.ambient = w.ambient
        self.u = u
        self.w = w
        comp = []
        stack = list(u.basis.rows)
        r = u.dim
        for row in w.basis.rows:
            cand = Mat(tuple(stack) + (row,), self.p, ncols=self.ambient)
            if cand.rank() > r:
                comp.append(row)
                stack.append(row)
                r += 1
        self.comp = tuple(comp)
        # columns are the comp rows then the u basis rows
        cols = tuple(self.comp) + tuple(u.basis.rows)
        self._solver = Mat(cols, self.p, ncols=self.ambient).transpose()

    @property
    def dim(self) -> int:
        return len(self.comp)

    def project(self, v) -> tuple[int, ...]:
        sol = solve(self._solver, v)
        if sol is None:
            raise ValueError("vector is outside w")
        return sol[: self.dim]

    def lift(self, coords) -> tuple[int, ...]:
        p = self.p
        v = [0] * self.ambient
        for c, row in zip(coords, self.comp):
            for i, e in enumerate(row):
                v[i] = (v[i] + c * e) % p
        return tuple(v)

    def project_subspace(self, s: Subspace) -> Subspace:
        return Subspace.from_rows(
            [self.project(r) for r in s.basis.rows], self.p, self.dim
        )

    def lift_subspace(self, s: Subspace) -> Subspace:
        rows = [self.lift(r) for r in s.basis.rows] + list(self.u.basis.rows)
        return Subspace.from_rows(rows, self.p, self.ambient)

    def induced_operator(self, x: Mat) -> Mat:
        if not self.u.contains(self.u.image_under(x)):
            raise ValueError("x does not preserve u")
        if not self.w.contains(self.w.image_under(x)):
            raise ValueError("x does not preserve w")
        cols = [self.project(x.apply(c)) for c in self.comp]
        return Mat(tuple(zip(*cols)) if cols else (), self.p, ncols=self.dim)

    def induced_form(self, form: Mat) -> Mat:
        p = self.p
        rows = []
        for a in self.comp:
            ja = form.apply(a)  # column J a; pairing <b, a> = b . (J a)
            rows.append(tuple(sum(bi * ci for bi, ci in zip(b, ja)) % p for b in self.comp))
        # rows[i][j] = <comp_j, form comp_i>; transpose to <comp_i, . comp_j>
        return Mat(tuple(zip(*rows)) if rows else (), p, ncols=self.dim)


def restrict_operator(x: Mat, w: Subspace, u: Subspace) -> Mat:
    """Matrix of the operator induced by x on w/u (basis-dependent, similarity
    class well defined)."""
    return Subquotient(w, u).induced_operator(x)


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, by the product formula."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def _free_positions(piv, d):
    """Free coordinate slots of an echelon pattern, row major."""
    pivset = set(piv)
    slots = []
    for i, pc in enumerate(piv):
        for c in range(pc + 1, d):
            if c not in pivset:
                slots.append((i, c))
    return slots


def echelon_patterns(d: int, k: int):
    """Pivot column choices in lexicographic order."""
    return itertools.combinations(range(d), k)


def enumerate_subspaces(ambient_dim, k, p, within: Subspace | None = None):
    """Yield every k-dimensional subspace exactly once, deterministically.

    The stream walks echelon pivot patterns lexicographically and fills the
    free entries as a base-p counter, most significant slot first.  With
    `within` given, enumeration runs in coordinates of its basis and the
    results are mapped back into the ambient space.
    """
    if within is None:
        within = Subspace.full(ambient_dim, p)
    d = within.dim
    if k < 0 or k > d:
        return
    if k == 0:
        yield Subspace.zero(ambient_dim, p)
        return
    rows_basis = within.basis.rows
    for piv in echelon_patterns(d, k):
        slots = _free_positions(piv, d)
        for fills in itertools.product(range(p), repeat=len(slots)):
            m = [[0] * d for _ in range(k)]
            for i, c in enumerate(piv):
                m[i][c] = 1
            for (i, c), val in zip(slots, fills):
                m[i][c] = val
            amb_rows = []
            for row in m:
                v = [0] * within.ambient
                for c, e in zip(row, rows_basis):
                    if c:
                        for j, x in enumerate(e):
                            v[j] = (v[j] + c * x) % p
                amb_rows.append(tuple(v))
            yield Subspace.from_rows(amb_rows, p, within.ambient)


def count_isotropic_subspaces(k: int, p: int, gram: Mat, chunk: int = 1 << 16) -> int:
    """Exact number of k-subspaces F with F <= F^perp for the given Gram
    matrix, by vectorized echelon enumeration."""
    d = gram.nrows
    if k < 0 or k > d:
        return 0
    if k == 0:
        return 1
    g = np.array(gram.rows, dtype=np.int64)
    total = 0
    for piv in echelon_patterns(d, k):
        slots = _free_positions(piv, d)
        nf = len(slots)
        base = np.zeros((k, d), dtype=np.int64)
        for i, c in enumerate(piv):
            base[i, c] = 1
        nfill = p**nf
        for start in range(0, nfill, chunk):
            stop = min(start + chunk, nfill)
            idx = np.arange(start, stop, dtype=np.int64)
            mats = np.broadcast_to(base, (stop - start, k, d)).copy()
            rem = idx
            for s in range(nf - 1, -1, -1):
                i, c = slots[s]
                mats[:, i, c] = rem % p
                rem = rem // p
            bg = np.einsum("aij,jk->aik", mats, g) % p
            pairing = np.einsum("aik,alk->ail", bg, mats) % p
            total += int(np.count_nonzero(~pairing.any(axis=(1, 2))))
    return total


PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def first_primes(count: int) -> tuple[int, ...]:
    if count > len(PRIMES):
        raise ValueError("prime table exhausted")
    return PRIMES[:count]
