"""Jordan types of nilpotent operators on subquotients, by direct kernel
dimensions and by the dimension-sequence formulas, plus recovery of the
orbit bipartition of a self-adjoint pair from its two Jordan types."""

from __future__ import annotations

from .linalg import Mat, Subquotient, Subspace, kernel, kernel_power_dims, restrict_operator
from .partitions import Bipartition, Partition
from .symplectic import ExoticPoint, SymplecticSpace


def _partition_from_column_heights(heights) -> Partition:
    """Partition whose j-th column (1-based) has the given height."""
    heights = [h for h in heights]
    for a, b in zip(heights, heights[1:]):
        if b > a:
            raise ValueError(f"column heights not decreasing: {heights}")
    if any(h < 0 for h in heights):
        raise ValueError(f"negative column height: {heights}")
    return Partition(tuple(heights)).transpose()


def jordan_type(x: Mat) -> Partition:
    """Block-size partition of a nilpotent operator."""
    if x.nrows != x.ncols:
        raise ValueError("operator must be square")
    dims = kernel_power_dims(x)
    if dims[-1] != x.nrows:
        raise ValueError("operator is not nilpotent")
    return _partition_from_column_heights(
        [dims[j] - dims[j - 1] for j in range(1, len(dims))]
    )


def jordan_subquotient_direct(x: Mat, w: Subspace, u: Subspace) -> Partition:
    """Jordan type of the operator induced on w/u, computed head on."""
    return jordan_type(restrict_operator(x, w, u))


def jordan_subquotient_formula(x: Mat, w: Subspace, u: Subspace) -> Partition:
    """Jordan type on w/u from the four dimension sequences
    dim(x^i(W) cap U) and dim(ker(x^i) cap W)."""
    if not w.contains(u):
        raise ValueError("u is not contained in w")
    if not u.contains(u.image_under(x)):
        raise ValueError("x does not preserve u")
    if not w.contains(w.image_under(x)):
        raise ValueError("x does not preserve w")
    if kernel_power_dims(x)[-1] != x.nrows:
        raise ValueError("operator is not nilpotent")
    target = w.dim - u.dim
    heights = []
    total = 0
    power = Mat.identity(x.nrows, x.p)
    prev = u.dim  # x^0(W) cap U = U, ker(x^0) cap W = 0
    i = 0
    while total < target:
        i += 1
        power = power * x
        a = w.image_under(power).intersect(u).dim
        b = kernel(power).intersect(w).dim
        mt = a + b - prev
        prev = a + b
        heights.append(mt)
        total += mt
    return _partition_from_column_heights(heights)


def exotic_jordan_type(pt: ExoticPoint) -> Bipartition:
    """Orbit bipartition from J(x) and J(x on V / span{x^j v}).

    J(x) must be a doubled partition; the two interleaved sequences then
    determine (mu, nu) from the largest row downwards.
    """
    lam = jordan_type(pt.x)
    cyc = pt.cyclic_span()
    full = Subspace.full(pt.space.dim, pt.p)
    lam2 = jordan_type(restrict_operator(pt.x, full, cyc))
    return recover_bipartition(lam, lam2)


def recover_bipartition(lam: Partition, lam2: Partition) -> Bipartition:
    """Invert the two Jordan-type formulas of a self-adjoint pair."""
    if len(lam.parts) % 2:
        raise ValueError(f"not an exotic point: J(x)={lam.parts} has odd length")
    half = len(lam.parts) // 2
    sigma = []
    for i in range(1, half + 1):
        if lam[2 * i - 1] != lam[2 * i]:
            raise ValueError(f"not an exotic point: J(x)={lam.parts} is not doubled")
        sigma.append(lam[2 * i - 1])
    mu = [0] * (half + 2)
    nu = [0] * (half + 2)
    for i in range(half, 0, -1):
        nu[i] = lam2[2 * i] - mu[i + 1]
        mu[i] = lam2[2 * i - 1] - nu[i]
        if nu[i] < 0 or mu[i] < 0:
            raise ValueError("theorem inconsistency: negative recovered part")
    mu_parts = mu[1 : half + 1]
    nu_parts = nu[1 : half + 1]
    for seq in (mu_parts, nu_parts):
        if any(seq[t] < seq[t + 1] for t in range(len(seq) - 1)):
            raise ValueError("theorem inconsistency: recovered parts not monotone")
    b = Bipartition(Partition(tuple(mu_parts)), Partition(tuple(nu_parts)))
    # consistency of both displayed sequences
    if (b.mu + b.nu).parts != tuple(sigma):
        raise ValueError("theorem inconsistency: mu+nu mismatch")
    expect2 = []
    for i in range(1, half + 2):
        expect2.extend([b.mu[i] + b.nu[i], b.mu[i + 1] + b.nu[i]])
    expect2 = tuple(e for e in expect2 if e)
    sorted_ok = all(expect2[t] >= expect2[t + 1] for t in range(len(expect2) - 1))
    if not sorted_ok or Partition(expect2).parts != lam2.parts:
        raise ValueError("theorem inconsistency: quotient type mismatch")
    return b


def predict_types_general_l(x: Mat, f: Subspace, space: SymplecticSpace):
    """Predicted J(x on V/F) and J(x on F^perp/F) for isotropic F <= ker x,
    from the column statistics k_j and h_j alone."""
    if not kernel(x).contains(f):
        raise ValueError("F is not contained in ker(x)")
    if not space.is_isotropic(f):
        raise ValueError("F is not isotropic")
    lam = jordan_type(x)
    if len(lam.parts) % 2:
        raise ValueError("J(x) is not doubled")
    sigma = Partition(tuple(lam[2 * i - 1] for i in range(1, len(lam.parts) // 2 + 1)))
    for i in range(1, len(sigma.parts) + 1):
        if lam[2 * i] != sigma[i]:
            raise ValueError("J(x) is not doubled")
    ell = sigma[1] if sigma.parts else 0
    n_mult = [0] * (ell + 2)
    for part in sigma.parts:
        n_mult[part] += 1
    fperp = space.perp(f)
    idims = []
    hs = [0] * (ell + 2)
    power = Mat.identity(x.nrows, x.p)
    for j in range(ell + 1):
        im = Subspace(power.transpose(), ambient=space.dim)
        idims.append(f.intersect(im).dim)
        if j >= 1:
            fxj = f.intersect(fperp.image_under(power)).dim
            gap = idims[j] - fxj
            if gap % 2:
                raise ValueError("odd symplectic gap; operator not self-adjoint?")
            hs[j] = gap // 2
        power = power * x
    ks = [0] * (ell + 2)
    for j in range(1, ell + 1):
        ks[j] = idims[j - 1] - idims[j]
    quot_mult = [0] * (ell + 2)
    sub_mult = [0] * (ell + 2)
    for j in range(1, ell + 1):
        quot_mult[j] = 2 * n_mult[j] - ks[j] + ks[j + 1]
        sub_mult[j] = (
            2 * n_mult[j]
            - 2 * ks[j]
            + 2 * ks[j + 1]
            + 2 * hs[j - 1]
            - 4 * hs[j]
            + 2 * hs[j + 1]
        )
    if any(m < 0 for m in quot_mult) or any(m < 0 for m in sub_mult):
        raise ValueError("predicted multiplicities went negative")
    quot = Partition(tuple(j for j in range(ell, 0, -1) for _ in range(quot_mult[j])))
    sub = Partition(tuple(j for j in range(ell, 0, -1) for _ in range(sub_mult[j])))
    return quot, sub
