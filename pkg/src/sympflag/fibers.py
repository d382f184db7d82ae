"""Flag fibers of self-adjoint nilpotent pairs: enumeration over F_q, the
growth-chain labelling map, censuses, the square-zero case classifier with
its closed stratum dimensions, count-polynomial fitting and the desk-scale
top-component check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .jordan import exotic_jordan_type
from .linalg import Mat, Subspace, first_primes, gaussian_binomial, kernel
from .partitions import (
    Bipartition,
    Composition,
    EMPTY_BIP,
    Partition,
    bip,
    d_alpha,
    semistandard_chains,
)
from .symplectic import (
    ExoticPoint,
    enumerate_isotropic,
    normal_basis,
    quotient_point,
)

DEFAULT_GUARD = 10_000_000


class GuardExceeded(RuntimeError):
    def __init__(self, estimate, guard):
        super().__init__(f"projected enumeration size {estimate} exceeds guard {guard}")
        self.estimate = estimate
        self.guard = guard


class FlagType:
    """A composition together with its doubled form and partial sums."""

    __slots__ = ("alpha", "hat", "check")

    def __init__(self, alpha: Composition):
        self.alpha = alpha
        self.hat = alpha.doubled()
        self.check = alpha.partial_sums()

    @property
    def n(self) -> int:
        return self.alpha.size

    @property
    def m(self) -> int:
        return len(self.alpha)

    def __repr__(self):
        return f"FlagType({self.alpha.parts})"


class PartialFlag:
    """Nested chain of subspaces with the perpendicular symmetry."""

    __slots__ = ("ftype", "spaces")

    def __init__(self, ftype: FlagType, spaces, symp=None):
        self.ftype = ftype
        self.spaces = tuple(spaces)
        m2 = 2 * ftype.m
        if len(self.spaces) != m2:
            raise ValueError("wrong number of subspaces")
        for i, s in enumerate(self.spaces):
            if s.dim != ftype.check[i + 1]:
                raise ValueError("flag dimensions do not match the type")
            if i and not s.contains(self.spaces[i - 1]):
                raise ValueError("flag subspaces are not nested")
        if symp is not None:
            for i in range(1, m2):
                if symp.perp(self.spaces[i - 1]) != self.spaces[m2 - i - 1]:
                    raise ValueError("flag breaks perpendicular symmetry")

    def __eq__(self, other):
        return isinstance(other, PartialFlag) and self.spaces == other.spaces

    def __hash__(self):
        return hash(self.spaces)

    def __repr__(self):
        return f"PartialFlag(dims={[s.dim for s in self.spaces]})"


def projected_fiber_cost(n: int, alpha: Composition, q: int) -> int:
    """Upper bound on the number of subspaces visited by materializing the
    whole fiber (a full tree walk, no sharing)."""
    cost = 1
    remaining = n
    for a in alpha.parts:
        cost *= gaussian_binomial(2 * remaining, a, q)
        remaining -= a
    return cost


def projected_census_cost(b: Bipartition, alpha: Composition, q: int) -> int:
    """Upper bound on the subspaces visited by the memoized census: one
    enumeration per orbit reachable at each level."""
    from .partitions import enumerate_bipartitions

    level = {b}
    total = 0
    rem = alpha.size
    for a in alpha.parts:
        nxt = set()
        for orb in level:
            lam = orb.mu + orb.nu
            consdim = min(2 * rem, 2 * len(lam.parts))
            total += gaussian_binomial(consdim, a, q)
            try:
                nxt |= set(reachable_targets(orb, a))
            except ValueError:
                nxt |= set(enumerate_bipartitions(rem - a))
        level = nxt
        rem -= a
    return total


def _lower_halves(pt: ExoticPoint, parts):
    """Recursive enumeration of the first half of fiber flags, in ambient
    coordinates; upper halves follow by perpendicularity."""
    if not parts:
        yield []
        return
    cons = pt.constraint_space()
    for f in enumerate_isotropic(pt.space, parts[0], within=cons):
        qpt, ctx = quotient_point(pt, f)
        for rest in _lower_halves(qpt, parts[1:]):
            yield [f] + [ctx.lift_subspace(s) for s in rest]


def enumerate_fiber(pt: ExoticPoint, ftype: FlagType, guard: int = DEFAULT_GUARD):
    """All flags of the given type with v in the middle space and x pushing
    each step into the previous one."""
    est = projected_fiber_cost(ftype.n, ftype.alpha, pt.p)
    if est > guard:
        raise GuardExceeded(est, guard)
    symp = pt.space
    m = ftype.m
    for lower in _lower_halves(pt, ftype.alpha.parts):
        upper = [symp.perp(lower[m - j - 1]) for j in range(1, m)] + [
            Subspace.full(symp.dim, pt.p)
        ]
        yield PartialFlag(ftype, lower + upper, symp=symp)


def flag_in_fiber(pt: ExoticPoint, flag: PartialFlag) -> bool:
    mid = flag.spaces[flag.ftype.m - 1]
    if not mid.contains_vector(pt.v):
        return False
    prev = Subspace.zero(pt.space.dim, pt.p)
    for s in flag.spaces:
        if not prev.contains(s.image_under(pt.x)):
            return False
        prev = s
    return True


def phi(pt: ExoticPoint, flag: PartialFlag) -> tuple[Bipartition, ...]:
    """Growth chain of orbit labels of the successive middle subquotients,
    listed from the empty label up to the label of the pair itself."""
    if not flag_in_fiber(pt, flag):
        raise ValueError("flag is not in the fiber of this pair")
    labels = [exotic_jordan_type(pt)]
    for i in range(1, flag.ftype.m + 1):
        f = flag.spaces[i - 1]
        qpt, _ = quotient_point(pt, f)
        labels.append(exotic_jordan_type(qpt))
    return tuple(reversed(labels))


def _chain_sort_key(chain):
    return tuple(b.sort_key() for b in chain)


@lru_cache(maxsize=None)
def _census_by_type(mu_parts, nu_parts, alpha_parts, p):
    b = bip(mu_parts, nu_parts)
    if not alpha_parts:
        return (((b,), 1),)
    pt = normal_basis(b, p)
    cons = pt.constraint_space()
    acc = {}
    for f in enumerate_isotropic(pt.space, alpha_parts[0], within=cons):
        qpt, _ = quotient_point(pt, f)
        sub = exotic_jordan_type(qpt)
        for chain, c in _census_by_type(sub.mu.parts, sub.nu.parts, alpha_parts[1:], p):
            key = chain + (b,)
            acc[key] = acc.get(key, 0) + c
    return tuple(sorted(acc.items(), key=lambda kv: _chain_sort_key(kv[0])))


def fiber_census(pt_or_bip, ftype: FlagType, q: int, guard: int = DEFAULT_GUARD):
    """Exact count of fiber flags per growth chain.

    Orbit-isomorphism lets the recursion run on the canonical representative
    of each intermediate orbit; fiber_census_strict below never does and is
    used to validate that shortcut.
    """
    if isinstance(pt_or_bip, ExoticPoint):
        b = exotic_jordan_type(pt_or_bip)
        if pt_or_bip.p != q:
            raise ValueError("point field does not match q")
    else:
        b = pt_or_bip
    est = projected_census_cost(b, ftype.alpha, q)
    if est > guard:
        raise GuardExceeded(est, guard)
    return dict(_census_by_type(b.mu.parts, b.nu.parts, ftype.alpha.parts, q))


def fiber_census_strict(pt: ExoticPoint, ftype: FlagType, guard: int = DEFAULT_GUARD):
    """Census without memoization or canonical representatives."""
    est = projected_fiber_cost(ftype.n, ftype.alpha, pt.p)
    if est > guard:
        raise GuardExceeded(est, guard)

    def rec(point, parts):
        label = exotic_jordan_type(point)
        if not parts:
            return {(label,): 1}
        acc = {}
        cons = point.constraint_space()
        for f in enumerate_isotropic(point.space, parts[0], within=cons):
            qpt, _ = quotient_point(point, f)
            for chain, c in rec(qpt, parts[1:]).items():
                key = chain + (label,)
                acc[key] = acc.get(key, 0) + c
        return acc

    return rec(pt, ftype.alpha.parts)


# --- square-zero case analysis -------------------------------------------

CASE_KINDS = (
    "X0V0",
    "X0Vne0_vInF",
    "X0Vne0_vNotF",
    "V0",
    "VInIm_a",
    "VInIm_b",
    "VInIm_c",
    "VInKer_a",
    "VInKer_b",
    "VInKer_c",
    "VNotKer_a",
    "VNotKer_b",
)

STRATA = ("X", "X1", "Y", "X2", "X3", "X4", "X5", "X6", "X7", "X8")

_STRATUM_TO_KIND = {
    "X": "V0",
    "X1": "VInIm_a",
    "Y": "VInIm_a",
    "X2": "VInIm_b",
    "X3": "VInIm_c",
    "X4": "VInKer_a",
    "X5": "VInKer_b",
    "X6": "VInKer_c",
    "X7": "VNotKer_a",
    "X8": "VNotKer_b",
}

# which bipartition shape the quotient pair lands on, per case kind
_KIND_TARGET = {
    "X0V0": "A",
    "V0": "A",
    "VInIm_a": "A",
    "VInKer_a": "A",
    "X0Vne0_vInF": "A",
    "VInIm_b": "B",
    "VInKer_b": "B",
    "VInIm_c": "C",
    "VInKer_c": "C",
    "VNotKer_a": "C",
    "X0Vne0_vNotF": "C",
    "VNotKer_b": "D",
}


@dataclass(frozen=True)
class CaseTag:
    kind: str
    k1: int
    k2: int
    h: int

    def __post_init__(self):
        if self.kind not in CASE_KINDS:
            raise ValueError(f"unknown case kind {self.kind!r}")
        if self.k1 < 0 or self.k2 < 0 or not (0 <= 2 * self.h <= self.k2):
            raise ValueError("case parameters out of range")


def orbit_row_multiplicities(b: Bipartition) -> tuple[int, int]:
    """(n1, n2) = number of length-1 and length-2 rows of mu+nu; the pair
    must be square-zero (no longer rows)."""
    lam = b.mu + b.nu
    if lam.parts and lam.parts[0] > 2:
        raise ValueError(f"pair is not square-zero: mu+nu = {lam.parts}")
    return lam.multiplicity(1), lam.multiplicity(2)


def source_kind(b: Bipartition) -> str:
    """Which of the four square-zero families (mu, nu) belongs to."""
    n1, n2 = orbit_row_multiplicities(b)
    if not b.mu.parts:
        return "V0"
    if b.mu.parts[0] == 2:
        return "VNotKer"
    return "VInIm" if len(b.mu.parts) <= n2 else "VInKer"


_SOURCE_STRATA = {
    "V0": ("X",),
    "VInIm": ("X1", "Y", "X2", "X3"),
    "VInKer": ("X4", "X5", "X6"),
    "VNotKer": ("X7", "X8"),
}


def classify_case_x2(pt: ExoticPoint, f: Subspace) -> CaseTag:
    """Case tag of an admissible isotropic subspace for a square-zero pair."""
    return _classify(pt, f)[0]


def classify_stratum_x2(pt: ExoticPoint, f: Subspace):
    """Fine stratum name with (k1, k2, h); refines classify_case_x2."""
    tag, stratum = _classify(pt, f)
    return stratum, tag


def _classify(pt: ExoticPoint, f: Subspace):
    x, sp = pt.x, pt.space
    if not (x * x).is_zero():
        raise ValueError("operator does not square to zero")
    if not sp.is_isotropic(f):
        raise ValueError("subspace is not isotropic")
    if not kernel(x).contains(f):
        raise ValueError("subspace is not killed by the operator")
    if not pt.constraint_space().contains(f):
        raise ValueError("subspace is not perpendicular to the cyclic span")
    imx = Subspace(x.transpose(), ambient=sp.dim)
    k = f.dim
    k2 = f.intersect(imx).dim
    k1 = k - k2
    xfperp = sp.perp(f).image_under(x)
    rad = f.intersect(xfperp)
    gap = k2 - rad.dim
    if gap % 2:
        raise ValueError("odd radical gap; inconsistent input")
    h = gap // 2
    xzero = x.is_zero()
    vzero = not any(pt.v)
    if vzero:
        kind = "X0V0" if xzero else "V0"
        stratum = "X"
    elif f.contains_vector(pt.v):
        if xzero:
            kind, stratum = "X0Vne0_vInF", "X4"
        elif imx.contains_vector(pt.v):
            kind = "VInIm_a"
            stratum = "X1" if rad.contains_vector(pt.v) else "Y"
        else:
            kind, stratum = "VInKer_a", "X4"
    elif kernel(x).contains_vector(pt.v):
        grown = (
            f.sum(Subspace.from_rows([pt.v], pt.p, sp.dim)).intersect(xfperp).dim
            > rad.dim
        )
        if xzero:
            kind, stratum = "X0Vne0_vNotF", "X6"
        elif imx.contains_vector(pt.v):
            kind, stratum = ("VInIm_b", "X2") if grown else ("VInIm_c", "X3")
        else:
            kind, stratum = ("VInKer_b", "X5") if grown else ("VInKer_c", "X6")
    else:
        xv = x.apply(pt.v)
        if f.contains_vector(xv):
            kind, stratum = "VNotKer_a", "X7"
        else:
            kind, stratum = "VNotKer_b", "X8"
    return CaseTag(kind, k1, k2, h), stratum


def predict_exotic_type_x2(tag: CaseTag, n1: int, n2: int) -> Bipartition:
    """Quotient orbit label from the case tag and the source multiplicities."""
    k1, k2, h = tag.k1, tag.k2, tag.h
    n1p = n1 - k1 + k2 - 2 * h
    n2p = n2 - k2 + h
    if n1p < 0 or n2p < 0:
        raise ValueError(f"parameters out of range: n1'={n1p}, n2'={n2p}")
    letter = _KIND_TARGET[tag.kind]
    if letter == "A":
        return bip((), (2,) * n2p + (1,) * n1p)
    if letter == "B":
        return bip((1,) * n2p, (1,) * (n1p + n2p))
    if letter == "C":
        return bip((1,) * (n1p + n2p), (1,) * n2p)
    return bip((2,) * n2p + (1,) * n1p, ())


def stratum_nonempty(n1: int, n2: int, k: int, k2: int, h: int) -> bool:
    """Admissible (k2, h) for the v = 0 stratum family."""
    return (
        max(0, k - n1) <= k2 <= min(k, 2 * n2)
        and max(0, k2 - n2) <= h
        and 2 * h <= k2
    )


def stratum_valid(stratum: str, n1: int, n2: int, k: int, k2: int, h: int) -> bool:
    """Exact nonemptiness of each fine stratum.

    On top of the common inequalities, each stratum carries the constraints
    forced by where the distinguished vector sits.  The VInKer_c stratum
    has two excluded corners at k1 = n1: isotropy then forces the subspace
    to meet the radical in a line v + w with w in Im(x), so the empty
    intersection condition needs some admissible w outside perp(F cap Im),
    impossible when k2 = 0 (perp is all of Im) or k2 = 2*n2 (w lands inside
    F).  For x = 0 both corners coincide with the familiar k < n rule.
    """
    if not stratum_nonempty(n1, n2, k, k2, h):
        return False
    k1 = k - k2
    m2 = k2 - 2 * h
    n2p = n2 - k2 + h
    if stratum == "X":
        return True
    if stratum == "X1":
        return m2 >= 1
    if stratum == "Y":
        return h >= 1
    if stratum == "X2":
        return n2p >= 1 and k2 <= 2 * n2 - 1
    if stratum == "X3":
        return m2 >= 1 and k2 <= 2 * n2 - 1
    if stratum == "X4":
        return k1 >= 1
    if stratum == "X5":
        return k1 >= 1 and n2p >= 1
    if stratum == "X6":
        return not (k1 == n1 and k2 in (0, 2 * n2))
    if stratum == "X7":
        return m2 >= 1
    if stratum == "X8":
        return n2p >= 1
    raise ValueError(f"unknown stratum {stratum!r}")


def stratum_dim(stratum: str, n1: int, n2: int, k1: int, k2: int, h: int) -> int:
    """Closed dimension of the named stratum."""
    m2 = k2 - 2 * h
    tail = k1 * (2 * n1 + 2 * n2 - k2 - k1) - k1 * (k1 - 1) // 2
    tail_shift = k1 * (2 * n1 + 2 * n2 - k2 - k1 - 1) - k1 * (k1 - 1) // 2
    tail_vinf = (k1 - 1) * (2 * n1 + 2 * n2 - k2 - k1 - 1) - (k1 - 1) * (k1 - 2) // 2
    mid = 2 * h * (2 * n2 - 2 * k2 + 2 * h)
    if stratum == "X":
        return m2 * (2 * n2 - k2 + 2 * h) - m2 * (m2 - 1) // 2 + mid + tail
    if stratum == "X1":
        return (
            (m2 - 1) * (2 * n2 - k2 + 2 * h - 1)
            - (m2 - 1) * (m2 - 2) // 2
            + mid
            + tail
        )
    if stratum == "Y":
        return (
            m2 * (2 * n2 - 1 - k2 + 2 * h)
            - m2 * (m2 - 1) // 2
            + (2 * h - 1) * (2 * n2 - 2 * k2 + 2 * h)
            + tail
        )
    if stratum == "X2":
        return m2 * (2 * n2 - 1 - k2 + 2 * h) - m2 * (m2 - 1) // 2 + mid + tail
    if stratum == "X3":
        return m2 * (2 * n2 - k2 + 2 * h) - m2 * (m2 - 1) // 2 + mid + tail
    if stratum == "X4":
        return m2 * (2 * n2 - k2 + 2 * h) - m2 * (m2 - 1) // 2 + mid + tail_vinf
    if stratum == "X5":
        return (
            m2 * (2 * n2 - k2 + 2 * h)
            - m2 * (m2 - 1) // 2
            + mid
            + (2 * n2 - 2 * k2 + 2 * h)
            + tail_vinf
        )
    if stratum == "X6":
        return m2 * (2 * n2 - k2 + 2 * h) - m2 * (m2 - 1) // 2 + mid + tail_shift
    if stratum == "X7":
        return (
            (m2 - 1) * (2 * n2 - k2 + 2 * h - 1)
            - (m2 - 1) * (m2 - 2) // 2
            + mid
            + tail_shift
        )
    if stratum == "X8":
        return (
            m2 * (2 * n2 - k2 + 2 * h - 1)
            - m2 * (m2 - 1) // 2
            + 2 * h * (2 * n2 - 2 * k2 + 2 * h - 1)
            + tail_shift
        )
    raise ValueError(f"unknown stratum {stratum!r}")


def stratum_census_x2(pt: ExoticPoint, k: int, guard: int = DEFAULT_GUARD):
    """Counts of admissible isotropic k-subspaces per (k2, h, case kind)."""
    fine = stratum_census_x2_fine(pt, k, guard)
    out = {}
    for (k2, h, stratum), c in fine.items():
        key = (k2, h, _case_kind_for(pt, stratum))
        out[key] = out.get(key, 0) + c
    return out


def _case_kind_for(pt, stratum):
    kind = _STRATUM_TO_KIND[stratum]
    if pt.x.is_zero():
        return {"X": "X0V0", "X4": "X0Vne0_vInF", "X6": "X0Vne0_vNotF"}.get(stratum, kind)
    return kind


def stratum_census_x2_fine(pt: ExoticPoint, k: int, guard: int = DEFAULT_GUARD):
    cons = pt.constraint_space()
    est = gaussian_binomial(cons.dim, k, pt.p)
    if est > guard:
        raise GuardExceeded(est, guard)
    out = {}
    for f in enumerate_isotropic(pt.space, k, within=cons):
        stratum, tag = classify_stratum_x2(pt, f)
        key = (tag.k2, tag.h, stratum)
        out[key] = out.get(key, 0) + 1
    return out


def reachable_targets(b: Bipartition, k: int):
    """Targets of one flag step of size k, each with its stratum dimension.

    Returns {target bipartition: (dim, [(stratum, k2, h), ...])}.
    """
    n1, n2 = orbit_row_multiplicities(b)
    kind = source_kind(b)
    out = {}
    for stratum in _SOURCE_STRATA[kind]:
        for k2 in range(0, min(k, 2 * n2) + 1):
            for h in range(0, k2 // 2 + 1):
                if not stratum_valid(stratum, n1, n2, k, k2, h):
                    continue
                tag = CaseTag(_STRATUM_TO_KIND[stratum], k - k2, k2, h)
                tgt = predict_exotic_type_x2(tag, n1, n2)
                dim = stratum_dim(stratum, n1, n2, k - k2, k2, h)
                cur = out.setdefault(tgt, [(-1), []])
                cur[0] = max(cur[0], dim)
                cur[1].append((stratum, k2, h, dim))
    return {t: (v[0], v[1]) for t, v in out.items()}


@lru_cache(maxsize=None)
def _chain_dims_cached(mu_parts, nu_parts, alpha_parts):
    b = bip(mu_parts, nu_parts)
    if not alpha_parts:
        return (((b,), 0),)
    out = {}
    for tgt, (base, _) in reachable_targets(b, alpha_parts[0]).items():
        for chain, d in _chain_dims_cached(tgt.mu.parts, tgt.nu.parts, alpha_parts[1:]):
            out[chain + (b,)] = base + d
    return tuple(sorted(out.items(), key=lambda kv: _chain_sort_key(kv[0])))


def chain_dims(b: Bipartition, alpha: Composition) -> dict:
    """Dimension of every nonempty labelled piece of the fiber, by the
    one-step stratification applied recursively (square-zero pairs only)."""
    orbit_row_multiplicities(b)
    return dict(_chain_dims_cached(b.mu.parts, b.nu.parts, alpha.parts))


# --- count polynomial fitting ---------------------------------------------

def fit_count_polynomial(counts: dict, degree_bound: int):
    """Interpolate a polynomial of degree <= bound through all but the last
    point and validate on the held-out remainder; None on mismatch."""
    pts = sorted(counts.items())
    if len(pts) < degree_bound + 2:
        raise ValueError(
            f"need at least {degree_bound + 2} sample points, got {len(pts)}"
        )
    fit_pts = pts[: degree_bound + 1]
    coeffs = _lagrange(fit_pts)
    for q, c in pts[degree_bound + 1 :]:
        if poly_eval(coeffs, q) != c:
            return None
    return coeffs


def _lagrange(pts):
    n = len(pts)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = _poly_mul_linear(basis, -xj)
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for d, c in enumerate(basis):
            coeffs[d] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(int(c) if c.denominator == 1 else c for c in coeffs)


def _poly_mul_linear(coeffs, root_neg):
    """coeffs * (x + root_neg)."""
    out = [Fraction(0)] * (len(coeffs) + 1)
    for d, c in enumerate(coeffs):
        out[d] += c * root_neg
        out[d + 1] += c
    return out


def poly_eval(coeffs, x):
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return int(total) if total.denominator == 1 else total


def poly_degree(coeffs) -> int:
    d = len(coeffs) - 1
    while d > 0 and coeffs[d] == 0:
        d -= 1
    return d if any(coeffs) else -1


def poly_format(coeffs) -> str:
    if not any(coeffs):
        return "0"
    bits = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = coeffs[d]
        if not c:
            continue
        if d == 0:
            bits.append(str(c))
        elif d == 1:
            bits.append("q" if c == 1 else f"{c}*q")
        else:
            bits.append(f"q^{d}" if c == 1 else f"{c}*q^{d}")
    return " + ".join(bits).replace("+ -", "- ")


# --- the desk-scale top-component check ------------------------------------

def verify_theorem_main(
    n: int,
    b: Bipartition,
    alpha: Composition,
    primes=None,
    guard: int = DEFAULT_GUARD,
) -> dict:
    """Check that the top-degree labelled pieces of the fiber are exactly the
    semistandard chains, everything else strictly lower.

    Small ambient spaces are fitted from exact counts over several primes;
    from n = 3 on the closed stratum recursion supplies dimensions and the
    q = 2 census cross-checks which chains are realized.
    """
    if b.size != n or alpha.size != n:
        raise ValueError("sizes of bipartition and composition must equal n")
    orbit_row_multiplicities(b)  # raises unless square-zero
    d = d_alpha(b, alpha)
    ftype = FlagType(alpha)
    expected = {tuple(c) for c in semistandard_chains(b, alpha)}
    failures = []
    keys = {}
    mode = "fit" if n <= 2 else "strata"

    if mode == "fit":
        if primes is None:
            primes = first_primes(max(d, 0) + 2)
        censuses = {q: fiber_census(b, ftype, q, guard) for q in primes}
        allkeys = sorted({k for c in censuses.values() for k in c}, key=_chain_sort_key)
        strata_dims = chain_dims(b, alpha)
        for chain in allkeys:
            series = {q: censuses[q].get(chain, 0) for q in primes}
            coeffs = fit_count_polynomial(series, max(d, 0))
            rec = {"chain": chain, "series": series}
            if coeffs is None:
                rec["degree"] = None
                failures.append({"chain": chain, "reason": "no polynomial fit"})
            else:
                rec["degree"] = poly_degree(coeffs)
                rec["poly"] = coeffs
                if chain in strata_dims and strata_dims[chain] != rec["degree"]:
                    failures.append(
                        {
                            "chain": chain,
                            "reason": "fitted degree disagrees with stratum recursion",
                            "fit": rec["degree"],
                            "strata": strata_dims[chain],
                        }
                    )
            keys[chain] = rec
        if set(strata_dims) != set(allkeys):
            failures.append(
                {
                    "reason": "census keys differ from stratum recursion keys",
                    "census_only": sorted(
                        set(allkeys) - set(strata_dims), key=_chain_sort_key
                    ),
                    "strata_only": sorted(
                        set(strata_dims) - set(allkeys), key=_chain_sort_key
                    ),
                }
            )
    else:
        strata_dims = chain_dims(b, alpha)
        for chain, dim in sorted(strata_dims.items(), key=lambda kv: _chain_sort_key(kv[0])):
            keys[chain] = {"chain": chain, "degree": dim}
        census = fiber_census(b, ftype, 2, guard)
        if set(census) != set(strata_dims):
            failures.append(
                {
                    "reason": "q=2 census keys differ from stratum recursion keys",
                    "census_only": sorted(set(census) - set(strata_dims), key=_chain_sort_key),
                    "strata_only": sorted(set(strata_dims) - set(census), key=_chain_sort_key),
                }
            )
        for chain in keys:
            keys[chain]["series"] = {2: census.get(chain, 0)}

    top = {c for c, rec in keys.items() if rec.get("degree") == d}
    if top != expected:
        failures.append(
            {
                "reason": "top-degree chains differ from semistandard chains",
                "top_only": sorted(top - expected, key=_chain_sort_key),
                "semistandard_only": sorted(expected - top, key=_chain_sort_key),
            }
        )
    for chain, rec in keys.items():
        deg = rec.get("degree")
        if deg is not None and deg > d:
            failures.append({"chain": chain, "reason": "degree exceeds bound", "degree": deg})

    return {
        "n": n,
        "mu": list(b.mu.parts),
        "nu": list(b.nu.parts),
        "alpha": list(alpha.parts),
        "d_alpha": d,
        "mode": mode,
        "keys": keys,
        "expected_semistandard": sorted(expected, key=_chain_sort_key),
        "passed": not failures,
        "failures": failures,
    }
