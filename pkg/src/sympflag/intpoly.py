"""Exact multivariate integer polynomials and the dimension-difference
identity catalog.

Variables are fixed as (n1, n2, k, k1, k2, h).  The identities relate the
drop of the top-dimension statistic across one flag step to the closed
stratum dimension; the individual ingredients carry 1/2 factors that only
cancel in the combination, so the catalog verifies every identity with
both sides scaled by 2, keeping all arithmetic in Z.
"""

from __future__ import annotations

from dataclasses import dataclass

VARS = ("n1", "n2", "k", "k1", "k2", "h")
_VIDX = {v: i for i, v in enumerate(VARS)}


class IntPoly:
    """Polynomial in VARS with integer coefficients, canonical term order."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls({(0,) * len(VARS): int(c)})

    @classmethod
    def var(cls, name: str) -> "IntPoly":
        e = [0] * len(VARS)
        e[_VIDX[name]] = 1
        return cls({tuple(e): 1})

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return IntPoly(out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return IntPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return IntPoly(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def substitute(self, bindings: dict) -> "IntPoly":
        """Simultaneous substitution var -> IntPoly, expanded."""
        polys = {name: _coerce(val) for name, val in bindings.items()}
        out = IntPoly()
        for exps, c in self.terms.items():
            term = IntPoly.const(c)
            for name, e in zip(VARS, exps):
                if not e:
                    continue
                base = polys.get(name, IntPoly.var(name))
                for _ in range(e):
                    term = term * base
            out = out + term
        return out

    def evaluate(self, values: dict) -> int:
        total = 0
        for exps, c in self.terms.items():
            t = c
            for name, e in zip(VARS, exps):
                if e:
                    t *= values[name] ** e
            total += t
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(VARS, exps) if e
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"IntPoly({self})"


def _coerce(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    if isinstance(x, int):
        return IntPoly.const(x)
    raise TypeError(f"cannot coerce {x!r}")


def poly_arith(a: IntPoly, b: IntPoly, op: str) -> IntPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute(p: IntPoly, bindings: dict) -> IntPoly:
    return p.substitute(bindings)


N1, N2, K, K1, K2, H = (IntPoly.var(v) for v in VARS)


def double_n_stat(a, b) -> IntPoly:
    """2*N of the two-column hook shape with a rows of 2 and b rows of 1."""
    a, b = _coerce(a), _coerce(b)
    return (a + b) * (a + b - 1) + a * (a - 1)


# exponents of the one-step-smaller shape
N2P = N2 - K2 + H
N1P = N1 - K1 + K2 - IntPoly.const(2) * H
M2 = K2 - IntPoly.const(2) * H  # dim of the induced-form radical inside F


def _common_tail() -> IntPoly:
    """2 * [ k1(2n1+2n2-k2-k1) - k1(k1-1)/2 ], shared by the v=0 strata."""
    return 2 * K1 * (2 * N1 + 2 * N2 - K2 - K1) - K1 * (K1 - 1)


def _common_tail_shift() -> IntPoly:
    """Same with the ambient shrunk by the line through v (or xv)."""
    return 2 * K1 * (2 * N1 + 2 * N2 - K2 - K1 - 1) - K1 * (K1 - 1)


def _common_tail_vinF() -> IntPoly:
    return 2 * (K1 - 1) * (2 * N1 + 2 * N2 - K2 - K1 - 1) - (K1 - 1) * (K1 - 2)


def stratum_dim_doubled(stratum: str) -> IntPoly:
    """2 * (closed dimension formula) of the named stratum, as an IntPoly."""
    two = IntPoly.const(2)
    if stratum == "X":
        return (
            two * M2 * (2 * N2 - K2 + 2 * H)
            - M2 * (M2 - 1)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail()
        )
    if stratum == "X1":
        return (
            two * (M2 - 1) * (2 * N2 - K2 + 2 * H - 1)
            - (M2 - 1) * (M2 - 2)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail()
        )
    if stratum == "Y":
        return (
            two * M2 * (2 * N2 - 1 - K2 + 2 * H)
            - M2 * (M2 - 1)
            + two * (2 * H - 1) * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail()
        )
    if stratum == "X2":
        return (
            two * M2 * (2 * N2 - 1 - K2 + 2 * H)
            - M2 * (M2 - 1)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail()
        )
    if stratum == "X3":
        return (
            two * M2 * (2 * N2 - K2 + 2 * H)
            - M2 * (M2 - 1)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail()
        )
    if stratum == "X4":
        return (
            two * M2 * (2 * N2 - K2 + 2 * H)
            - M2 * (M2 - 1)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail_vinF()
        )
    if stratum == "X5":
        return (
            two * M2 * (2 * N2 - K2 + 2 * H)
            - M2 * (M2 - 1)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + two * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail_vinF()
        )
    if stratum == "X6":
        return (
            two * M2 * (2 * N2 - K2 + 2 * H)
            - M2 * (M2 - 1)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail_shift()
        )
    if stratum == "X7":
        return (
            two * (M2 - 1) * (2 * N2 - K2 + 2 * H - 1)
            - (M2 - 1) * (M2 - 2)
            + 4 * H * (2 * N2 - 2 * K2 + 2 * H)
            + _common_tail_shift()
        )
    if stratum == "X8":
        return (
            two * M2 * (2 * N2 - K2 + 2 * H - 1)
            - M2 * (M2 - 1)
            + two * (2 * H) * (2 * N2 - 2 * K2 + 2 * H - 1)
            + _common_tail_shift()
        )
    raise ValueError(f"unknown stratum {stratum!r}")


@dataclass(frozen=True)
class IdentityRow:
    name: str
    stratum: str
    nu_size: IntPoly  # |nu| of the source shape
    nu_size_next: IntPoly  # |nu'| of the target shape
    rhs: IntPoly  # stated difference d - d' - dim


IDENTITY_CATALOG: tuple[IdentityRow, ...] = (
    IdentityRow("diff-dd-dim", "X", 2 * N2 + N1, 2 * N2P + N1P, H * (2 * N1 - 2 * K1 + 1)),
    IdentityRow(
        "diff-dd-dimX",
        "X1",
        N1 + N2,
        2 * N2P + N1P,
        2 * H * (N1 - K1 + 1) + N2 - K2 + H,
    ),
    IdentityRow(
        "diff-dd-dimY", "Y", N1 + N2, 2 * N2P + N1P, 2 * H * (N1 - K1) + N2 - K2 + H
    ),
    IdentityRow("diff-dd-dimX-1", "X2", N1 + N2, N1P + N2P, 2 * H * (N1 - K1)),
    IdentityRow("diff-dd-dimX-2", "X3", N1 + N2, N2P, (2 * H + 1) * (N1 - K1)),
    IdentityRow(
        "diff-dd-dimX-3",
        "X4",
        N2,
        2 * N2P + N1P,
        (2 * H + 1) * (N1 - K1) + N2 - K2 + H,
    ),
    IdentityRow("diff-dd-dimX-4", "X5", N2, N1P + N2P, (2 * H + 1) * (N1 - K1)),
    IdentityRow("diff-dd-dimX-5", "X6", N2, N2P, 2 * H * (N1 - K1)),
    IdentityRow(
        "diff-dd-dimX-6",
        "X7",
        IntPoly.const(0),
        N2P,
        H * (2 * N1 - 2 * K1 + 1) + N2 - K2 + H,
    ),
    IdentityRow("diff-dd-dimX-7", "X8", IntPoly.const(0), IntPoly.const(0), H * (2 * N1 - 2 * K1 + 1)),
)


def identity_lhs_doubled(row: IdentityRow) -> IntPoly:
    """2*(d - d' - dim stratum) assembled from the catalogued ingredients,
    with k eliminated through k = k1 + k2."""
    lhs = (
        2 * double_n_stat(N2, N1)
        + 2 * row.nu_size
        - 2 * double_n_stat(N2P, N1P)
        - 2 * row.nu_size_next
        - K * (K - 1)
        - stratum_dim_doubled(row.stratum)
    )
    return lhs.substitute({"k": K1 + K2})


def verify_identity_catalog(catalog=IDENTITY_CATALOG) -> list[dict]:
    """Check each catalogued identity as an exact polynomial identity."""
    report = []
    for row in catalog:
        diff = identity_lhs_doubled(row) - 2 * row.rhs
        report.append(
            {
                "identity": row.name,
                "stratum": row.stratum,
                "passed": diff.is_zero(),
                "residual": str(diff),
            }
        )
    return report
