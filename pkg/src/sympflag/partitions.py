"""Integer partitions, compositions, bipartitions and bitableaux.

Conventions used throughout the package:

* a partition stores its nonzero parts only, weakly decreasing; any index
  past the end reads as 0;
* a bipartition is an ordered pair of partitions (mu, nu);
* a growth chain is a tuple of bipartitions starting at ((), ()) whose
  sizes increase by the reversed parts of the flag composition; labelling
  the boxes added at growth step t with the number t turns a nested chain
  into a bitableau;
* bitableau fillings are stored row major and left justified in both
  diagrams.  The mirrored display of the first diagram is cosmetic, so
  "strictly increasing towards the wall" reads, on the stored rows, as
  strictly increasing left to right in both diagrams.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache


class NotNested:
    """Marker value: a chain of bipartitions that fails shape containment."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotNested"


NOT_NESTED = NotNested()


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts if p))
        parts = self.parts
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"parts must be positive, got {p}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        """1-based part access; indices past the length read as 0."""
        if i < 1:
            raise IndexError("parts are 1-indexed")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def __le__(self, other: "Partition") -> bool:
        """Containment of Young diagrams."""
        return all(self[i] <= other[i] for i in range(1, len(self.parts) + 1))

    def __add__(self, other: "Partition") -> "Partition":
        m = max(len(self), len(other))
        return Partition(tuple(self[i] + other[i] for i in range(1, m + 1)))

    def union(self, other: "Partition") -> "Partition":
        return Partition(tuple(sorted(self.parts + other.parts, reverse=True)))

    def transpose(self) -> "Partition":
        if not self.parts:
            return Partition()
        return Partition(
            tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1))
        )

    def multiplicity(self, j: int) -> int:
        """Number of parts equal to j."""
        return sum(1 for p in self.parts if p == j)

    def n_stat(self) -> int:
        """The moment sum((i-1) * part_i) over 1-based rows."""
        return sum(i * p for i, p in enumerate(self.parts))

    def __repr__(self):
        return f"Partition({self.parts})"


def add_partitions(a: Partition, b: Partition) -> Partition:
    return a + b


def union_partitions(a: Partition, b: Partition) -> Partition:
    return a.union(b)


def transpose(a: Partition) -> Partition:
    return a.transpose()


def n_stat(a: Partition) -> int:
    return a.n_stat()


@dataclass(frozen=True)
class Composition:
    """A finite sequence of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 1 for p in self.parts):
            raise ValueError(f"composition parts must be >= 1: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def doubled(self) -> tuple[int, ...]:
        """Palindromic doubling (a1,..,am,am,..,a1)."""
        return self.parts + tuple(reversed(self.parts))

    def partial_sums(self) -> tuple[int, ...]:
        """Partial sums of the doubled composition, starting at 0."""
        out = [0]
        for a in self.doubled():
            out.append(out[-1] + a)
        return tuple(out)

    def __repr__(self):
        return f"Composition({self.parts})"


@dataclass(frozen=True)
class Bipartition:
    mu: Partition = Partition()
    nu: Partition = Partition()

    @property
    def size(self) -> int:
        return self.mu.size + self.nu.size

    def contains(self, other: "Bipartition") -> bool:
        return other.mu <= self.mu and other.nu <= self.nu

    def sort_key(self):
        return (self.mu.size, self.mu.parts, self.nu.parts)

    def __repr__(self):
        return f"Bipartition({self.mu.parts}, {self.nu.parts})"


def bip(mu, nu) -> Bipartition:
    """Shorthand constructor from raw part sequences."""
    return Bipartition(Partition(tuple(mu)), Partition(tuple(nu)))


EMPTY_BIP = bip((), ())


@lru_cache(maxsize=None)
def enumerate_partitions(m: int) -> tuple[Partition, ...]:
    """All partitions of m, sorted lexicographically on their part tuples."""
    if m < 0:
        raise ValueError("m must be nonnegative")

    def gen(rest, max_part):
        if rest == 0:
            yield ()
            return
        for first in range(1, min(rest, max_part) + 1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    found = sorted(gen(m, m))
    return tuple(Partition(p) for p in found)


def enumerate_bipartitions(n: int) -> list[Bipartition]:
    """All bipartitions of n, ordered lexicographically on (|mu|, mu, nu)."""
    out = []
    for a in range(n + 1):
        for mu in enumerate_partitions(a):
            for nu in enumerate_partitions(n - a):
                out.append(Bipartition(mu, nu))
    return out


def d_alpha(b: Bipartition, alpha: Composition) -> int:
    """Top dimension statistic 2*N(mu+nu) + |nu| - sum (a_i^2-a_i)/2."""
    if b.size != alpha.size:
        raise ValueError(f"bipartition size {b.size} != composition size {alpha.size}")
    return 2 * (b.mu + b.nu).n_stat() + b.nu.size - sum(a * (a - 1) for a in alpha) // 2


@dataclass(frozen=True)
class Bitableau:
    """A pair of filled Young diagrams; fillings row major, left justified."""

    shape: Bipartition
    fill1: tuple[tuple[int, ...], ...]
    fill2: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for fill, lam in ((self.fill1, self.shape.mu), (self.fill2, self.shape.nu)):
            if tuple(len(r) for r in fill) != lam.parts:
                raise ValueError("filling does not match shape")

    def content(self) -> tuple[int, ...]:
        """Multiplicities of the labels 1..max, as a tuple."""
        labels = [e for fill in (self.fill1, self.fill2) for row in fill for e in row]
        if not labels:
            return ()
        top = max(labels)
        return tuple(labels.count(i) for i in range(1, top + 1))

    def to_json(self) -> dict:
        return {
            "shape": bipartition_to_json(self.shape),
            "fill1": [list(r) for r in self.fill1],
            "fill2": [list(r) for r in self.fill2],
        }

    def __repr__(self):
        return f"Bitableau({self.fill1}, {self.fill2})"


def sequence_sizes_match(chain: tuple[Bipartition, ...], alpha: Composition) -> bool:
    """Chain starts empty, ends at size |alpha|, grows by reversed alpha."""
    if len(chain) != len(alpha) + 1 or chain[0].size != 0:
        return False
    rev = tuple(reversed(alpha.parts))
    return all(chain[t].size - chain[t - 1].size == rev[t - 1] for t in range(1, len(chain)))


def sequence_to_bitableau(chain: tuple[Bipartition, ...]):
    """Fill the growth chain into a bitableau, or NOT_NESTED.

    The chain runs from ((),()) up to the full shape; boxes added at the
    t-th growth step are labelled t.
    """
    for t in range(1, len(chain)):
        if not chain[t].contains(chain[t - 1]):
            return NOT_NESTED
    shape = chain[-1]
    rows1 = [[0] * p for p in shape.mu.parts]
    rows2 = [[0] * p for p in shape.nu.parts]
    for t in range(1, len(chain)):
        prev, cur = chain[t - 1], chain[t]
        for rows, old, new in ((rows1, prev.mu, cur.mu), (rows2, prev.nu, cur.nu)):
            for i in range(1, len(new) + 1):
                for c in range(old[i], new[i]):
                    rows[i - 1][c] = t
    return Bitableau(shape, tuple(tuple(r) for r in rows1), tuple(tuple(r) for r in rows2))


def bitableau_to_sequence(t: Bitableau) -> tuple[Bipartition, ...]:
    """Inverse of sequence_to_bitableau on nested chains."""
    m = max([1] + [e for row in t.fill1 + t.fill2 for e in row]) if t.shape.size else 0
    chain = []
    for level in range(m + 1):
        mu = Partition(tuple(sum(1 for e in row if e <= level) for row in t.fill1))
        nu = Partition(tuple(sum(1 for e in row if e <= level) for row in t.fill2))
        chain.append(Bipartition(mu, nu))
    return tuple(chain)


def is_semistandard(t: Bitableau, alpha: Composition) -> bool:
    """Rows strictly increase towards larger columns, columns weakly down.

    The label multiset must match the flag composition: the t-th growth
    step adds alpha_{m+1-t} boxes, so label t occurs alpha_{m+1-t} times.
    """
    expected = tuple(p for p in reversed(alpha.parts))
    if t.content() != expected:
        raise ValueError(f"content {t.content()} does not match composition {alpha.parts}")
    for fill in (t.fill1, t.fill2):
        for row in fill:
            if any(row[i] >= row[i + 1] for i in range(len(row) - 1)):
                return False
        for i in range(1, len(fill)):
            upper, lower = fill[i - 1], fill[i]
            if any(upper[c] > lower[c] for c in range(len(lower))):
                return False
    return True


def _strip_removals(lam: Partition, k: int) -> list[Partition]:
    """All partitions obtained from lam by removing k boxes, no two in a row."""
    rows = len(lam.parts)
    out = []

    def rec(i, left, acc):
        if i == rows:
            if left == 0:
                out.append(Partition(tuple(acc)))
            return
        if left > rows - i:
            return
        for removed in (0, 1):
            if removed > left:
                continue
            part = lam.parts[i] - removed
            if part < 0 or (acc and acc[-1] < part):
                continue
            rec(i + 1, left - removed, acc + [part])

    rec(0, k, [])
    return out


def vertical_strip_children(b: Bipartition, k: int) -> list[Bipartition]:
    """Bipartitions reached from b by removing k boxes, a strip per diagram."""
    out = []
    for k1 in range(k + 1):
        for mu2 in _strip_removals(b.mu, k1):
            for nu2 in _strip_removals(b.nu, k - k1):
                out.append(Bipartition(mu2, nu2))
    out.sort(key=Bipartition.sort_key)
    return out


def is_vertical_strip_removal(frm: Bipartition, to: Bipartition, k: int) -> bool:
    """True iff to sits inside frm, k boxes away, no two removed per row."""
    if not frm.contains(to) or frm.size - to.size != k:
        return False
    for big, small in ((frm.mu, to.mu), (frm.nu, to.nu)):
        for i in range(1, len(big.parts) + 1):
            if big[i] - small[i] > 1:
                return False
    return True


def enumerate_semistandard(b: Bipartition, alpha: Composition) -> list[Bitableau]:
    """All semistandard bitableaux of the given shape and flag composition."""
    if b.size != alpha.size:
        raise ValueError("size mismatch between shape and composition")
    chains = semistandard_chains(b, alpha)
    return [sequence_to_bitableau(c) for c in chains]


def semistandard_chains(b: Bipartition, alpha: Composition) -> list[tuple[Bipartition, ...]]:
    """Growth chains of semistandard bitableaux, sorted, as tuples."""

    def rec(shape, parts):
        if not parts:
            return [(shape,)] if shape.size == 0 else []
        out = []
        for child in vertical_strip_children(shape, parts[0]):
            for tail in rec(child, parts[1:]):
                out.append(tail + (shape,))
        return out

    chains = rec(b, alpha.parts)
    chains.sort(key=lambda ch: tuple(s.sort_key() for s in ch))
    return chains


# --- JSON encoding -------------------------------------------------------

def partition_to_json(p: Partition) -> list:
    return list(p.parts)


def bipartition_to_json(b: Bipartition) -> dict:
    return {"mu": list(b.mu.parts), "nu": list(b.nu.parts)}


def bipartition_from_json(d: dict) -> Bipartition:
    return bip(d["mu"], d["nu"])


def chain_to_json(chain: tuple[Bipartition, ...]) -> str:
    return json.dumps([bipartition_to_json(b) for b in chain], separators=(",", ":"))


def parse_parts(text: str) -> tuple[int, ...]:
    """Parse a comma separated part list; empty string is the empty tuple."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))
