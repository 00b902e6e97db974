"""GF(2) linear algebra on int bitsets: group elements, subspaces, matrices.

Bit i of an int carries the coefficient of the generator e_{i+1}, so the
string form reads left to right: "110" is e_1 + e_2.  Everything here is
exact and immutable; no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_RANK = 16


class Gf2Error(ValueError):
    """Malformed GF(2) data: width mismatch, bad bit-string, rank overflow."""


def parse_bits(s: str, n: int) -> int:
    """Parse a width-n bit-string, leftmost character = coefficient of e_1."""
    if len(s) != n or any(c not in "01" for c in s):
        raise Gf2Error(f"expected a width-{n} bit-string of 0/1, got {s!r}")
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def bits_to_string(bits: int, n: int) -> str:
    return "".join("1" if bits >> i & 1 else "0" for i in range(n))


@dataclass(frozen=True, order=True)
class GroupElement:
    """Element of (Z2)^n; the group operation is bitwise XOR."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_RANK:
            raise Gf2Error(f"ambient rank must be 1..{MAX_RANK}, got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise Gf2Error(f"bits {self.bits} out of range for rank {self.n}")

    @classmethod
    def from_string(cls, s: str, n: int | None = None) -> "GroupElement":
        width = len(s) if n is None else n
        return cls(width, parse_bits(s, width))

    @classmethod
    def zero(cls, n: int) -> "GroupElement":
        return cls(n, 0)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.n != self.n:
            raise Gf2Error("cannot add elements of different ambient rank")
        return GroupElement(self.n, self.bits ^ other.bits)

    __xor__ = __add__

    def is_zero(self) -> bool:
        return self.bits == 0

    def __str__(self) -> str:
        return bits_to_string(self.bits, self.n)


def _rref(rows: Iterable[int], n: int) -> tuple[int, ...]:
    """Reduced row echelon basis of the span, pivots in increasing bit order."""
    basis: list[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
            # keep fully reduced: clear the new pivot from earlier rows
            low = row & -row
            for i, b in enumerate(basis[:-1]):
                if b & low:
                    basis[i] = b ^ row
    basis.sort(key=lambda r: r & -r)
    return tuple(basis)


@dataclass(frozen=True)
class Subgroup:
    """GF(2)-subspace of (Z2)^n in canonical reduced-echelon form.

    Equality of subgroups is equality of the canonical bases.
    """

    n: int
    basis: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @classmethod
    def span(cls, gens: Iterable[int], n: int) -> "Subgroup":
        return cls(n, _rref(gens, n))

    @classmethod
    def trivial(cls, n: int) -> "Subgroup":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subgroup":
        return cls(n, tuple(1 << i for i in range(n)))

    def reduce(self, bits: int) -> int:
        """Canonical representative of the coset bits + self."""
        for b in self.basis:
            if bits & (b & -b):
                bits ^= b
        return bits

    def contains(self, bits: int) -> bool:
        return self.reduce(bits) == 0

    def contains_subgroup(self, other: "Subgroup") -> bool:
        return all(self.contains(b) for b in other.basis)

    def elements(self) -> list[int]:
        out = [0]
        for b in self.basis:
            out += [x ^ b for x in out]
        return sorted(out)

    def coset_representatives(self) -> list[int]:
        seen = sorted({self.reduce(x) for x in range(1 << self.n)})
        return seen

    def __str__(self) -> str:
        return "{" + ", ".join(bits_to_string(b, self.n) for b in self.basis) + "}"


def subgroup_span(gens: Sequence[GroupElement], n: int | None = None) -> Subgroup:
    """Canonical subgroup spanned by the given elements.

    The span of the empty sequence is the trivial subgroup (n required then).
    """
    ranks = {g.n for g in gens}
    if len(ranks) > 1:
        raise Gf2Error(f"mixed ambient ranks in span: {sorted(ranks)}")
    if ranks:
        if n is not None and n != next(iter(ranks)):
            raise Gf2Error("ambient rank disagrees with generators")
        n = next(iter(ranks))
    if n is None:
        raise Gf2Error("ambient rank needed for an empty generating set")
    return Subgroup.span((g.bits for g in gens), n)


@dataclass(frozen=True)
class Gf2Matrix:
    """Dense GF(2) matrix; row i is an int bitmask over columns."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != self.nrows:
            raise Gf2Error("row count mismatch")
        if any(r >> self.ncols for r in self.rows):
            raise Gf2Error("row wider than ncols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Gf2Matrix":
        ncols = len(rows[0]) if rows else 0
        packed = tuple(
            sum((1 << j) for j, v in enumerate(r) if v & 1) for r in rows
        )
        return cls(len(packed), ncols, packed)

    @classmethod
    def from_bitrows(cls, rows: Sequence[int], ncols: int) -> "Gf2Matrix":
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        return self.rows[i] >> j & 1

    def transpose(self) -> "Gf2Matrix":
        cols = [
            sum(((self.rows[i] >> j) & 1) << i for i in range(self.nrows))
            for j in range(self.ncols)
        ]
        return Gf2Matrix(self.ncols, self.nrows, tuple(cols))

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def apply(self, bits: int) -> int:
        """Image of the row vector `bits`: XOR of the rows at its set bits."""
        out = 0
        i = 0
        while bits:
            if bits & 1:
                out ^= self.rows[i]
            bits >>= 1
            i += 1
        return out

    def mul(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise Gf2Error("dimension mismatch in matrix product")
        return Gf2Matrix(
            self.nrows, other.ncols, tuple(other.apply(r) for r in self.rows)
        )

    def __str__(self) -> str:
        return "\n".join(bits_to_string(r, self.ncols) for r in self.rows)


def gf2_rank(rows: Iterable[int] | Gf2Matrix, ncols: int | None = None) -> int:
    """Rank of a GF(2) matrix given as row bitmasks (or a Gf2Matrix)."""
    if isinstance(rows, Gf2Matrix):
        rows = rows.rows
    return len(_rref(rows, ncols or 0))


def gf2_nullspace(rows: Sequence[int], ncols: int) -> list[int]:
    """Basis of {x : every row r has parity(r & x) = 0}, x over ncols bits."""
    basis = list(_rref(rows, ncols))
    pivots = {(b & -b).bit_length() - 1 for b in basis}
    out = []
    for j in range(ncols):
        if j in pivots:
            continue
        vec = 1 << j
        for b in basis:
            if b >> j & 1:
                vec |= 1 << ((b & -b).bit_length() - 1)
        out.append(vec)
    return out


def gf2_solve(rows: Sequence[int], ncols: int, rhs: Sequence[int]) -> int | None:
    """Solve M x = b over GF(2); rows are bitmasks, rhs a 0/1 sequence.

    Returns one solution as a bitmask over ncols bits, or None.
    """
    aug = [r | ((rhs[i] & 1) << ncols) for i, r in enumerate(rows)]
    basis: list[int] = []
    for row in aug:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
            low = row & -row
            for i, b in enumerate(basis[:-1]):
                if b & low:
                    basis[i] = b ^ row
    sol = 0
    for b in basis:
        low = b & -b
        piv = low.bit_length() - 1
        if piv >= ncols:
            return None  # inconsistent: pivot in the augmented column
        if b >> ncols & 1:
            sol |= 1 << piv
    return sol


def enumerate_glnq2(n: int) -> list[Gf2Matrix]:
    """All invertible n x n matrices over GF(2), each exactly once.

    Guarded at n <= 4; the count is prod_{i<n} (2^n - 2^i).
    """
    if not 1 <= n <= 4:
        raise Gf2Error(f"GL(n,2) enumeration supported for n <= 4, got {n}")
    out: list[Gf2Matrix] = []

    def rec(rows: list[int], span: frozenset[int]) -> None:
        if len(rows) == n:
            out.append(Gf2Matrix(n, n, tuple(rows)))
            return
        for r in range(1, 1 << n):
            if r not in span:
                rec(rows + [r], span | frozenset(s ^ r for s in span))

    rec([], frozenset([0]))
    return out


def extend_to_automorphism(
    pairs: Sequence[tuple[int, int]], n: int
) -> Gf2Matrix | None:
    """An invertible matrix M with row-vector action x -> xM sending each x to y.

    Returns None when no linear automorphism is consistent with the pairs.
    """
    # Eliminate on the x-part; a zero x-part with nonzero y-part kills linearity,
    # and a zero y-part for an independent x kills invertibility.
    rows = [x | (y << n) for x, y in pairs]
    basis: list[int] = []
    mask_x = (1 << n) - 1
    for row in rows:
        for b in basis:
            xb = b & mask_x
            if row & (xb & -xb):
                row ^= b
        x = row & mask_x
        if x == 0:
            if row:
                return None  # relation among x's not satisfied by y's
            continue
        basis.append(row)
        # keep x-parts fully reduced against the new pivot
        low = x & -x
        for i, b in enumerate(basis[:-1]):
            if b & low:
                basis[i] = b ^ row
    # check the y-parts of the echelon x-basis are independent
    if gf2_rank([b >> n for b in basis]) != len(basis):
        return None
    # complete both sides to bases of (Z2)^n
    x_span = Subgroup.span([b & mask_x for b in basis], n)
    y_span = Subgroup.span([b >> n for b in basis], n)
    full_pairs = [(b & mask_x, b >> n) for b in basis]
    xs, ys = x_span, y_span
    for e in range(n):
        if not xs.contains(1 << e):
            for f in range(n):
                if not ys.contains(1 << f):
                    full_pairs.append((1 << e, 1 << f))
                    xs = Subgroup.span([p for p, _ in full_pairs], n)
                    ys = Subgroup.span([q for _, q in full_pairs], n)
                    break
    # rows of M are the images of e_1..e_n: solve B M = C with B invertible
    bmat = [p for p, _ in full_pairs]
    cmat = [q for _, q in full_pairs]
    # invert B by Gauss-Jordan on [B | I]
    aug = [bmat[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i] >> col & 1)
        aug[col], aug[piv] = aug[piv], aug[col]
        for i in range(n):
            if i != col and aug[i] >> col & 1:
                aug[i] ^= aug[col]
    binv_rows = [aug[i] >> n for i in range(n)]
    m_rows = []
    for i in range(n):
        acc = 0
        row = binv_rows[i]
        for j in range(n):
            if row >> j & 1:
                acc ^= cmat[j]
        m_rows.append(acc)
    mat = Gf2Matrix(n, n, tuple(m_rows))
    if not mat.is_invertible():
        return None
    for x, y in pairs:
        if mat.apply(x) != y:
            return None
    return mat


__all__ = [
    "MAX_RANK",
    "Gf2Error",
    "GroupElement",
    "Subgroup",
    "Gf2Matrix",
    "parse_bits",
    "bits_to_string",
    "subgroup_span",
    "gf2_rank",
    "gf2_nullspace",
    "gf2_solve",
    "enumerate_glnq2",
    "extend_to_automorphism",
]
