"""Exact integer and rational matrix kernels.

Smith normal form runs on a sparse dict-of-dicts representation with
min-magnitude/min-fill pivoting; Python ints make overflow impossible.
Rational elimination (for homology bases and induced maps) uses Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence


@dataclass
class IntMatrix:
    """Sparse integer matrix: entries[(i, j)] = nonzero value."""

    nrows: int
    ncols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        entries = {
            (i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v
        }
        return cls(nrows, ncols, entries)

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.ncols, self.nrows, {(j, i): v for (i, j), v in self.entries.items()}
        )


def _lcm(a: int, b: int) -> int:
    return abs(a // gcd(a, b) * b)


def _invariant_factors(diag: list[int]) -> list[int]:
    """Sorted invariant factors of diag(d_1..d_r) with the divisibility chain."""
    d = [abs(x) for x in diag if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, _lcm(d[i], d[j])
                    changed = True
    return sorted(d)


class _SparseWork:
    """Row/column indexed sparse matrix supporting the SNF pivot loop."""

    def __init__(self, m: IntMatrix):
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (i, j), v in m.entries.items():
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, set()).add(i)

    def set(self, i: int, j: int, v: int) -> None:
        if v:
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, set()).add(i)
        else:
            row = self.rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del self.rows[i]
                col = self.cols[j]
                col.discard(i)
                if not col:
                    del self.cols[j]

    def get(self, i: int, j: int) -> int:
        return self.rows.get(i, {}).get(j, 0)

    def add_row(self, src: int, dst: int, mult: int) -> None:
        """row[dst] += mult * row[src]."""
        if not mult:
            return
        for j, v in list(self.rows.get(src, {}).items()):
            self.set(dst, j, self.get(dst, j) + mult * v)

    def add_col(self, src: int, dst: int, mult: int) -> None:
        if not mult:
            return
        for i in list(self.cols.get(src, set())):
            self.set(i, dst, self.get(i, dst) + mult * self.rows[i][src])

    def pick_pivot(self) -> tuple[int, int] | None:
        best = None
        best_key = None
        for i, row in self.rows.items():
            ln_r = len(row)
            for j, v in row.items():
                key = (abs(v), (ln_r - 1) * (len(self.cols[j]) - 1))
                if best_key is None or key < best_key:
                    best, best_key = (i, j), key
                    if key == (1, 0):
                        return best
        return best


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int]:
    """Invariant factors (d_1 | d_2 | ... | d_r) and the rank r."""
    if not isinstance(m, IntMatrix):
        m = IntMatrix.from_rows(m)
    work = _SparseWork(m)
    diag: list[int] = []
    while True:
        piv = work.pick_pivot()
        if piv is None:
            break
        pi, pj = piv
        # clear the pivot row and column with exact integer operations
        while True:
            v = work.get(pi, pj)
            if v < 0:
                for j in list(work.rows[pi].keys()):
                    work.set(pi, j, -work.get(pi, j))
                v = -v
            progressed = False
            for i in list(work.cols.get(pj, set())):
                if i == pi:
                    continue
                u = work.get(i, pj)
                q = u // v
                work.add_row(pi, i, -q)
                if work.get(i, pj):
                    # remainder became the smaller pivot; swap roles
                    pi = i
                    progressed = True
                    break
            if progressed:
                continue
            for j in list(work.rows.get(pi, {}).keys()):
                if j == pj:
                    continue
                u = work.get(pi, j)
                q = u // v
                work.add_col(pj, j, -q)
                if work.get(pi, j):
                    pj = j
                    progressed = True
                    break
            if not progressed:
                break
        diag.append(abs(work.get(pi, pj)))
        # remove the cleared pivot row/column
        for j in list(work.rows.get(pi, {})):
            work.set(pi, j, 0)
    factors = _invariant_factors(diag)
    return tuple(factors), len(factors)


def integer_rank(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (via the SNF pivot count)."""
    return smith_normal_form(m)[1]


# ----------------------------------------------------------------------------
# Dense rational elimination (Fractions).  Matrices are lists of row lists;
# RatMatrix is the thin carrier used at module boundaries.


@dataclass
class RatMatrix:
    nrows: int
    ncols: int
    rows: list[list[Fraction]]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Fraction]]) -> "RatMatrix":
        mat = [[Fraction(v) for v in r] for r in rows]
        return cls(len(mat), len(mat[0]) if mat else 0, mat)


def frac_matrix(rows: Sequence[Sequence[int | Fraction]]) -> list[list[Fraction]]:
    return [[Fraction(v) for v in r] for r in rows]


def frac_rref(mat: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column indices (in-place copy)."""
    a = [row[:] for row in mat]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return a, pivots


def frac_kernel_basis(mat: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}; columns of A are the unknowns."""
    if not mat:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    rref, pivots = frac_rref(mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -rref[r][free]
        basis.append(vec)
    return basis


class LinearSolver:
    """Repeated exact solves A x = v for a fixed column list A."""

    def __init__(self, columns: list[list[Fraction]], nrows: int):
        self.ncols = len(columns)
        self.nrows = nrows
        # row-major augmented-free elimination with recorded operations
        a = [[columns[j][i] for j in range(self.ncols)] for i in range(nrows)]
        self.ops: list[tuple] = []  # ("swap", i, j) | ("scale", i, f) | ("axpy", i, j, f)
        self.pivots: list[tuple[int, int]] = []  # (row, col)
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, nrows) if a[i][c]), None)
            if piv is None:
                continue
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                self.ops.append(("swap", r, piv))
            f = 1 / a[r][c]
            if f != 1:
                a[r] = [v * f for v in a[r]]
                self.ops.append(("scale", r, f))
            for i in range(nrows):
                if i != r and a[i][c]:
                    g = a[i][c]
                    a[i] = [vi - g * vr for vi, vr in zip(a[i], a[r])]
                    self.ops.append(("axpy", i, r, g))
            self.pivots.append((r, c))
            r += 1
            if r == nrows:
                break
        self.reduced = a

    def solve(self, v: list[Fraction]) -> list[Fraction] | None:
        b = list(v)
        for op in self.ops:
            if op[0] == "swap":
                _, i, j = op
                b[i], b[j] = b[j], b[i]
            elif op[0] == "scale":
                _, i, f = op
                b[i] = b[i] * f
            else:
                _, i, j, g = op
                b[i] = b[i] - g * b[j]
        x = [Fraction(0)] * self.ncols
        pivot_rows = {r for r, _ in self.pivots}
        for r, c in self.pivots:
            x[c] = b[r]
        for i in range(self.nrows):
            if i not in pivot_rows and b[i]:
                return None
        return x


__all__ = [
    "IntMatrix",
    "RatMatrix",
    "smith_normal_form",
    "integer_rank",
    "frac_matrix",
    "frac_rref",
    "frac_kernel_basis",
    "LinearSolver",
]
