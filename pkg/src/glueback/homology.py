"""Exact homology of Delta-complexes over GF(2), Q and Z.

Mod-2 Betti numbers come from bitset Gaussian elimination; integral
torsion and rational ranks from sparse Smith normal form; induced maps
and Lefschetz numbers from explicit rational cycle bases (Fractions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .delta import DeltaComplex
from .exact import LinearSolver, frac_kernel_basis, smith_normal_form
from .gf2 import gf2_rank

Coefficients = Literal["gf2", "rational", "integral"]


@dataclass(frozen=True)
class HomologyProfile:
    """Betti numbers over GF(2) and Q, integral torsion, chi, orientability.

    torsion[k] lists the invariant factors (> 1) of H_k(Z).  orientable is
    None when the complex is not a closed pseudo-manifold; for several
    components it means every component is orientable.
    """

    gf2_betti: tuple[int, ...]
    rational_betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int
    orientable: bool | None
    components: int

    def __post_init__(self):
        alt2 = sum((-1) ** k * b for k, b in enumerate(self.gf2_betti))
        altq = sum((-1) ** k * b for k, b in enumerate(self.rational_betti))
        if not (alt2 == altq == self.euler):
            raise AssertionError(
                f"universal-coefficients inconsistency: {alt2} {altq} {self.euler}"
            )


def _gf2_boundary_ranks(dc: DeltaComplex) -> list[int]:
    """rank of the mod-2 boundary C_k -> C_{k-1} for k = 0..dim+1 (0 at ends)."""
    ranks = [0]
    for k in range(1, dc.dim + 1):
        cols, _ = dc.boundary_gf2(k)
        ranks.append(gf2_rank(cols))
    ranks.append(0)
    return ranks


def _int_data(dc: DeltaComplex) -> list[tuple[tuple[int, ...], int]]:
    """(invariant factors, rank) of each integral boundary map."""
    key = "intdata"
    if key not in dc._cache:
        out = [((), 0)]
        for k in range(1, dc.dim + 1):
            out.append(smith_normal_form(dc.boundary_int(k)))
        out.append(((), 0))
        dc._cache[key] = out
    return dc._cache[key]


def gf2_betti(dc: DeltaComplex) -> tuple[int, ...]:
    key = "gf2betti"
    if key not in dc._cache:
        ranks = _gf2_boundary_ranks(dc)
        dc._cache[key] = tuple(
            dc.counts[k] - ranks[k] - ranks[k + 1] for k in range(dc.dim + 1)
        )
    return dc._cache[key]


def rational_betti(dc: DeltaComplex) -> tuple[int, ...]:
    data = _int_data(dc)
    return tuple(
        dc.counts[k] - data[k][1] - data[k + 1][1] for k in range(dc.dim + 1)
    )


def integral_homology(dc: DeltaComplex) -> list[tuple[int, tuple[int, ...]]]:
    """Per degree: (free rank, invariant factors > 1) of H_k(Z)."""
    data = _int_data(dc)
    out = []
    for k in range(dc.dim + 1):
        betti = dc.counts[k] - data[k][1] - data[k + 1][1]
        torsion = tuple(d for d in data[k + 1][0] if d > 1)
        out.append((betti, torsion))
    return out


def homology(dc: DeltaComplex, coefficients: Coefficients = "gf2"):
    """Betti numbers (gf2/rational) or (betti, torsion) pairs (integral)."""
    if coefficients == "gf2":
        return gf2_betti(dc)
    if coefficients == "rational":
        return rational_betti(dc)
    if coefficients == "integral":
        return integral_homology(dc)
    raise ValueError(f"unknown coefficient system {coefficients!r}")


def orientable_flag(dc: DeltaComplex) -> bool | None:
    """True iff each component's top rational homology is a line; None if not closed."""
    if dc.total_cells() == 0 or not dc.is_closed_pseudomanifold():
        return None
    ncomp = dc.n_components()
    return rational_betti(dc)[dc.dim] == ncomp


def full_profile(dc: DeltaComplex) -> HomologyProfile:
    integral = integral_homology(dc)
    return HomologyProfile(
        gf2_betti=gf2_betti(dc),
        rational_betti=tuple(b for b, _ in integral),
        torsion=tuple(t for _, t in integral),
        euler=dc.euler_characteristic(),
        orientable=orientable_flag(dc),
        components=dc.n_components(),
    )


# ---------------------------------------------------------------------------
# rational homology with explicit bases (for induced maps and traces)


class RationalChainHomology:
    """Cycle/boundary bases of C_*(dc; Q) supporting induced-map matrices."""

    def __init__(self, dc: DeltaComplex):
        self.dc = dc
        self._degree: dict[int, tuple] = {}

    def _dense_boundary(self, k: int) -> list[list[Fraction]]:
        m = self.dc.boundary_int(k)
        rows = [[Fraction(0)] * m.ncols for _ in range(m.nrows)]
        for (i, j), v in m.entries.items():
            rows[i][j] = Fraction(v)
        return rows

    def _setup(self, k: int):
        if k in self._degree:
            return self._degree[k]
        dc = self.dc
        nk = dc.counts[k] if k <= dc.dim else 0
        if nk == 0:
            self._degree[k] = ([], None, [])
            return self._degree[k]
        if k == 0:
            cycles = [
                [Fraction(int(i == j)) for i in range(nk)] for j in range(nk)
            ]
        else:
            cycles = frac_kernel_basis(self._dense_boundary(k), nk)
        boundaries: list[list[Fraction]] = []
        if k + 1 <= dc.dim and dc.counts[k + 1]:
            m = self.dc.boundary_int(k + 1)
            cols: dict[int, dict[int, int]] = {}
            for (i, j), v in m.entries.items():
                cols.setdefault(j, {})[i] = v
            for j in sorted(cols):
                vec = [Fraction(0)] * nk
                for i, v in cols[j].items():
                    vec[i] = Fraction(v)
                boundaries.append(vec)
        # greedy: echelon of boundary columns, then cycles that add new pivots
        basis_cols: list[list[Fraction]] = []
        echelon: list[tuple[int, list[Fraction]]] = []  # (pivot row, reduced col)

        def reduce_against(vec: list[Fraction]) -> tuple[int, list[Fraction]]:
            v = vec[:]
            for piv, col in echelon:
                if v[piv]:
                    f = v[piv] / col[piv]
                    v = [a - f * b for a, b in zip(v, col)]
            piv = next((i for i, a in enumerate(v) if a), -1)
            return piv, v

        n_bound = 0
        for b in boundaries:
            piv, v = reduce_against(b)
            if piv >= 0:
                echelon.append((piv, v))
                basis_cols.append(b)
                n_bound += 1
        reps: list[list[Fraction]] = []
        for z in cycles:
            piv, v = reduce_against(z)
            if piv >= 0:
                echelon.append((piv, v))
                basis_cols.append(z)
                reps.append(z)
        solver = LinearSolver(basis_cols, nk) if basis_cols else None
        self._degree[k] = (reps, solver, [n_bound])
        return self._degree[k]

    def betti(self, k: int) -> int:
        reps, _, _ = self._setup(k)
        return len(reps)

    def representatives(self, k: int) -> list[list[Fraction]]:
        return self._setup(k)[0]

    def express(self, k: int, cycle: list[Fraction]) -> list[Fraction]:
        """Coordinates of a cycle in the homology basis of degree k."""
        reps, solver, meta = self._setup(k)
        if not reps:
            return []
        coords = solver.solve(cycle)
        if coords is None:
            raise ValueError("vector is not a cycle of the complex")
        n_bound = meta[0]
        return coords[n_bound:]


def _rational_homology(dc: DeltaComplex) -> RationalChainHomology:
    if "rch" not in dc._cache:
        dc._cache["rch"] = RationalChainHomology(dc)
    return dc._cache["rch"]


def _check_cellmap(dc: DeltaComplex, cellmap: Sequence[Sequence[int]]) -> None:
    if len(cellmap) < dc.dim + 1:
        raise ValueError("cell map must cover every dimension")
    for k in range(dc.dim + 1):
        if sorted(cellmap[k]) != list(range(dc.counts[k])):
            raise ValueError(f"cell map is not a permutation in dimension {k}")
    for k in range(1, dc.dim + 1):
        for c in range(dc.counts[k]):
            img = cellmap[k][c]
            for slot in range(k + 1):
                if dc.faces[k][img][slot] != cellmap[k - 1][dc.faces[k][c][slot]]:
                    raise ValueError(
                        f"not a chain map: face {slot} of {k}-cell {c} disagrees"
                    )


def induced_map(
    dc: DeltaComplex, cellmap: Sequence[Sequence[int]], degree: int
) -> list[list[Fraction]]:
    """Matrix of the induced endomorphism on H_degree(;Q) in the stored basis."""
    _check_cellmap(dc, cellmap)
    rch = _rational_homology(dc)
    reps = rch.representatives(degree)
    rows = []
    for rep in reps:
        image = [Fraction(0)] * len(rep)
        for i, v in enumerate(rep):
            if v:
                image[cellmap[degree][i]] += v
        rows.append(rch.express(degree, image))
    # rows[i] = coordinates of f_*(rep_i); matrix acts on coordinate columns
    return rows


def lefschetz_number(dc: DeltaComplex, cellmap: Sequence[Sequence[int]]) -> int:
    """Alternating sum of traces of the induced maps on rational homology."""
    total = Fraction(0)
    for k in range(dc.dim + 1):
        mat = induced_map(dc, cellmap, k)
        total += (-1) ** k * sum(mat[i][i] for i in range(len(mat)))
    if total.denominator != 1:
        raise AssertionError("non-integral Lefschetz number")
    return int(total)


def orientation_action(dc: DeltaComplex, cellmap: Sequence[Sequence[int]]):
    """Sign of the induced map on top rational homology.

    Returns +1, -1, or "nonorientable"; for a disconnected complex a
    tuple of per-component verdicts ("swapped" when the map moves the
    component) in component order.
    """
    labels = dc.component_labels()
    ncomp = dc.n_components()
    if ncomp > 1:
        verdicts = []
        for comp in range(ncomp):
            cells = [
                [i for i in range(dc.counts[k]) if labels[k][i] == comp]
                for k in range(dc.dim + 1)
            ]
            moved = any(
                cellmap[k][i] not in set(cells[k])
                for k in range(dc.dim + 1)
                for i in cells[k]
            )
            if moved:
                verdicts.append("swapped")
                continue
            sub, new_index = dc.subcomplex(cells)
            submap = [
                [new_index[k][cellmap[k][old]] for old in cells[k]]
                for k in range(dc.dim + 1)
            ]
            verdicts.append(orientation_action(sub, submap))
        return tuple(verdicts)
    top = dc.dim
    rch = _rational_homology(dc)
    if rch.betti(top) == 0:
        return "nonorientable"
    mat = induced_map(dc, cellmap, top)
    val = mat[0][0]
    if val == 1:
        return 1
    if val == -1:
        return -1
    raise AssertionError(f"unexpected top-degree action {val}")


def separation_components(dc: DeltaComplex, removed: Sequence[set[int]]) -> int:
    """Components of the open complement of a subcomplex.

    removed[k] holds the k-cell indices of the subcomplex; remaining cells
    are adjacent through faces not in the subcomplex.
    """
    removed = [set(r) for r in removed] + [set()] * (dc.dim + 1 - len(removed))
    offsets = [0]
    for c in dc.counts:
        offsets.append(offsets[-1] + c)
    parent = list(range(offsets[-1]))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    alive = [
        [i for i in range(dc.counts[k]) if i not in removed[k]]
        for k in range(dc.dim + 1)
    ]
    for k in range(1, dc.dim + 1):
        for i in alive[k]:
            for f in dc.faces[k][i]:
                if f not in removed[k - 1]:
                    union(offsets[k] + i, offsets[k - 1] + f)
    roots = {find(offsets[k] + i) for k in range(dc.dim + 1) for i in alive[k]}
    return len(roots)


__all__ = [
    "HomologyProfile",
    "homology",
    "gf2_betti",
    "rational_betti",
    "integral_homology",
    "full_profile",
    "orientable_flag",
    "RationalChainHomology",
    "induced_map",
    "lefschetz_number",
    "orientation_action",
    "separation_components",
]
