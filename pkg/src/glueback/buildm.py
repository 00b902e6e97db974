"""The glue-back construction: total space of (Q, coloring, cocycle).

Over each simplex s of Q sit the cosets of G(s), the span of the colors
of the facets containing s; the face map that drops a vertex transports
the coset representative along the edge between the least vertices of
cell and face before reducing modulo the larger subgroup.  The triangle
condition on the cocycle makes the face maps satisfy the simplicial
identities, which is asserted at build time.

For a closed Q the coloring is empty, every G(s) is trivial, and the same
code path produces the 2^n-fold covering space classified by the cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .complexes import Simplex, StratifiedComplex
from .coloring import Cocycle, Coloring, require_valid_pair
from .delta import DeltaComplex
from .gf2 import GroupElement, Subgroup, bits_to_string

Cell = tuple[Simplex, int]  # (base simplex, canonical coset representative)


class BuildError(ValueError):
    pass


@dataclass(frozen=True)
class SubComplex:
    """A face-closed selection of cells of a built manifold."""

    cells: tuple[tuple[int, ...], ...]  # per dimension, sorted parent indices
    delta: DeltaComplex

    @property
    def dimension(self) -> int:
        """Top dimension carrying cells; -1 when empty."""
        for k in range(len(self.cells) - 1, -1, -1):
            if self.cells[k]:
                return k
        return -1

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(c) for k, c in enumerate(self.cells))

    def is_empty(self) -> bool:
        return self.dimension < 0

    def cell_sets(self) -> list[set[int]]:
        return [set(c) for c in self.cells]


class BuiltManifold:
    """Delta-complex model of the glued total space with its (Z2)^n-action."""

    def __init__(self, q: StratifiedComplex, lam: Coloring, xi: Cocycle):
        require_valid_pair(q, lam, xi)
        self.q = q
        self.coloring = lam
        self.cocycle = xi
        self.n = lam.n
        colors = lam.as_dict()
        # isotropy subgroup per base simplex
        self.isotropy: dict[Simplex, Subgroup] = {}
        for level in q.simplices_by_dim:
            for s in level:
                gens = [colors[f] for f in q.facet_set(s)]
                self.isotropy[s] = Subgroup.span(gens, self.n)
        # cells in canonical order
        self.cells: list[list[Cell]] = []
        self.cell_index: list[dict[Cell, int]] = []
        for level in q.simplices_by_dim:
            cells_k: list[Cell] = []
            for s in level:
                for rep in self.isotropy[s].coset_representatives():
                    cells_k.append((s, rep))
            cells_k.sort()
            self.cells.append(cells_k)
            self.cell_index.append({c: i for i, c in enumerate(cells_k)})
        # face maps with cocycle transport
        faces: list[list[tuple[int, ...]]] = []
        for k in range(1, q.dim + 1):
            level = []
            for (s, rep) in self.cells[k]:
                fs = []
                for i in range(len(s)):
                    t = s[:i] + s[i + 1 :]
                    transported = rep ^ xi.value(s[0], t[0])
                    new_rep = self.isotropy[t].reduce(transported)
                    fs.append(self.cell_index[k - 1][(t, new_rep)])
                level.append(tuple(fs))
            faces.append(level)
        self.delta = DeltaComplex(len(self.cells[0]), faces)
        self.delta.check_identities()

    # -- queries --------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.q.dim

    def cell_counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def base_of(self, k: int, index: int) -> Simplex:
        return self.cells[k][index][0]

    def euler_characteristic(self) -> int:
        return self.delta.euler_characteristic()

    def components(self) -> int:
        return self.delta.n_components()

    def action_permutation(self, g: GroupElement | int) -> list[list[int]]:
        """Cell permutation induced by adding g to every coset."""
        bits = g.bits if isinstance(g, GroupElement) else int(g)
        perms = []
        for k, cells_k in enumerate(self.cells):
            perm = []
            for (s, rep) in cells_k:
                new_rep = self.isotropy[s].reduce(rep ^ bits)
                perm.append(self.cell_index[k][(s, new_rep)])
            perms.append(perm)
        return perms

    def fixed_cells(self, h: Subgroup) -> list[set[int]]:
        """Indices of cells pointwise fixed by the subgroup h."""
        out = []
        for cells_k in self.cells:
            out.append(
                {
                    i
                    for i, (s, _) in enumerate(cells_k)
                    if self.isotropy[s].contains_subgroup(h)
                }
            )
        return out

    def fixed_subcomplex(self, h: Subgroup) -> SubComplex:
        cells = self.fixed_cells(h)
        sub, _ = self.delta.subcomplex([sorted(c) for c in cells])
        return SubComplex(tuple(tuple(sorted(c)) for c in cells), sub)

    def preimage_subcomplex(self, simplices: Iterable[Simplex]) -> SubComplex:
        """Cells lying over a face-closed set of base simplices."""
        wanted = set(simplices)
        cells = []
        for cells_k in self.cells:
            cells.append({i for i, (s, _) in enumerate(cells_k) if s in wanted})
        sub, _ = self.delta.subcomplex([sorted(c) for c in cells])
        return SubComplex(tuple(tuple(sorted(c)) for c in cells), sub)

    def cell_dump(self) -> str:
        """Stable text dump: one line per cell, then face lines."""
        lines = []
        for k, cells_k in enumerate(self.cells):
            for i, (s, rep) in enumerate(cells_k):
                base = "-".join(str(v) for v in s)
                lines.append(f"cell {k} {base} {bits_to_string(rep, self.n)}")
        for k in range(1, self.dim + 1):
            for i, fs in enumerate(self.delta.faces[k]):
                for slot, f in enumerate(fs):
                    lines.append(f"face {k}:{i} {slot} {k - 1}:{f}")
        return "\n".join(lines) + "\n"


def build(q: StratifiedComplex, lam: Coloring | None, xi: Cocycle | None = None) -> BuiltManifold:
    """Construct the total space; lam may be None/empty only for closed Q."""
    if lam is None:
        if q.has_boundary():
            raise BuildError("a coloring is required when the boundary is nonempty")
        raise BuildError("ambient rank unknown: pass an empty Coloring with n set")
    if q.has_boundary() and not lam.assignment:
        raise BuildError("a coloring is required when the boundary is nonempty")
    if not q.has_boundary() and lam.assignment:
        raise BuildError("closed orbit data admits no facet colors")
    xi = xi or Cocycle.zero(lam.n)
    if xi.n != lam.n:
        raise BuildError("cocycle and coloring rank disagree")
    return BuiltManifold(q, lam, xi)


def euler_characteristic_predicted(q: StratifiedComplex, lam: Coloring) -> int:
    """Alternating sum of fiber sizes 2^(n - rank G(s)); independent of the cocycle."""
    require_valid_pair(q, lam)
    colors = lam.as_dict()
    total = 0
    for k, level in enumerate(q.simplices_by_dim):
        sign = (-1) ** k
        for s in level:
            gens = [colors[f] for f in q.facet_set(s)]
            rank = Subgroup.span(gens, lam.n).rank
            total += sign * (1 << (lam.n - rank))
    return total


def components(m: BuiltManifold) -> int:
    return m.components()


def fixed_subcomplex(m: BuiltManifold, h: Subgroup) -> SubComplex:
    return m.fixed_subcomplex(h)


def orbit_quotient(m: BuiltManifold) -> tuple[StratifiedComplex, Coloring]:
    """Quotient by the action with the facet structure recovered from isotropy.

    Boundary (n-1)-simplices carry rank-one isotropy; facets are the
    components of equal-isotropy adjacency, colored by their generator.
    """
    n = m.dim
    tops = [s for s in m.q.simplices_by_dim[n]]
    rank1 = [
        s
        for s in m.q.simplices_by_dim[n - 1]
        if m.isotropy[s].rank == 1
    ]
    # group into facets: share an (n-2)-face and the same isotropy line
    parent = {s: s for s in rank1}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    by_face: dict[tuple, list] = {}
    for s in rank1:
        for i in range(len(s)):
            by_face.setdefault(s[:i] + s[i + 1 :], []).append(s)
    for group in by_face.values():
        for a in group:
            for b in group:
                if m.isotropy[a] == m.isotropy[b]:
                    union(a, b)
    comps: dict[Simplex, list[Simplex]] = {}
    for s in rank1:
        comps.setdefault(find(s), []).append(s)
    facets = {}
    colors = {}
    for i, root in enumerate(sorted(comps)):
        fid = f"F{i}"
        facets[fid] = comps[root]
        colors[fid] = m.isotropy[root].basis[0]
    q = StratifiedComplex(n, tops, facets, name=f"quotient({m.q.name})")
    return q, Coloring.from_dict(m.n, colors)


__all__ = [
    "BuildError",
    "BuiltManifold",
    "SubComplex",
    "build",
    "euler_characteristic_predicted",
    "components",
    "fixed_subcomplex",
    "orbit_quotient",
]
