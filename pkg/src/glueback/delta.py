"""Delta-complexes: cells with ordered vertices and positional face maps.

Quotient constructions identify simplices, so the glued objects are not
simplicial; a Delta-complex (faces indexed by the omitted vertex slot)
still carries exact simplicial homology.  faces[k-1][i] lists, for the
i-th k-cell, its k+1 faces in slot order.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .exact import IntMatrix


class DeltaError(ValueError):
    pass


class DeltaComplex:
    def __init__(self, n_vertices: int, faces: Sequence[Sequence[tuple[int, ...]]]):
        self.counts: list[int] = [n_vertices] + [len(level) for level in faces]
        self.faces: list[list[tuple[int, ...]]] = [[]] + [
            [tuple(f) for f in level] for level in faces
        ]
        for k in range(1, len(self.counts)):
            for i, fs in enumerate(self.faces[k]):
                if len(fs) != k + 1:
                    raise DeltaError(f"{k}-cell {i} has {len(fs)} faces, wants {k + 1}")
                if any(not 0 <= f < self.counts[k - 1] for f in fs):
                    raise DeltaError(f"{k}-cell {i} has an out-of-range face")
        # drop empty top levels
        while len(self.counts) > 1 and self.counts[-1] == 0:
            self.counts.pop()
            self.faces.pop()
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return len(self.counts) - 1

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.counts))

    def total_cells(self) -> int:
        return sum(self.counts)

    def check_identities(self) -> None:
        """Assert the simplicial identities d_i d_j = d_{j-1} d_i for i < j."""
        for k in range(2, self.dim + 1):
            for c in range(self.counts[k]):
                fs = self.faces[k][c]
                for j in range(1, k + 1):
                    for i in range(j):
                        a = self.faces[k - 1][fs[j]][i]
                        b = self.faces[k - 1][fs[i]][j - 1]
                        if a != b:
                            raise DeltaError(
                                f"face identity fails at {k}-cell {c} (i={i}, j={j})"
                            )

    def vertex_of(self, k: int, cell: int, j: int) -> int:
        """The j-th vertex (0-cell index) of a k-cell."""
        cur, dim, pos = cell, k, j
        for s in range(k, -1, -1):
            if s == pos:
                continue
            cur = self.faces[dim][cur][s]
            dim -= 1
            if s < pos:
                pos -= 1
        return cur

    # -- boundary operators -------------------------------------------------

    def boundary_gf2(self, k: int) -> tuple[list[int], int]:
        """Columns of the mod-2 boundary map C_k -> C_{k-1} as bitmasks."""
        key = ("bgf2", k)
        if key not in self._cache:
            cols = []
            for fs in self.faces[k]:
                mask = 0
                for f in fs:
                    mask ^= 1 << f
                cols.append(mask)
            self._cache[key] = (cols, self.counts[k - 1])
        return self._cache[key]

    def boundary_int(self, k: int) -> IntMatrix:
        """Signed integer boundary matrix, rows = (k-1)-cells, cols = k-cells."""
        key = ("bint", k)
        if key not in self._cache:
            entries: dict[tuple[int, int], int] = {}
            for j, fs in enumerate(self.faces[k]):
                for slot, f in enumerate(fs):
                    key2 = (f, j)
                    entries[key2] = entries.get(key2, 0) + (-1) ** slot
            entries = {k2: v for k2, v in entries.items() if v}
            self._cache[key] = IntMatrix(self.counts[k - 1], self.counts[k], entries)
        return self._cache[key]

    # -- substructures ------------------------------------------------------

    def component_labels(self) -> list[list[int]]:
        """Connected-component label per cell, per dimension (via union-find)."""
        offsets = [0]
        for c in self.counts:
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

        for k in range(1, self.dim + 1):
            for i, fs in enumerate(self.faces[k]):
                for f in fs:
                    union(offsets[k] + i, offsets[k - 1] + f)
        roots: dict[int, int] = {}
        labels = []
        for k in range(self.dim + 1):
            lk = []
            for i in range(self.counts[k]):
                r = find(offsets[k] + i)
                if r not in roots:
                    roots[r] = len(roots)
                lk.append(roots[r])
            labels.append(lk)
        return labels

    def n_components(self) -> int:
        labels = self.component_labels()
        return len({l for lk in labels for l in lk}) if self.total_cells() else 0

    def subcomplex(self, cells: Sequence[Iterable[int]]):
        """Sub-Delta-complex on the given (face-closed) cell indices.

        Returns (DeltaComplex, new_index) with new_index[k] mapping old to new.
        """
        keep = [sorted(set(c)) for c in cells]
        while len(keep) < self.dim + 1:
            keep.append([])
        new_index: list[dict[int, int]] = [
            {old: new for new, old in enumerate(level)} for level in keep
        ]
        faces = []
        for k in range(1, self.dim + 1):
            level = []
            for old in keep[k]:
                fs = self.faces[k][old]
                try:
                    level.append(tuple(new_index[k - 1][f] for f in fs))
                except KeyError:
                    raise DeltaError(f"cell set not closed under faces at dim {k}")
            faces.append(level)
        return DeltaComplex(len(keep[0]), faces), new_index

    def is_closed_pseudomanifold(self) -> bool:
        """Every (dim-1)-cell is a face of top cells exactly twice (with multiplicity)."""
        n = self.dim
        if n == 0:
            return False
        count = [0] * self.counts[n - 1]
        for fs in self.faces[n]:
            for f in fs:
                count[f] += 1
        return all(c == 2 for c in count)

    def vertex_link(self, v: int) -> "DeltaComplex":
        """Link of a vertex as a Delta-complex of (cell, slot) pairs."""
        pairs: list[list[tuple[int, int]]] = [[] for _ in range(self.dim + 1)]
        index: list[dict[tuple[int, int], int]] = [dict() for _ in range(self.dim + 1)]
        for k in range(1, self.dim + 1):
            for c in range(self.counts[k]):
                for j in range(k + 1):
                    if self.vertex_of(k, c, j) == v:
                        index[k][(c, j)] = len(pairs[k])
                        pairs[k].append((c, j))
        faces = []
        for k in range(2, self.dim + 1):
            level = []
            for c, j in pairs[k]:
                fs = []
                for slot in range(k + 1):
                    if slot == j:
                        continue
                    child = self.faces[k][c][slot]
                    child_j = j if slot > j else j - 1
                    fs.append(index[k - 1][(child, child_j)])
                level.append(tuple(fs))
            faces.append(level)
        return DeltaComplex(len(pairs[1]), faces)


__all__ = ["DeltaComplex", "DeltaError"]
