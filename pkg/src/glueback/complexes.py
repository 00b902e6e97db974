"""Stratified simplicial models of compact nice manifolds with corners.

A StratifiedComplex is a finite simplicial complex, pure of dimension n,
together with a partition of its boundary (n-1)-simplices into named
facets.  The facet data is extra structure, not derived: the same
triangulated 3-ball carries both the three-2-gon ("football") and the
four-triangle stratifications.  Validation checks purity, the
pseudo-manifold condition, facet purity/connectivity, vertex links
(dimension <= 3) and the niceness conditions on deep strata:
every simplex lies in at most n facets and every boundary
(n-2)-simplex in at most two.

The codimension of a boundary simplex is the number of facets whose
subcomplex contains it; open pre-faces are the connected components of
the equal-codimension strata, and closed pre-faces their closures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Structurally malformed input (not a mere validation finding)."""


def _as_simplex(vertices: Iterable[int]) -> Simplex:
    t = tuple(sorted(vertices))
    if len(set(t)) != len(t):
        raise ComplexError(f"repeated vertex in simplex {t}")
    return t


def closure(simplices: Iterable[Simplex]) -> set[Simplex]:
    """All nonempty faces of the given simplices."""
    out: set[Simplex] = set()
    stack = [tuple(s) for s in simplices]
    while stack:
        s = stack.pop()
        if s in out or not s:
            continue
        out.add(s)
        if len(s) > 1:
            for i in range(len(s)):
                stack.append(s[:i] + s[i + 1 :])
    return out


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    where: tuple = ()

    def __str__(self) -> str:
        loc = f" at {self.where}" if self.where else ""
        return f"[{self.code}] {self.message}{loc}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, message: str, where: tuple = ()) -> None:
        self.violations.append(Violation(code, message, where))

    def __str__(self) -> str:
        if self.ok and not self.warnings:
            return "valid"
        lines = [str(v) for v in self.violations]
        lines += [f"[warning] {w}" for w in self.warnings]
        return "\n".join(lines)


@dataclass(frozen=True)
class PreFace:
    """Closed pre-face: a component of an intersection of facets.

    `open_simplices` is the stratum itself (simplices whose relative
    interiors have exactly this facet set); `simplices` is its closure.
    """

    facet_ids: frozenset[str]
    simplices: tuple[Simplex, ...]
    open_simplices: tuple[Simplex, ...]

    @property
    def codim(self) -> int:
        return len(self.facet_ids)


@dataclass(frozen=True)
class BoundaryComponent:
    """One connected component of the boundary with its facet tessellation."""

    simplices: tuple[Simplex, ...]
    facet_ids: tuple[str, ...]
    polygon_sizes: Mapping[str, int]  # facet -> number of corner vertices on it
    euler: int
    connected_closed: bool

    def is_sphere(self, dim: int) -> bool:
        """Homology-sphere test at the level used here: chi + connect + closed."""
        want = 2 if dim % 2 == 0 else 0
        return self.connected_closed and self.euler == want


class StratifiedComplex:
    """Finite simplicial complex with a facet stratification.

    Immutable after construction; validation results and derived strata
    are cached.  `facets` maps a facet id to the set of its
    (n-1)-simplices; lower faces of facets are implied.
    """

    def __init__(
        self,
        dim: int,
        simplices: Iterable[Iterable[int]],
        facets: Mapping[str, Iterable[Iterable[int]]] | None = None,
        name: str = "",
    ):
        self.dim = int(dim)
        self.name = name
        if self.dim < 1:
            raise ComplexError("dimension must be >= 1")
        tops = {_as_simplex(s) for s in simplices}
        if not tops:
            raise ComplexError("empty complex")
        all_simplices = closure(tops)
        self.simplices_by_dim: list[tuple[Simplex, ...]] = [
            tuple(sorted(s for s in all_simplices if len(s) == k + 1))
            for k in range(self.dim + 1)
        ]
        extra = [s for s in all_simplices if len(s) > self.dim + 1]
        if extra:
            raise ComplexError(f"simplex {extra[0]} exceeds dimension {self.dim}")
        self.vertices: tuple[int, ...] = tuple(v for (v,) in self.simplices_by_dim[0])
        self.simplex_index: dict[Simplex, tuple[int, int]] = {
            s: (k, i)
            for k, level in enumerate(self.simplices_by_dim)
            for i, s in enumerate(level)
        }
        # facet subcomplexes
        self.facets: dict[str, frozenset[Simplex]] = {}
        facets = facets or {}
        for fid in sorted(facets):
            fs = frozenset(_as_simplex(s) for s in facets[fid])
            for s in fs:
                if len(s) != self.dim:
                    raise ComplexError(
                        f"facet {fid}: {s} is not an ({self.dim - 1})-simplex"
                    )
                if s not in self.simplex_index:
                    raise ComplexError(f"facet {fid}: {s} is not in the complex")
            if not fs:
                raise ComplexError(f"facet {fid} is empty")
            self.facets[fid] = fs
        self._facet_closures: dict[str, frozenset[Simplex]] = {
            fid: frozenset(closure(fs)) for fid, fs in self.facets.items()
        }
        # facet_set per simplex: facets whose subcomplex contains it
        fsets: dict[Simplex, set[str]] = {}
        for fid, cl in self._facet_closures.items():
            for s in cl:
                fsets.setdefault(s, set()).add(fid)
        self._facet_sets: dict[Simplex, frozenset[str]] = {
            s: frozenset(v) for s, v in fsets.items()
        }
        # coface counts of (n-1)-simplices
        self._coface_count: dict[Simplex, int] = {}
        if self.dim >= 1:
            for top in self.simplices_by_dim[self.dim]:
                for i in range(len(top)):
                    f = top[:i] + top[i + 1 :]
                    self._coface_count[f] = self._coface_count.get(f, 0) + 1
        self._validation: ValidationReport | None = None
        self._pre_faces: list[PreFace] | None = None

    # -- basic queries ------------------------------------------------------

    @property
    def top_simplices(self) -> tuple[Simplex, ...]:
        return self.simplices_by_dim[self.dim]

    def facet_set(self, simplex: Iterable[int]) -> frozenset[str]:
        return self._facet_sets.get(_as_simplex(simplex), frozenset())

    def is_boundary_simplex(self, simplex: Iterable[int]) -> bool:
        return bool(self.facet_set(simplex))

    def boundary_simplices(self) -> list[Simplex]:
        return sorted(self._facet_sets)

    def euler_characteristic(self) -> int:
        return sum(
            (-1) ** k * len(level) for k, level in enumerate(self.simplices_by_dim)
        )

    def simplex_count(self) -> int:
        return sum(len(level) for level in self.simplices_by_dim)

    def link(self, v: int) -> set[Simplex]:
        """Simplicial link of a vertex: faces opposite v in simplices containing v."""
        out: set[Simplex] = set()
        for level in self.simplices_by_dim[1:]:
            for s in level:
                if v in s:
                    out.add(tuple(x for x in s if x != v))
        return out

    def interior_vertices(self) -> list[int]:
        return [v for v in self.vertices if not self.facet_set((v,))]

    def has_boundary(self) -> bool:
        return bool(self.facets)

    # -- validation ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        if self._validation is not None:
            return self._validation
        rep = ValidationReport()
        n = self.dim
        # purity
        top_faces = closure(self.top_simplices)
        for level in self.simplices_by_dim[:-1]:
            for s in level:
                if s not in top_faces:
                    rep.add("PURE", f"simplex not a face of any {n}-simplex", s)
        # pseudo-manifold and boundary coverage
        boundary_faces = set()
        for f, cnt in self._coface_count.items():
            if cnt > 2:
                rep.add("PSEUDO", f"({n - 1})-simplex lies in {cnt} {n}-simplices", f)
            elif cnt == 1:
                boundary_faces.add(f)
        facet_union: set[Simplex] = set()
        for fid, fs in self.facets.items():
            overlap = facet_union & fs
            if overlap:
                rep.add("FACET_OVERLAP", f"facet {fid} shares a simplex with another facet", next(iter(overlap)))
            facet_union |= fs
            for s in fs:
                if s not in boundary_faces:
                    rep.add("FACET_INTERIOR", f"facet {fid} contains a non-boundary simplex", s)
            # facet subcomplex connected (top simplices via shared (n-2)-faces)
            if not _connected_via_faces(closure(fs)):
                rep.add("FACET_DISCONNECTED", f"facet {fid} is not connected", ())
        for f in boundary_faces - facet_union:
            rep.add("UNCOVERED_BOUNDARY", "boundary simplex not assigned to a facet", f)
        # niceness on deep strata
        for s, fset in self._facet_sets.items():
            if len(fset) > n:
                rep.add("NICE_DEEP", f"simplex lies in {len(fset)} facets (> n = {n})", s)
        for s, fset in self._facet_sets.items():
            if len(s) == n - 1 and len(fset) > 2:
                rep.add(
                    "NICE_CODIM2",
                    f"boundary ({n - 2})-simplex lies in {len(fset)} facets",
                    s,
                )
        # global connectivity of the carrier
        if not _connected_via_faces(closure(self.top_simplices)):
            rep.add("DISCONNECTED", "complex is not connected", ())
        # vertex links
        if n <= 3:
            for v in self.vertices:
                bad = self._check_link(v)
                if bad:
                    rep.add("LINK", bad, (v,))
        else:
            rep.warnings.append(
                f"dimension {n} > 3: link conditions not checked, "
                "validation degrades to pseudo-manifold checks"
            )
        self._validation = rep
        return rep

    def require_valid(self) -> None:
        rep = self.validate()
        if not rep.ok:
            raise ComplexError(f"invalid complex: {rep.violations[0]}")

    def _check_link(self, v: int) -> str | None:
        n = self.dim
        lk = self.link(v)
        interior = not self.facet_set((v,))
        if n == 1:
            deg = len(lk)
            if interior and deg != 2:
                return f"interior vertex has {deg} incident edges (expected 2)"
            if not interior and deg != 1:
                return f"boundary vertex has {deg} incident edges (expected 1)"
            return None
        top = [s for s in lk if len(s) == n]
        if not top:
            return "vertex has no top-dimensional coface"
        # count (n-2)-faces inside the link
        sub_count: dict[Simplex, int] = {}
        for s in top:
            for i in range(len(s)):
                f = s[:i] + s[i + 1 :]
                sub_count[f] = sub_count.get(f, 0) + 1
        if any(c > 2 for c in sub_count.values()):
            return "link is not a pseudo-manifold"
        closed = all(c == 2 for c in sub_count.values())
        if not _connected_via_faces(closure(top)):
            return "link is disconnected"
        chi = _euler_of(closure(top))
        if interior:
            want = 2 if (n - 1) % 2 == 0 else 0
            if not closed:
                return "interior vertex has a non-closed link"
            if chi != want:
                return f"interior vertex link has Euler characteristic {chi} (expected {want})"
        else:
            if closed:
                return "boundary vertex has a closed link"
            if chi != 1:
                return f"boundary vertex link has Euler characteristic {chi} (expected 1)"
        return None

    # -- strata -------------------------------------------------------------

    def pre_faces(self) -> list[PreFace]:
        """Open pre-faces with their closures; partitions the boundary."""
        self.require_valid()
        if self._pre_faces is not None:
            return self._pre_faces
        by_fset: dict[frozenset[str], list[Simplex]] = {}
        for s, fset in self._facet_sets.items():
            by_fset.setdefault(fset, []).append(s)
        out: list[PreFace] = []
        for fset, simpls in sorted(by_fset.items(), key=lambda kv: sorted(kv[0])):
            simpl_set = set(simpls)
            for comp in _face_components(simpl_set):
                closed = tuple(sorted(closure(comp)))
                out.append(
                    PreFace(fset, closed, tuple(sorted(comp)))
                )
        out.sort(key=lambda p: (p.codim, sorted(p.facet_ids), p.simplices))
        self._pre_faces = out
        return out

    def boundary_components(self) -> list[BoundaryComponent]:
        """Connected components of the boundary with facet tessellation data."""
        self.require_valid()
        n = self.dim
        bsimpl = set(self._facet_sets)
        comps = _face_components(bsimpl) if bsimpl else []
        out = []
        for comp in sorted(comps, key=lambda c: sorted(c)[0]):
            facet_ids = tuple(
                sorted(fid for fid, fs in self.facets.items() if fs <= comp)
            )
            # corner vertices: deepest strata (n facets for an n-complex)
            poly: dict[str, int] = {}
            for fid in facet_ids:
                cl = self._facet_closures[fid]
                corners = [
                    s for s in cl if len(s) == 1 and len(self._facet_sets[s]) >= n
                ]
                poly[fid] = len(corners)
            top = [s for s in comp if len(s) == n]
            sub_count: dict[Simplex, int] = {}
            for s in top:
                for i in range(len(s)):
                    f = s[:i] + s[i + 1 :]
                    sub_count[f] = sub_count.get(f, 0) + 1
            closed = all(c == 2 for c in sub_count.values()) if top else False
            connected = _connected_via_faces(closure(top)) if top else False
            chi = _euler_of(comp)
            out.append(
                BoundaryComponent(
                    tuple(sorted(comp)), facet_ids, poly, chi, closed and connected
                )
            )
        return out

    # -- constructions ------------------------------------------------------

    def barycentric_subdivision(self) -> "StratifiedComplex":
        """First barycentric subdivision; facets subdivide with it."""
        all_simplices = sorted(
            (s for level in self.simplices_by_dim for s in level),
            key=lambda s: (len(s), s),
        )
        sid = {s: i for i, s in enumerate(all_simplices)}
        new_tops = []
        for top in self.top_simplices:
            for chain in _maximal_chains(top):
                new_tops.append(tuple(sorted(sid[s] for s in chain)))
        new_facets = {}
        for fid, fs in self.facets.items():
            pieces = []
            for s in fs:
                for chain in _maximal_chains(s):
                    pieces.append(tuple(sorted(sid[c] for c in chain)))
            new_facets[fid] = pieces
        return StratifiedComplex(self.dim, new_tops, new_facets, name=f"sd({self.name})")

    def delta(self):
        """The underlying Delta-complex (faces indexed by position)."""
        from .delta import DeltaComplex

        faces = []
        for k in range(1, self.dim + 1):
            level = []
            for s in self.simplices_by_dim[k]:
                level.append(
                    tuple(
                        self.simplex_index[s[:i] + s[i + 1 :]][1]
                        for i in range(len(s))
                    )
                )
            faces.append(level)
        return DeltaComplex(len(self.simplices_by_dim[0]), faces)

    def relabeled(self, vmap: Mapping[int, int], name: str = "") -> "StratifiedComplex":
        tops = [tuple(vmap[v] for v in s) for s in self.top_simplices]
        facets = {
            fid: [tuple(vmap[v] for v in s) for s in fs]
            for fid, fs in self.facets.items()
        }
        return StratifiedComplex(self.dim, tops, facets, name=name or self.name)

    def __repr__(self) -> str:
        counts = "/".join(str(len(l)) for l in self.simplices_by_dim)
        return f"StratifiedComplex(dim={self.dim}, cells={counts}, facets={len(self.facets)})"


# ---------------------------------------------------------------------------
# connectivity helpers


def _connected_via_faces(simplices: set[Simplex]) -> bool:
    comps = _face_components(simplices)
    return len(comps) <= 1


def _face_components(simplices: set[Simplex]) -> list[set[Simplex]]:
    """Components of a simplex set under the face relation within the set.

    Adjacency is strictly via faces present in the set, matching the
    point-set components of a union of relative interiors; callers that
    want ordinary connectivity pass a face-closed set.
    """
    if not simplices:
        return []
    parent: dict[Simplex, Simplex] = {s: s for s in simplices}

    def find(x: Simplex) -> Simplex:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: Simplex, b: Simplex) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for s in simplices:
        if len(s) > 1:
            for i in range(len(s)):
                f = s[:i] + s[i + 1 :]
                if f in parent:
                    union(s, f)
    comps: dict[Simplex, set[Simplex]] = {}
    for s in simplices:
        comps.setdefault(find(s), set()).add(s)
    return list(comps.values())


def _euler_of(simplices: Iterable[Simplex]) -> int:
    return sum((-1) ** (len(s) - 1) for s in simplices)


def _maximal_chains(top: Simplex) -> Iterator[tuple[Simplex, ...]]:
    """Chains s_0 < s_1 < ... < s_k of faces of `top` ending at `top` itself."""
    k = len(top)
    for perm in itertools.permutations(top):
        chain = tuple(tuple(sorted(perm[: i + 1])) for i in range(k))
        yield chain


# ---------------------------------------------------------------------------
# isomorphism search


def find_isomorphisms(
    tops1: Iterable[Simplex],
    tops2: Iterable[Simplex],
    labels1: Mapping[Simplex, str] | None = None,
    labels2: Mapping[Simplex, str] | None = None,
    max_results: int = 1,
) -> list[dict[int, int]]:
    """Simplicial isomorphisms between two complexes given by top simplices.

    A label map (simplex -> id) must be carried to a consistent bijection
    of label values.  Returns up to max_results vertex maps.
    """
    c1 = closure(set(map(_as_simplex, tops1)))
    c2 = closure(set(map(_as_simplex, tops2)))
    labels1 = dict(labels1 or {})
    labels2 = dict(labels2 or {})
    by_dim1: dict[int, set[Simplex]] = {}
    by_dim2: dict[int, set[Simplex]] = {}
    for s in c1:
        by_dim1.setdefault(len(s), set()).add(s)
    for s in c2:
        by_dim2.setdefault(len(s), set()).add(s)
    if {k: len(v) for k, v in by_dim1.items()} != {k: len(v) for k, v in by_dim2.items()}:
        return []
    verts1 = sorted(v for (v,) in by_dim1.get(1, ()))
    verts2 = sorted(v for (v,) in by_dim2.get(1, ()))

    def label_signatures(labels):
        # relabeling-invariant signature per label value
        stats: dict[str, list] = {}
        for s, l in labels.items():
            stats.setdefault(l, []).append(len(s))
        return {l: (len(v), tuple(sorted(v))) for l, v in stats.items()}

    sig1 = label_signatures(labels1)
    sig2 = label_signatures(labels2)

    def vertex_inv(v, cx, labels, sigs):
        degs = tuple(
            sorted((len(s), sigs.get(labels.get(s), ())) for s in cx if v in s)
        )
        return degs

    inv1 = {v: vertex_inv(v, c1, labels1, sig1) for v in verts1}
    inv2 = {v: vertex_inv(v, c2, labels2, sig2) for v in verts2}
    from collections import Counter

    if Counter(inv1.values()) != Counter(inv2.values()):
        return []
    # order: most constrained (rarest invariant) first
    order = sorted(verts1, key=lambda v: (list(inv1.values()).count(inv1[v]), v))
    incident1 = {v: [s for s in c1 if v in s] for v in verts1}
    results: list[dict[int, int]] = []

    def backtrack(i: int, vmap: dict[int, int], used: set[int], lmap: dict[str, str], lused: set[str]):
        if len(results) >= max_results:
            return
        if i == len(order):
            results.append(dict(vmap))
            return
        v = order[i]
        for w in verts2:
            if w in used or inv1[v] != inv2[w]:
                continue
            new_l: list[tuple[str, str]] = []
            ok = True
            for s in incident1[v]:
                if all(x in vmap or x == v for x in s):
                    img = tuple(sorted(vmap.get(x, w) for x in s))
                    if img not in c2:
                        ok = False
                        break
                    l1 = labels1.get(s)
                    l2 = labels2.get(img)
                    if (l1 is None) != (l2 is None):
                        ok = False
                        break
                    if l1 is not None:
                        cur = lmap.get(l1)
                        if cur is None:
                            if l2 in lused and lmap.get(l1) != l2:
                                ok = False
                                break
                            new_l.append((l1, l2))
                        elif cur != l2:
                            ok = False
                            break
            if not ok:
                continue
            added = []
            bad = False
            for l1, l2 in new_l:
                if l1 in lmap:
                    if lmap[l1] != l2:
                        bad = True
                        break
                    continue
                if l2 in lused:
                    bad = True
                    break
                lmap[l1] = l2
                lused.add(l2)
                added.append((l1, l2))
            if bad:
                for l1, l2 in added:
                    del lmap[l1]
                    lused.discard(l2)
                continue
            vmap[v] = w
            used.add(w)
            backtrack(i + 1, vmap, used, lmap, lused)
            del vmap[v]
            used.discard(w)
            for l1, l2 in added:
                del lmap[l1]
                lused.discard(l2)

    backtrack(0, {}, set(), {}, set())
    return results


def facially_isomorphic(q1: StratifiedComplex, q2: StratifiedComplex) -> bool:
    """Facet-structure-preserving simplicial isomorphism test."""
    if q1.dim != q2.dim or len(q1.facets) != len(q2.facets):
        return False
    l1 = {s: fid for fid, fs in q1.facets.items() for s in fs}
    l2 = {s: fid for fid, fs in q2.facets.items() for s in fs}
    return bool(
        find_isomorphisms(q1.top_simplices, q2.top_simplices, l1, l2, max_results=1)
    )


__all__ = [
    "Simplex",
    "ComplexError",
    "Violation",
    "ValidationReport",
    "PreFace",
    "BoundaryComponent",
    "StratifiedComplex",
    "closure",
    "find_isomorphisms",
    "facially_isomorphic",
]
