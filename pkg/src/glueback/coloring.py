"""Characteristic colorings and principal-bundle cocycles over orbit data.

A coloring assigns a nonzero element of (Z2)^n to each facet so that
colors are linearly independent wherever facets meet; a bundle is encoded
as a (Z2)^n-valued 1-cocycle on the 1-skeleton (the group has exponent 2,
so orientation of edges is immaterial).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .complexes import StratifiedComplex, ValidationReport, find_isomorphisms
from .gf2 import (
    Gf2Matrix,
    GroupElement,
    Subgroup,
    bits_to_string,
    enumerate_glnq2,
    extend_to_automorphism,
    gf2_nullspace,
    gf2_rank,
)

Edge = frozenset  # frozenset({u, v})


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class Coloring:
    """Facet colors: map facet id -> nonzero element of (Z2)^n."""

    n: int
    assignment: tuple[tuple[str, int], ...]  # sorted (facet, bits) pairs

    @classmethod
    def from_dict(cls, n: int, colors: Mapping[str, GroupElement | int | str]) -> "Coloring":
        items = []
        for fid in sorted(colors):
            v = colors[fid]
            if isinstance(v, GroupElement):
                if v.n != n:
                    raise ColoringError(f"color for {fid} has rank {v.n}, expected {n}")
                bits = v.bits
            elif isinstance(v, str):
                bits = GroupElement.from_string(v, n).bits
            else:
                bits = int(v)
            items.append((fid, bits))
        return cls(n, tuple(items))

    def as_dict(self) -> dict[str, int]:
        return dict(self.assignment)

    def get(self, fid: str) -> GroupElement:
        d = self.as_dict()
        if fid not in d:
            raise ColoringError(f"no color for facet {fid}")
        return GroupElement(self.n, d[fid])

    def bits(self, fid: str) -> int:
        return self.as_dict()[fid]

    @property
    def facet_ids(self) -> tuple[str, ...]:
        return tuple(fid for fid, _ in self.assignment)

    def image(self) -> list[GroupElement]:
        return sorted({GroupElement(self.n, b) for _, b in self.assignment})

    def apply(self, sigma: Gf2Matrix) -> "Coloring":
        return Coloring(
            self.n, tuple((fid, sigma.apply(b)) for fid, b in self.assignment)
        )

    def restrict(self, fids: Iterable[str]) -> "Coloring":
        keep = set(fids)
        return Coloring(self.n, tuple(p for p in self.assignment if p[0] in keep))

    def __str__(self) -> str:
        return ", ".join(
            f"{fid}={bits_to_string(b, self.n)}" for fid, b in self.assignment
        )


@dataclass(frozen=True)
class Cocycle:
    """Edge values in (Z2)^n; absent edges are zero; symmetric by exponent 2."""

    n: int
    values: tuple[tuple[tuple[int, int], int], ...]  # ((u, v) with u < v, bits)

    @classmethod
    def zero(cls, n: int) -> "Cocycle":
        return cls(n, ())

    @classmethod
    def from_dict(cls, n: int, vals: Mapping[tuple[int, int] | frozenset, int]) -> "Cocycle":
        items = {}
        for e, bits in vals.items():
            u, v = sorted(e)
            if u == v:
                raise ColoringError("cocycle edge with equal endpoints")
            if bits:
                items[(u, v)] = items.get((u, v), 0) ^ bits
        return cls(n, tuple(sorted((e, b) for e, b in items.items() if b)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.values)

    def value(self, u: int, v: int) -> int:
        if u == v:
            return 0
        key = (u, v) if u < v else (v, u)
        return self.as_dict().get(key, 0)

    def is_zero(self) -> bool:
        return not self.values

    def support(self) -> list[tuple[int, int]]:
        return [e for e, _ in self.values]


# ---------------------------------------------------------------------------
# validation


def validate_coloring(q: StratifiedComplex, lam: Coloring) -> ValidationReport:
    """Independence of facet colors at every stratum.

    Checking the vertices suffices: the facet set of any simplex is
    contained in the facet set of each of its vertices, and subsets of
    independent sets are independent.  The report is per-vertex.
    """
    q.require_valid()
    rep = ValidationReport()
    colors = lam.as_dict()
    unknown = set(colors) - set(q.facets)
    if unknown:
        raise ColoringError(f"colors for unknown facets: {sorted(unknown)}")
    for fid in q.facets:
        if fid not in colors:
            rep.add("UNCOLORED", f"facet {fid} has no color", (fid,))
        elif colors[fid] == 0:
            rep.add("ZERO_COLOR", f"facet {fid} has the zero color", (fid,))
    if not rep.ok:
        return rep
    for v in q.vertices:
        fset = sorted(q.facet_set((v,)))
        if not fset:
            continue
        vals = [colors[f] for f in fset]
        if gf2_rank(vals) != len(vals):
            rep.add(
                "DEPENDENT",
                "facet colors "
                + ", ".join(f"{f}={bits_to_string(colors[f], lam.n)}" for f in fset)
                + " are linearly dependent",
                (v,),
            )
    return rep


def validate_cocycle(q: StratifiedComplex, xi: Cocycle) -> ValidationReport:
    """Triangle condition on every 2-simplex; edges must be in the 1-skeleton."""
    q.require_valid()
    rep = ValidationReport()
    edges = set(q.simplices_by_dim[1]) if q.dim >= 1 else set()
    for (u, v), bits in xi.values:
        if (u, v) not in edges:
            raise ColoringError(f"cocycle edge ({u}, {v}) is not in the 1-skeleton")
    if q.dim >= 2:
        for (a, b, c) in q.simplices_by_dim[2]:
            total = xi.value(a, b) ^ xi.value(b, c) ^ xi.value(a, c)
            if total:
                rep.add(
                    "COCYCLE",
                    f"triangle condition fails with sum {bits_to_string(total, xi.n)}",
                    (a, b, c),
                )
    return rep


def require_valid_pair(q: StratifiedComplex, lam: Coloring, xi: Cocycle | None = None) -> None:
    q.require_valid()
    rep = validate_coloring(q, lam)
    if not rep.ok:
        raise ColoringError(f"invalid coloring: {rep.violations[0]}")
    if set(lam.facet_ids) != set(q.facets):
        raise ColoringError("coloring does not cover exactly the facets")
    if xi is not None:
        repc = validate_cocycle(q, xi)
        if not repc.ok:
            raise ColoringError(f"invalid cocycle: {repc.violations[0]}")


# ---------------------------------------------------------------------------
# spanning tree and normal form


def spanning_tree(q: StratifiedComplex) -> tuple[dict[int, int], list[tuple[int, int]]]:
    """BFS tree from the least vertex: (parent map, sorted non-tree edges)."""
    adj: dict[int, list[int]] = {v: [] for v in q.vertices}
    for (u, v) in q.simplices_by_dim[1]:
        adj[u].append(v)
        adj[v].append(u)
    root = q.vertices[0]
    parent = {root: root}
    queue = [root]
    while queue:
        u = queue.pop(0)
        for w in sorted(adj[u]):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if len(parent) != len(q.vertices):
        raise ColoringError("1-skeleton is disconnected")
    tree_edges = {tuple(sorted((v, p))) for v, p in parent.items() if v != p}
    non_tree = [e for e in q.simplices_by_dim[1] if e not in tree_edges]
    return parent, non_tree


def normalize_cocycle(q: StratifiedComplex, xi: Cocycle) -> Cocycle:
    """Cohomologous cocycle vanishing on the canonical spanning tree."""
    rep = validate_cocycle(q, xi)
    if not rep.ok:
        raise ColoringError(f"invalid cocycle: {rep.violations[0]}")
    parent, _ = spanning_tree(q)
    # potential: accumulated value along the tree path to the root
    potential: dict[int, int] = {}

    def pot(v: int) -> int:
        if v not in potential:
            p = parent[v]
            potential[v] = 0 if p == v else pot(p) ^ xi.value(v, p)
        return potential[v]

    vals = {}
    for (u, v) in q.simplices_by_dim[1]:
        w = xi.value(u, v) ^ pot(u) ^ pot(v)
        if w:
            vals[(u, v)] = w
    return Cocycle.from_dict(xi.n, vals)


def monodromy_subgroup(q: StratifiedComplex, xi: Cocycle) -> Subgroup:
    """Span of the normalized cocycle's values (holonomy of the cover)."""
    norm = normalize_cocycle(q, xi)
    return Subgroup.span((b for _, b in norm.values), xi.n)


def enumerate_bundle_classes(
    q: StratifiedComplex, n: int, max_classes: int = 4096
) -> list[Cocycle]:
    """One tree-normalized representative per H^1(Q;(Z2)^n) class.

    Tree-normalized cocycles biject with classes: a coboundary vanishing
    on a spanning tree of a connected complex is zero.
    """
    q.require_valid()
    _, non_tree = spanning_tree(q)
    m = len(non_tree)
    edge_pos = {e: i for i, e in enumerate(non_tree)}
    rows = []
    if q.dim >= 2:
        for (a, b, c) in q.simplices_by_dim[2]:
            row = 0
            for e in ((a, b), (b, c), (a, c)):
                if e in edge_pos:
                    row ^= 1 << edge_pos[e]
            rows.append(row)
    basis = gf2_nullspace(rows, m)
    d = len(basis)
    total = 1 << (n * d)
    if total > max_classes:
        raise ColoringError(
            f"bundle class count 2^{n * d} exceeds the guard of {max_classes}"
        )
    out = []
    for combo in itertools.product(range(1 << n), repeat=d):
        vals: dict[tuple[int, int], int] = {}
        for g, vec in zip(combo, basis):
            if not g:
                continue
            for i in range(m):
                if vec >> i & 1:
                    e = non_tree[i]
                    vals[e] = vals.get(e, 0) ^ g
        out.append(Cocycle.from_dict(n, vals))
    out.sort(key=lambda c: c.values)
    return out


# ---------------------------------------------------------------------------
# enumeration and weak equivalence of colorings


def enumerate_colorings(
    q: StratifiedComplex,
    n: int,
    up_to: str | None = None,
    max_facets: int = 12,
    max_space: int = 5_000_000,
) -> list[Coloring]:
    """All valid colorings, or weak-equivalence representatives (identity map).

    Backtracking over facets with incremental independence checks at the
    vertices; guarded against combinatorial blow-up.
    """
    q.require_valid()
    fids = sorted(q.facets)
    if len(fids) > max_facets:
        raise ColoringError(f"facet count {len(fids)} exceeds the guard of {max_facets}")
    if (2**n - 1) ** len(fids) > max_space:
        raise ColoringError("coloring search space exceeds the guard")
    vertex_constraints: list[list[str]] = []
    for v in q.vertices:
        fs = sorted(q.facet_set((v,)))
        if len(fs) >= 2:
            vertex_constraints.append(fs)
    pos = {f: i for i, f in enumerate(fids)}
    # constraints become active once their last facet is assigned
    by_last: dict[int, list[list[int]]] = {}
    for fs in vertex_constraints:
        idxs = sorted(pos[f] for f in fs)
        by_last.setdefault(idxs[-1], []).append(idxs)
    out: list[Coloring] = []
    colors = [0] * len(fids)

    def rec(i: int) -> None:
        if i == len(fids):
            out.append(Coloring(n, tuple(zip(fids, colors))))
            return
        for c in range(1, 1 << n):
            colors[i] = c
            ok = True
            for idxs in by_last.get(i, ()):
                vals = [colors[j] for j in idxs]
                if gf2_rank(vals) != len(vals):
                    ok = False
                    break
            if ok:
                rec(i + 1)
        colors[i] = 0

    rec(0)
    if up_to is None:
        return out
    if up_to != "weak":
        raise ColoringError(f"unknown equivalence {up_to!r}")
    reps: dict[tuple[int, ...], Coloring] = {}
    gl = enumerate_glnq2(n)
    for lam in out:
        vec = tuple(b for _, b in lam.assignment)
        canon = min(tuple(s.apply(b) for b in vec) for s in gl)
        if canon not in reps:
            reps[canon] = lam
    return [reps[k] for k in sorted(reps)]


@dataclass(frozen=True)
class WeakEquivalence:
    sigma: Gf2Matrix
    facet_map: tuple[tuple[str, str], ...]
    vertex_map: tuple[tuple[int, int], ...]


def weakly_equivalent(
    q1: StratifiedComplex,
    lam1: Coloring,
    q2: StratifiedComplex,
    lam2: Coloring,
    candidates: Sequence[Mapping[int, int]] | None = None,
    max_isos: int = 512,
) -> WeakEquivalence | None:
    """A facial isomorphism f and automorphism sigma with sigma(lam2(f(F))) = lam1(F).

    Searches facial isomorphisms unless candidate vertex maps are given.
    Raises on invalid colorings (incomparable inputs).
    """
    require_valid_pair(q1, lam1)
    require_valid_pair(q2, lam2)
    if lam1.n != lam2.n:
        return None
    n = lam1.n
    if candidates is None:
        l1 = {s: fid for fid, fs in q1.facets.items() for s in fs}
        l2 = {s: fid for fid, fs in q2.facets.items() for s in fs}
        candidates = find_isomorphisms(
            q1.top_simplices, q2.top_simplices, l1, l2, max_results=max_isos
        )
    for vmap in candidates:
        fmap: dict[str, str] = {}
        ok = True
        for fid, fs in q1.facets.items():
            img = {tuple(sorted(vmap[v] for v in s)) for s in fs}
            target = next(
                (g for g, gs in q2.facets.items() if img <= gs), None
            )
            if target is None or len(img) != len(q2.facets[target]):
                ok = False
                break
            fmap[fid] = target
        if not ok or len(set(fmap.values())) != len(fmap):
            continue
        pairs = [(lam2.bits(fmap[f]), lam1.bits(f)) for f in sorted(fmap)]
        sigma = extend_to_automorphism(pairs, n)
        if sigma is not None:
            return WeakEquivalence(
                sigma, tuple(sorted(fmap.items())), tuple(sorted(vmap.items()))
            )
    return None


__all__ = [
    "Coloring",
    "Cocycle",
    "ColoringError",
    "validate_coloring",
    "validate_cocycle",
    "require_valid_pair",
    "spanning_tree",
    "normalize_cocycle",
    "monodromy_subgroup",
    "enumerate_bundle_classes",
    "enumerate_colorings",
    "weakly_equivalent",
    "WeakEquivalence",
]
