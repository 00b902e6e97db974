"""Canonical builders for the example shapes, with golden homology data.

Shapes are triangulated carriers with facet labels; non-simplicial faces
(2-gons, footballs) use fixed minimal triangulations so golden tests are
deterministic.  Products are triangulated by the staircase construction,
which restricts to the product triangulation on every facet.

The football is the cone over the sphere made of two suspension points
over a triangle's boundary: two poles, three subdivided meridians, and
three 2-gon facets of two triangles each.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations

from .coloring import Cocycle, Coloring
from .complexes import StratifiedComplex

MAX_POLYGON = 12


class CatalogError(ValueError):
    pass


# ---------------------------------------------------------------------------
# elementary builders


def _interval() -> tuple[StratifiedComplex, Coloring]:
    q = StratifiedComplex(1, [(0, 1)], {"e0": [(0,)], "e1": [(1,)]}, name="interval")
    return q, Coloring.from_dict(1, {"e0": "1", "e1": "1"})


def _circle(k: int = 3) -> tuple[StratifiedComplex, Coloring]:
    edges = [(i, (i + 1) % k) for i in range(k)]
    q = StratifiedComplex(1, edges, {}, name="circle")
    return q, Coloring.from_dict(1, {})


def _polygon_colors(k: int) -> list[str]:
    # proper coloring of the facet cycle by {10, 01, 11}
    if k % 2 == 0:
        return ["10", "01"] * (k // 2)
    return ["10", "01"] * ((k - 1) // 2) + ["11"]


def _polygon(k: int) -> tuple[StratifiedComplex, Coloring]:
    """k-gon disk: corner cycle, center fan; the 2-gon gets side midpoints."""
    if not 2 <= k <= MAX_POLYGON:
        raise CatalogError(f"polygon size must be 2..{MAX_POLYGON}, got {k}")
    if k == 2:
        # boundary cycle N(1) m1(2) S(3) m2(4), center 0
        tops = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 1, 4)]
        facets = {"s1": [(1, 2), (2, 3)], "s2": [(3, 4), (1, 4)]}
        q = StratifiedComplex(2, tops, facets, name="2-gon")
        return q, Coloring.from_dict(2, {"s1": "10", "s2": "01"})
    ring = list(range(1, k + 1))
    tops = [(0, ring[i], ring[(i + 1) % k]) for i in range(k)]
    facets = {f"s{i + 1}": [(ring[i], ring[(i + 1) % k])] for i in range(k)}
    q = StratifiedComplex(2, tops, facets, name=f"{k}-gon")
    side_colors = _polygon_colors(k)
    colors = {f"s{i + 1}": side_colors[i] for i in range(k)}
    return q, Coloring.from_dict(2, colors)


def _simplex(n: int) -> tuple[StratifiedComplex, Coloring]:
    if not 1 <= n <= 3:
        raise CatalogError(f"simplex dimension must be 1..3, got {n}")
    verts = tuple(range(n + 1))
    facets = {
        f"f{i + 1}": [tuple(v for v in verts if v != i)] for i in range(n + 1)
    }
    q = StratifiedComplex(n, [verts], facets, name=f"simplex{n}")
    if n == 1:
        colors = {"f1": "1", "f2": "1"}
    elif n == 2:
        colors = {"f1": "10", "f2": "01", "f3": "11"}
    else:
        colors = {"f1": "100", "f2": "010", "f3": "001", "f4": "111"}
    return q, Coloring.from_dict(n, colors)


def _football() -> tuple[StratifiedComplex, Coloring]:
    """Solid three-edged football: cone over its two-pole/three-meridian sphere."""
    # 0 center, 1..3 equator, 4 north, 5 south
    tops = []
    for (a, b) in ((1, 2), (2, 3), (1, 3)):
        tops.append((0, 4, a, b))
        tops.append((0, 5, a, b))
    facets = {
        "p1": [(2, 3, 4), (2, 3, 5)],
        "p2": [(1, 3, 4), (1, 3, 5)],
        "p3": [(1, 2, 4), (1, 2, 5)],
    }
    q = StratifiedComplex(3, tops, facets, name="football")
    return q, Coloring.from_dict(3, {"p1": "100", "p2": "010", "p3": "001"})


# ---------------------------------------------------------------------------
# products


def product_complex(
    qa: StratifiedComplex, qb: StratifiedComplex, name: str = ""
) -> tuple[StratifiedComplex, dict[tuple[int, int], int]]:
    """Staircase triangulation of |qa| x |qb| with the product stratification.

    Facet F of a factor contributes the facet F x (other factor); vertex
    pairs are numbered lexicographically.  Returns the complex and the
    vertex-pair numbering.
    """
    pairs = sorted((a, b) for a in qa.vertices for b in qb.vertices)
    vid = {p: i for i, p in enumerate(pairs)}

    def staircases(sa, sb):
        p, qn = len(sa) - 1, len(sb) - 1
        for positions in combinations(range(p + qn), p):
            path = [(0, 0)]
            i = j = 0
            for step in range(p + qn):
                if step in positions:
                    i += 1
                else:
                    j += 1
                path.append((i, j))
            yield tuple(sorted(vid[(sa[i], sb[j])] for (i, j) in path))

    tops = []
    for sa in qa.top_simplices:
        for sb in qb.top_simplices:
            tops.extend(staircases(sa, sb))
    facets: dict[str, list] = {}
    for fid, fs in qa.facets.items():
        pieces = []
        for s in fs:
            for sb in qb.top_simplices:
                pieces.extend(staircases(s, sb))
        facets[f"{fid}x"] = pieces
    for fid, fs in qb.facets.items():
        pieces = []
        for sa in qa.top_simplices:
            for s in fs:
                pieces.extend(staircases(sa, s))
        facets[f"x{fid}"] = pieces
    q = StratifiedComplex(qa.dim + qb.dim, tops, facets, name=name)
    return q, vid


def product_coloring(
    qa: StratifiedComplex, la: Coloring, qb: StratifiedComplex, lb: Coloring
) -> Coloring:
    n = la.n + lb.n
    colors: dict[str, int] = {}
    for fid, bits in la.assignment:
        colors[f"{fid}x"] = bits
    for fid, bits in lb.assignment:
        colors[f"x{fid}"] = bits << la.n
    return Coloring.from_dict(n, colors)


def _product(a: str, b: str) -> tuple[StratifiedComplex, Coloring]:
    qa, la = make(a)
    qb, lb = make(b)
    if qa.dim + qb.dim > 3:
        raise CatalogError("product dimension exceeds 3")
    q, _ = product_complex(qa, qb, name=f"product({a},{b})")
    return q, product_coloring(qa, la, qb, lb)


# ---------------------------------------------------------------------------
# named instances


def _square() -> tuple[StratifiedComplex, Coloring]:
    q, lam = _product("interval", "interval")
    q.name = "square"
    return q, lam


def _klein_square() -> tuple[StratifiedComplex, Coloring]:
    q, _ = _product("interval", "interval")
    q.name = "klein"
    # sides in cyclic order get 10, 01, 10, 11
    lam = Coloring.from_dict(2, {"e0x": "10", "e1x": "10", "xe0": "01", "xe1": "11"})
    return q, lam


def _cube() -> tuple[StratifiedComplex, Coloring]:
    q, lam = _product("square", "interval")
    q.name = "cube"
    return q, lam


def _prism(k: int) -> tuple[StratifiedComplex, Coloring]:
    qa, la = _polygon(k)
    qb, lb = _interval()
    q, _ = product_complex(qa, qb, name=f"prism{k}")
    return q, product_coloring(qa, la, qb, lb)


def _torus() -> tuple[StratifiedComplex, Coloring]:
    q, lam = _product("circle", "circle")
    q.name = "torus"
    return q, lam


_NAMED = {
    "interval": _interval,
    "circle": _circle,
    "football": _football,
    "square": _square,
    "klein": _klein_square,
    "cube": _cube,
    "torus": _torus,
    "2-gon": lambda: _polygon(2),
    "triangle": lambda: _polygon(3),
    "pentagon": lambda: _polygon(5),
}

_PARAM = {
    "polygon": lambda k: _polygon(int(k)),
    "simplex": lambda n: _simplex(int(n)),
    "prism": lambda k: _prism(int(k)),
    "product": _product,
}


def make(name: str, **options) -> tuple[StratifiedComplex, Coloring]:
    """Build a catalog shape with its default coloring.

    Accepts plain names ("football", "interval", ...) and parametrized
    forms like "polygon(5)", "simplex(3)", "prism(4)",
    "product(interval,circle)".
    """
    name = name.strip()
    if name in _NAMED:
        q, lam = _NAMED[name]()
        return q, lam
    m = re.fullmatch(r"(\w+)\(([\w,\s-]+)\)", name)
    if m:
        head, args = m.group(1), [a.strip() for a in m.group(2).split(",")]
        if head in _PARAM:
            try:
                return _PARAM[head](*args)
            except TypeError as exc:
                raise CatalogError(f"bad arguments for {head}: {args}") from exc
    if name.startswith("simplex") and name[7:].isdigit():
        return _simplex(int(name[7:]))
    if name.startswith("prism") and name[5:].isdigit():
        return _prism(int(name[5:]))
    raise CatalogError(f"unknown catalog shape {name!r}")


def names() -> list[str]:
    return sorted(_NAMED) + ["simplex2", "simplex3", "prism3"]


# ---------------------------------------------------------------------------
# golden expectations


@dataclass(frozen=True)
class CatalogEntry:
    """Expected homology of the default build of a catalog shape.

    Expected values were fixed from closed-form identifications of the
    total spaces (sphere/torus/projective homology, Kuenneth for the
    products, covering-space counts for the closed shapes).
    """

    name: str
    n: int
    gf2_betti: tuple[int, ...]
    rational_betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    euler: int
    orientable: bool
    components: int
    provenance: str


_ENTRIES = [
    CatalogEntry("interval", 1, (1, 1), (1, 1), ((), ()), 0, True, 1,
                 "circle from the reflection interval"),
    CatalogEntry("circle", 1, (2, 2), (2, 2), ((), ()), 0, True, 2,
                 "trivial double cover of the circle"),
    CatalogEntry("2-gon", 2, (1, 0, 1), (1, 0, 1), ((), (), ()), 2, True, 1,
                 "sphere from the 2-gon disk"),
    CatalogEntry("triangle", 2, (1, 1, 1), (1, 0, 0), ((), (2,), ()), 1, False, 1,
                 "projective plane over the triangle"),
    CatalogEntry("simplex2", 2, (1, 1, 1), (1, 0, 0), ((), (2,), ()), 1, False, 1,
                 "projective plane over the bare 2-simplex"),
    CatalogEntry("square", 2, (1, 2, 1), (1, 2, 1), ((), (), ()), 0, True, 1,
                 "torus as a product of two reflection circles"),
    CatalogEntry("klein", 2, (1, 2, 1), (1, 1, 0), ((), (2,), ()), 0, False, 1,
                 "Klein bottle from the twisted square coloring"),
    CatalogEntry("pentagon", 2, (1, 3, 1), (1, 2, 0), ((), (2,), ()), -1, False, 1,
                 "nonorientable genus-3 surface over the pentagon"),
    CatalogEntry("football", 3, (1, 0, 0, 1), (1, 0, 0, 1), ((), (), (), ()), 0, True, 1,
                 "3-sphere with the coordinate reflection action"),
    CatalogEntry("simplex3", 3, (1, 1, 1, 1), (1, 0, 0, 1), ((), (2,), (), ()), 0, True, 1,
                 "real projective 3-space over the tetrahedron"),
    CatalogEntry("cube", 3, (1, 3, 3, 1), (1, 3, 3, 1), ((), (), (), ()), 0, True, 1,
                 "3-torus as a triple product of reflection circles"),
    CatalogEntry("prism3", 3, (1, 2, 2, 1), (1, 1, 0, 0), ((), (2,), (2,), ()), 0, False, 1,
                 "Kuenneth: projective plane times circle"),
    CatalogEntry("torus", 2, (4, 8, 4), (4, 8, 4), ((), (), ()), 0, True, 4,
                 "trivial 4-fold cover of the torus"),
]


def expected_profiles() -> dict[str, CatalogEntry]:
    return {e.name: e for e in _ENTRIES}


def default_build(name: str):
    """(q, coloring, trivial cocycle, built manifold) for a catalog name."""
    from .buildm import build

    q, lam = make(name)
    xi = Cocycle.zero(lam.n)
    return q, lam, xi, build(q, lam, xi)


__all__ = [
    "CatalogError",
    "CatalogEntry",
    "make",
    "names",
    "expected_profiles",
    "default_build",
    "product_complex",
    "product_coloring",
    "MAX_POLYGON",
]
