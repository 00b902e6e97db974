"""Equivariant cut-and-paste at the orbit-space level.

Excisions remove a nice open piece and expose a section to glue along:

* ``ball``   -- the open star of an interior vertex; the section is its
  link, which must be a sphere away from the boundary.
* ``collar`` -- an open neighborhood of a whole boundary component; the
  component's facets are forgotten and its sphere becomes the section
  (the complex itself is unchanged up to the collar homeomorphism).
* ``star``   -- the union of open stars of an arbitrary vertex set; the
  general form, the only one whose sections may have boundary.

Gluing matches the two sections by a simplicial isomorphism; when the
sections are closed the corner structures are untouched, and when they
have boundary the facets meeting the section boundary are merged in
pairs and must carry equal colors.  Only trivial bundle data passes
through surgery; a nontrivial cocycle is rejected with a diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .coloring import Cocycle, Coloring, require_valid_pair, validate_coloring
from .complexes import (
    Simplex,
    StratifiedComplex,
    closure,
    find_isomorphisms,
)
from .gf2 import Gf2Matrix, extend_to_automorphism


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class Excision:
    """A nice open submanifold to remove, named by kind and anchor."""

    kind: str  # "ball" | "collar" | "star"
    vertex: int | None = None
    component: int | None = None
    core: frozenset[int] | None = None

    @classmethod
    def ball(cls, vertex: int) -> "Excision":
        return cls("ball", vertex=vertex)

    @classmethod
    def collar(cls, component: int) -> "Excision":
        return cls("collar", component=component)

    @classmethod
    def star(cls, vertices) -> "Excision":
        return cls("star", core=frozenset(vertices))


@dataclass(frozen=True)
class Matching:
    """Vertex bijection between two sections, with an optional color twist."""

    vertex_map: Mapping[int, int]
    sigma: Gf2Matrix | None = None


@dataclass
class _Side:
    tops: list[Simplex]
    facets: dict[str, set[Simplex]]
    colors: dict[str, int]
    section: set[Simplex]
    degenerate: bool

    def section_tops(self, n: int) -> list[Simplex]:
        return sorted(s for s in self.section if len(s) == n)

    def simplices(self) -> set[Simplex]:
        out = set(closure(self.tops)) if self.tops else set()
        out |= self.section
        for fs in self.facets.values():
            out |= closure(fs)
        return out

    def euler(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices())


def _reject_bundle(xi: Cocycle | None, side: str) -> None:
    if xi is not None and not xi.is_zero():
        raise SurgeryError(
            f"surgery supports only trivial bundle data; {side} carries a "
            "nontrivial cocycle (how the glued bundle datum should be "
            "assembled is deliberately unsupported)"
        )


def _prepare(q: StratifiedComplex, lam: Coloring, exc: Excision) -> _Side:
    require_valid_pair(q, lam)
    n = q.dim
    colors = lam.as_dict()
    if exc.kind == "collar":
        comps = q.boundary_components()
        if exc.component is None or not 0 <= exc.component < len(comps):
            raise SurgeryError(
                f"no boundary component {exc.component} (found {len(comps)})"
            )
        comp = comps[exc.component]
        keep_facets = {
            fid: set(fs)
            for fid, fs in q.facets.items()
            if fid not in comp.facet_ids
        }
        return _Side(
            tops=list(q.top_simplices),
            facets=keep_facets,
            colors={f: colors[f] for f in keep_facets},
            section=set(comp.simplices),
            degenerate=False,
        )
    if exc.kind == "ball":
        core = frozenset({exc.vertex})
        if exc.vertex not in q.vertices:
            raise SurgeryError(f"no vertex {exc.vertex}")
        if q.facet_set((exc.vertex,)):
            raise SurgeryError(f"vertex {exc.vertex} is not interior")
    elif exc.kind == "star":
        core = exc.core or frozenset()
        if not core <= set(q.vertices):
            raise SurgeryError("star core contains unknown vertices")
    else:
        raise SurgeryError(f"unknown excision kind {exc.kind!r}")
    core_set = set(core)
    tops = [s for s in q.top_simplices if not core_set & set(s)]
    section: set[Simplex] = set()
    for level in q.simplices_by_dim:
        for s in level:
            inside = core_set & set(s)
            if inside and len(inside) < len(s):
                rest = tuple(v for v in s if v not in core_set)
                section.add(rest)
    facets: dict[str, set[Simplex]] = {}
    for fid, fs in q.facets.items():
        keep = {s for s in fs if not core_set & set(s)}
        if keep:
            facets[fid] = keep
    degenerate = not tops
    if exc.kind == "ball" and not degenerate:
        # interior-ball sections must avoid the boundary entirely
        for s in section:
            if q.facet_set(s):
                raise SurgeryError(
                    f"link of vertex {exc.vertex} touches the boundary at {s}; "
                    "use a star excision or collar the complex first"
                )
    return _Side(
        tops=tops,
        facets=facets,
        colors={f: colors[f] for f in facets},
        section=section,
        degenerate=degenerate,
    )


def _section_closed(section: set[Simplex], n: int) -> bool:
    tops = [s for s in section if len(s) == n]
    count: dict[Simplex, int] = {}
    for s in tops:
        for i in range(len(s)):
            f = s[:i] + s[i + 1 :]
            count[f] = count.get(f, 0) + 1
    return all(c == 2 for c in count.values())


def _facet_of(facets: dict[str, set[Simplex]], s: Simplex) -> list[str]:
    return sorted(fid for fid, fs in facets.items() if any(set(s) <= set(t) for t in fs))


def _find_section_match(
    side1: _Side, side2: _Side, n: int, max_isos: int = 64
) -> list[dict[int, int]]:
    tops1 = side1.section_tops(n)
    tops2 = side2.section_tops(n)
    l1 = {s: "|".join(_facet_of(side1.facets, s)) for s in tops1}
    l2 = {s: "|".join(_facet_of(side2.facets, s)) for s in tops2}
    l1 = {s: v for s, v in l1.items() if v}
    l2 = {s: v for s, v in l2.items() if v}
    if not l1 or not l2:
        # facets on at most one side: the pattern carries no matching constraint
        l1, l2 = {}, {}
    return find_isomorphisms(tops1, tops2, l1, l2, max_results=max_isos)


def cut_and_paste(
    q1: StratifiedComplex,
    lam1: Coloring,
    exc1: Excision,
    q2: StratifiedComplex,
    lam2: Coloring,
    exc2: Excision,
    match: Matching | None = None,
    xi1: Cocycle | None = None,
    xi2: Cocycle | None = None,
) -> tuple[StratifiedComplex, Coloring]:
    """Glue the two excised complexes along their matched sections.

    Returns the glued stratified complex and coloring, both validated.
    """
    _reject_bundle(xi1, "the first input")
    _reject_bundle(xi2, "the second input")
    if q1.dim != q2.dim:
        raise SurgeryError("dimension mismatch")
    if lam1.n != lam2.n:
        raise SurgeryError("ambient rank mismatch")
    n = q1.dim
    side1 = _prepare(q1, lam1, exc1)
    side2 = _prepare(q2, lam2, exc2)
    if side1.degenerate and side2.degenerate:
        raise SurgeryError("both remainders are degenerate; nothing to glue")
    closed1 = _section_closed(side1.section, n)
    closed2 = _section_closed(side2.section, n)
    if closed1 != closed2:
        raise SurgeryError("sections disagree on having boundary")
    sigma = match.sigma if match else None
    if match is not None:
        candidates = [dict(match.vertex_map)]
    else:
        candidates = _find_section_match(side1, side2, n)
        if not candidates:
            raise SurgeryError("no section isomorphism found")
    vmap_err = None
    for vmap in candidates:
        try:
            return _glue(side1, side2, vmap, sigma, n, lam1.n)
        except SurgeryError as exc:
            vmap_err = exc
    raise vmap_err


def _glue(
    side1: _Side,
    side2: _Side,
    vmap21: Mapping[int, int],
    sigma: Gf2Matrix | None,
    n: int,
    rank: int,
) -> tuple[StratifiedComplex, Coloring]:
    # vmap21 maps section-1 vertices to section-2 vertices; build the reverse
    sec1_verts = {v for s in side1.section for v in s}
    sec2_verts = {v for s in side2.section for v in s}
    fwd = dict(vmap21)
    if set(fwd) != sec1_verts or set(fwd.values()) != sec2_verts:
        raise SurgeryError("matching does not biject the section vertices")
    rev = {w: v for v, w in fwd.items()}
    # renamed images of section simplices must match exactly
    img = {tuple(sorted(fwd[v] for v in s)) for s in side1.section}
    if img != side2.section:
        raise SurgeryError("matching is not a simplicial isomorphism of sections")
    # color matching where BOTH sides carry facets on the section; a facet on
    # one side only is imported as-is and vetted by the final validation
    pairs = []
    for s in side1.section_tops(n):
        f1 = _facet_of(side1.facets, s)
        f2 = _facet_of(side2.facets, tuple(sorted(fwd[v] for v in s)))
        if len(f1) > 1 or len(f2) > 1:
            raise SurgeryError("section simplex inside several facets")
        if f1 and f2:
            pairs.append((side2.colors[f2[0]], side1.colors[f1[0]]))
    if pairs:
        if sigma is None:
            sigma = extend_to_automorphism(sorted(set(pairs)), rank)
            if sigma is None:
                bad = sorted(set(pairs))[0]
                raise SurgeryError(
                    f"section colors do not match (no automorphism sends "
                    f"{bad[0]:0{rank}b} to {bad[1]:0{rank}b})"
                )
        else:
            for c2, c1 in pairs:
                if sigma.apply(c2) != c1:
                    raise SurgeryError(
                        f"matching violates color equality at a section facet"
                    )
    twist = (lambda b: sigma.apply(b)) if sigma is not None else (lambda b: b)

    # rename side-2 vertices: section vertices through the match, rest fresh
    all2 = {v for s in side2.simplices() for v in s}
    used1 = {v for s in side1.simplices() for v in s}
    nxt = (max(used1) if used1 else -1) + 1
    rename: dict[int, int] = {}
    for v in sorted(all2):
        if v in rev:
            rename[v] = rev[v]
        else:
            rename[v] = nxt
            nxt += 1

    def ren(s: Simplex) -> Simplex:
        return tuple(sorted(rename[v] for v in s))

    tops = sorted(set(side1.tops) | {ren(s) for s in side2.tops})
    if not tops:
        raise SurgeryError("glued complex has no top cells")
    facets: dict[str, set[Simplex]] = {}
    colors: dict[str, int] = {}
    parent: dict[str, str] = {}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for fid, fs in side1.facets.items():
        key = f"L:{fid}"
        facets[key] = set(fs)
        colors[key] = side1.colors[fid]
        parent[key] = key
    for fid, fs in side2.facets.items():
        key = f"R:{fid}"
        facets[key] = {ren(s) for s in fs}
        colors[key] = twist(side2.colors[fid])
        parent[key] = key

    # case (a): sections with boundary merge the abutting facets pairwise
    if not _section_closed(side1.section, n):
        sec_tops1 = side1.section_tops(n)
        count: dict[Simplex, int] = {}
        for s in sec_tops1:
            for i in range(len(s)):
                f = s[:i] + s[i + 1 :]
                count[f] = count.get(f, 0) + 1
        rim = [f for f, c in count.items() if c == 1]
        for f in rim:
            # side-2 section vertices rename back through the match, so the
            # image of a rim simplex in the glued complex is f itself
            own1 = [
                k for k, fs in facets.items()
                if k.startswith("L:") and any(set(f) <= set(t) for t in fs)
            ]
            own2 = [
                k for k, fs in facets.items()
                if k.startswith("R:") and any(set(f) <= set(t) for t in fs)
            ]
            if len(own1) != 1 or len(own2) != 1:
                raise SurgeryError(
                    f"cannot merge facets along {f}: found {own1} and {own2}"
                )
            a, b = find(own1[0]), find(own2[0])
            if colors[a] != colors[b]:
                raise SurgeryError(
                    f"non-matching colors: facets {own1[0]} and {own2[0]} meet "
                    f"along the section with colors "
                    f"{colors[a]:0{rank}b} != {colors[b]:0{rank}b}"
                )
            if a != b:
                parent[a] = b

    merged: dict[str, set[Simplex]] = {}
    merged_colors: dict[str, int] = {}
    for key, fs in facets.items():
        root = find(key)
        merged.setdefault(root, set()).update(fs)
        merged_colors[root] = colors[root]
    # stable readable facet ids
    out_facets: dict[str, list[Simplex]] = {}
    out_colors: dict[str, int] = {}
    for root in sorted(merged):
        fid = root.split(":", 1)[1]
        if fid in out_facets:
            fid = root.replace(":", "_")
        out_facets[fid] = sorted(merged[root])
        out_colors[fid] = merged_colors[root]

    q = StratifiedComplex(n, tops, out_facets, name="glued")
    rep = q.validate()
    if not rep.ok:
        raise SurgeryError(f"glued complex is invalid: {rep.violations[0]}")
    lam = Coloring.from_dict(rank, out_colors)
    crep = validate_coloring(q, lam)
    if not crep.ok:
        raise SurgeryError(f"glued coloring is invalid: {crep.violations[0]}")
    return q, lam


# ---------------------------------------------------------------------------
# collaring and connected-sum sites


def attach_external_collar(
    q: StratifiedComplex, lam: Coloring
) -> tuple[StratifiedComplex, Coloring]:
    """Push every boundary component outward through a triangulated collar.

    The old boundary becomes interior; each facet moves to its fresh copy
    with the same name and color.  The result is PL-homeomorphic to q.
    """
    require_valid_pair(q, lam)
    n = q.dim
    bverts = sorted({v for s in q.boundary_simplices() for v in s})
    if not bverts:
        return q, lam
    base = max(q.vertices) + 1
    prime = {v: base + i for i, v in enumerate(bverts)}
    tops = list(q.top_simplices)
    for s in sorted(q.facets and {t for fs in q.facets.values() for t in fs}):
        # staircase prism cells over the boundary (n-1)-simplex s
        for i in range(n):
            cell = s[: i + 1] + tuple(prime[v] for v in s[i:])
            tops.append(tuple(sorted(cell)))
    facets = {
        fid: [tuple(sorted(prime[v] for v in s)) for s in fs]
        for fid, fs in q.facets.items()
    }
    q2 = StratifiedComplex(n, tops, facets, name=f"collar({q.name})")
    q2.require_valid()
    return q2, Coloring.from_dict(lam.n, lam.as_dict())


def subdivide_top_simplex(
    q: StratifiedComplex, top: Simplex
) -> tuple[StratifiedComplex, int]:
    """Star-subdivide one top simplex at a new center vertex."""
    top = tuple(sorted(top))
    if top not in set(q.top_simplices):
        raise SurgeryError(f"{top} is not a top simplex")
    c = max(q.vertices) + 1
    tops = [s for s in q.top_simplices if s != top]
    for i in range(len(top)):
        tops.append(tuple(sorted(top[:i] + top[i + 1 :] + (c,))))
    facets = {fid: list(fs) for fid, fs in q.facets.items()}
    q2 = StratifiedComplex(q.dim, tops, facets, name=q.name)
    return q2, c


def _ball_eligible(q: StratifiedComplex, v: int) -> bool:
    if q.facet_set((v,)):
        return False
    return all(not q.facet_set(s) for s in q.link(v))


def ensure_connected_sum_site(
    q: StratifiedComplex, lam: Coloring, vertex: int | None = None
) -> tuple[StratifiedComplex, Coloring, int]:
    """A free interior-ball site with the standard boundary-of-simplex link.

    Unless an explicit vertex is given, the site is made by star-subdividing
    a top simplex whose closure avoids the boundary (collaring first when no
    such simplex exists), so default sections on the two sides of a sum are
    always isomorphic.
    """
    require_valid_pair(q, lam)
    if vertex is not None:
        if not _ball_eligible(q, vertex):
            raise SurgeryError(
                f"vertex {vertex} is not an interior-ball site (link meets the boundary)"
            )
        return q, lam, vertex
    for attempt in range(2):
        for top in q.top_simplices:
            faces = [f for f in closure([top]) if len(f) <= q.dim]
            if all(not q.facet_set(f) for f in faces):
                q2, c = subdivide_top_simplex(q, top)
                q2.require_valid()
                return q2, lam, c
        q, lam = attach_external_collar(q, lam)
    raise SurgeryError("could not create an interior-ball site")


def equivariant_connected_sum(
    q1: StratifiedComplex,
    lam1: Coloring,
    q2: StratifiedComplex,
    lam2: Coloring,
    v1: int | None = None,
    v2: int | None = None,
    match: Matching | None = None,
) -> tuple[StratifiedComplex, Coloring]:
    """Cut-and-paste at free interior balls (the equivariant connected sum).

    Inputs without a usable interior vertex are collared/subdivided first,
    which changes the triangulation but not the underlying pair.
    """
    q1, lam1, site1 = ensure_connected_sum_site(q1, lam1, v1)
    q2, lam2, site2 = ensure_connected_sum_site(q2, lam2, v2)
    return cut_and_paste(
        q1, lam1, Excision.ball(site1), q2, lam2, Excision.ball(site2), match
    )


# ---------------------------------------------------------------------------
# fill a hole


@dataclass(frozen=True)
class FillRecord:
    """Everything needed to invert a fill exactly."""

    plug_vertex: int
    pattern: str
    component_tops: tuple[Simplex, ...]
    facets: tuple[tuple[str, tuple[Simplex, ...]], ...]
    colors: tuple[tuple[str, int], ...]

    def model(self) -> tuple[StratifiedComplex, Coloring]:
        """The colored cone ball whose boundary is the filled component."""
        n_rank = len(self.colors) and max(b for _, b in self.colors).bit_length()
        tops = [tuple(sorted(s + (self.plug_vertex,))) for s in self.component_tops]
        q = StratifiedComplex(
            len(self.component_tops[0]),
            tops,
            {fid: list(fs) for fid, fs in self.facets},
            name="fill-model",
        )
        return q, Coloring.from_dict(max(3, n_rank), dict(self.colors))


def boundary_pattern(q: StratifiedComplex, component) -> str:
    """football-pattern / tetrahedron-pattern / other, from the tessellation."""
    if not component.is_sphere(q.dim - 1):
        return "other"
    sizes = sorted(component.polygon_sizes.values())
    if sizes == [2, 2, 2]:
        return "football-pattern"
    if sizes == [3, 3, 3, 3]:
        return "tetrahedron-pattern"
    return "other"


def fill_hole(
    q: StratifiedComplex,
    lam: Coloring,
    component_index: int,
    expected_pattern: str | None = None,
) -> tuple[StratifiedComplex, Coloring, FillRecord]:
    """Replace a collar of one boundary sphere with a ball.

    The component must be football- or tetrahedron-patterned and its
    colors weakly standard; the cut-and-paste glues the cone over the
    component into the collar-stripped complex.
    """
    require_valid_pair(q, lam)
    if q.dim != 3:
        raise SurgeryError("fill-a-hole is a 3-dimensional operation")
    comps = q.boundary_components()
    if not 0 <= component_index < len(comps):
        raise SurgeryError(f"no boundary component {component_index}")
    comp = comps[component_index]
    pattern = boundary_pattern(q, comp)
    if pattern == "other":
        raise SurgeryError(
            "boundary component is neither football- nor tetrahedron-patterned"
        )
    if expected_pattern and pattern != expected_pattern:
        raise SurgeryError(f"boundary pattern is {pattern}, not {expected_pattern}")
    # weak standardness of the component's colors
    from .catalog import make

    model_name = "football" if pattern == "football-pattern" else "simplex(3)"
    _, std_lam = make(model_name)
    std = sorted(b for _, b in std_lam.assignment)
    own = sorted(lam.bits(f) for f in comp.facet_ids)
    sigma = extend_to_automorphism(list(zip(own, std)), lam.n)
    if sigma is None:
        raise SurgeryError(
            f"component colors are not weakly standard for {pattern}"
        )
    plug = max(q.vertices) + 1
    comp_tops = tuple(s for s in comp.simplices if len(s) == q.dim)
    record = FillRecord(
        plug_vertex=plug,
        pattern=pattern,
        component_tops=comp_tops,
        facets=tuple(
            (fid, tuple(sorted(q.facets[fid]))) for fid in comp.facet_ids
        ),
        colors=tuple((fid, lam.bits(fid)) for fid in comp.facet_ids),
    )
    tops = list(q.top_simplices) + [
        tuple(sorted(s + (plug,))) for s in comp_tops
    ]
    facets = {
        fid: sorted(fs) for fid, fs in q.facets.items() if fid not in comp.facet_ids
    }
    colors = {fid: lam.bits(fid) for fid in facets}
    q2 = StratifiedComplex(q.dim, tops, facets, name=f"filled({q.name})")
    rep = q2.validate()
    if not rep.ok:
        raise SurgeryError(f"filled complex is invalid: {rep.violations[0]}")
    lam2 = Coloring.from_dict(lam.n, colors)
    crep = validate_coloring(q2, lam2)
    if not crep.ok:
        raise SurgeryError(f"filled coloring is invalid: {crep.violations[0]}")
    return q2, lam2, record


def unfill_hole(
    q: StratifiedComplex, lam: Coloring, record: FillRecord
) -> tuple[StratifiedComplex, Coloring]:
    """Exact inverse of fill_hole: connected sum with the recorded ball model.

    Runs the ball/ball cut-and-paste of the filled complex with the colored
    cone model at its center, with the identity section matching.
    """
    model_q, model_lam = record.model()
    model_lam = Coloring.from_dict(lam.n, dict(record.colors))
    link = {v for s in record.component_tops for v in s}
    ident = Matching(vertex_map={v: v for v in sorted(link)})
    return cut_and_paste(
        q,
        lam,
        Excision.ball(record.plug_vertex),
        model_q,
        model_lam,
        Excision.ball(record.plug_vertex),
        ident,
    )


__all__ = [
    "SurgeryError",
    "Excision",
    "Matching",
    "FillRecord",
    "cut_and_paste",
    "equivariant_connected_sum",
    "attach_external_collar",
    "subdivide_top_simplex",
    "ensure_connected_sum_site",
    "fill_hole",
    "unfill_hole",
    "boundary_pattern",
]
