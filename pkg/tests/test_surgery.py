import pytest

from glueback.buildm import build
from glueback.catalog import make
from glueback.coloring import Cocycle, Coloring, validate_coloring
from glueback.complexes import closure
from glueback.homology import full_profile, gf2_betti
from glueback.surgery import (
    Excision,
    SurgeryError,
    attach_external_collar,
    boundary_pattern,
    cut_and_paste,
    ensure_connected_sum_site,
    equivariant_connected_sum,
    fill_hole,
    subdivide_top_simplex,
    unfill_hole,
)


def _chi(simplices):
    return sum((-1) ** (len(s) - 1) for s in simplices)


def test_collar_preserves_validity_and_homotopy_data():
    for name in ("football", "simplex(3)", "2-gon", "square"):
        q, lam = make(name)
        q2, lam2 = attach_external_collar(q, lam)
        assert q2.validate().ok
        assert validate_coloring(q2, lam2).ok
        assert q2.euler_characteristic() == q.euler_characteristic()
        assert len(q2.boundary_components()) == len(q.boundary_components())
        # the built manifolds agree in homology (collar is a product region)
        p1 = full_profile(build(q, lam).delta)
        p2 = full_profile(build(q2, lam2).delta)
        assert p1 == p2


def test_subdivision_site():
    q, lam = make("cube")
    q2, c = subdivide_top_simplex(q, q.top_simplices[0])
    assert q2.validate().ok
    assert c not in q.vertices
    assert q2.euler_characteristic() == q.euler_characteristic()


def test_ensure_site_football_needs_collar():
    q, lam = make("football")
    q2, lam2, v = ensure_connected_sum_site(q, lam)
    assert len(q2.vertices) > len(q.vertices)  # collared and/or subdivided
    assert not q2.facet_set((v,))
    assert all(not q2.facet_set(s) for s in q2.link(v))


def test_ensure_site_rejects_bad_vertex():
    q, lam = make("football")
    with pytest.raises(SurgeryError):
        ensure_connected_sum_site(q, lam, vertex=0)  # link is the whole boundary


def test_football_connected_sum_eight_tubes():
    q, lam = make("football")
    qq, ll = equivariant_connected_sum(q, lam, q, lam)
    assert qq.validate().ok
    assert validate_coloring(qq, ll).ok
    m = build(qq, ll)
    assert full_profile(m.delta).gf2_betti == (1, 7, 7, 1)
    assert m.components() == 1


def test_rp3_football_connected_sum():
    qa, la = make("simplex(3)")
    qb, lb = make("football")
    qq, ll = equivariant_connected_sum(qa, la, qb, lb)
    m = build(qq, ll)
    assert gf2_betti(m.delta) == (1, 8, 8, 1)


def test_connected_sum_chi_additivity():
    qa, la = make("football")
    qa2, la2, v1 = ensure_connected_sum_site(qa, la)
    qb2, lb2, v2 = ensure_connected_sum_site(*make("simplex(3)"))
    qq, ll = cut_and_paste(
        qa2, la2, Excision.ball(v1), qb2, lb2, Excision.ball(v2)
    )
    star1 = {s for s in closure(qa2.top_simplices) if v1 in s}
    star2 = {s for s in closure(qb2.top_simplices) if v2 in s}
    rem1 = _chi(closure(qa2.top_simplices) - star1)
    rem2 = _chi(closure(qb2.top_simplices) - star2)
    # the section is the link sphere: chi = 2
    assert qq.euler_characteristic() == rem1 + rem2 - 2


def test_fill_hole_football_and_inverse():
    q, lam = make("football")
    q2, lam2, rec = fill_hole(q, lam, 0)
    assert rec.pattern == "football-pattern"
    assert not q2.has_boundary()
    assert q2.validate().ok
    # the filled carrier is a homology 3-sphere
    assert gf2_betti(q2.delta()) == (1, 0, 0, 1)
    m = build(q2, Coloring.from_dict(3, {}))
    assert m.components() == 8
    # exact inverse
    q3, lam3 = unfill_hole(q2, lam2, rec)
    assert sorted(q3.top_simplices) == sorted(q.top_simplices)
    assert {f: sorted(fs) for f, fs in q3.facets.items()} == {
        f: sorted(fs) for f, fs in q.facets.items()
    }
    assert sorted(lam3.assignment) == sorted(lam.assignment)


def test_fill_hole_tetrahedron_pattern():
    q, lam = make("simplex(3)")
    q2, lam2, rec = fill_hole(q, lam, 0, expected_pattern="tetrahedron-pattern")
    m = build(q2, Coloring.from_dict(3, {}))
    assert m.components() == 8
    q3, lam3 = unfill_hole(q2, lam2, rec)
    assert sorted(q3.top_simplices) == sorted(q.top_simplices)
    assert sorted(lam3.assignment) == sorted(lam.assignment)


def test_fill_hole_rejects_other_patterns():
    q, lam = make("cube")
    with pytest.raises(SurgeryError):
        fill_hole(q, lam, 0)


def test_fill_hole_reduces_boundary_count():
    # two-boundary-sphere complex from a connected sum of footballs
    q, lam = make("football")
    qq, ll = equivariant_connected_sum(q, lam, q, lam)
    assert len(qq.boundary_components()) == 2
    q2, l2, _ = fill_hole(qq, ll, 0)
    assert len(q2.boundary_components()) == 1
    q3, l3, _ = fill_hole(q2, l2, 0)
    assert not q3.has_boundary()
    m = build(q3, Coloring.from_dict(3, {}))
    assert m.components() == 8


def test_boundary_pattern_classification():
    q, _ = make("football")
    assert boundary_pattern(q, q.boundary_components()[0]) == "football-pattern"
    q, _ = make("simplex(3)")
    assert boundary_pattern(q, q.boundary_components()[0]) == "tetrahedron-pattern"
    q, _ = make("cube")
    assert boundary_pattern(q, q.boundary_components()[0]) == "other"


def test_surgery_rejects_nontrivial_bundles():
    q, lam = make("football")
    q1, l1, v1 = ensure_connected_sum_site(q, lam)
    xi = Cocycle.from_dict(3, {tuple(q1.simplices_by_dim[1][0]): 1})
    with pytest.raises(SurgeryError) as exc:
        cut_and_paste(
            q1, l1, Excision.ball(v1), q1, l1, Excision.ball(v1), xi1=xi
        )
    assert "trivial bundle" in str(exc.value)


def test_cut_and_paste_collar_collar_round():
    # gluing two footballs along their stripped boundary spheres doubles the
    # ball into a closed homology sphere carrier
    q, lam = make("football")
    qq, ll = cut_and_paste(
        q, lam, Excision.collar(0), q, lam, Excision.collar(0)
    )
    assert not qq.has_boundary()
    assert gf2_betti(qq.delta()) == (1, 0, 0, 1)
    m = build(qq, Coloring.from_dict(3, {}))
    assert m.components() == 8


def test_case_a_star_surgery_merges_facets():
    # cutting a boundary-corner star from two center-fanned squares and
    # gluing the sections produces a 2-gon; the side facets that abut the
    # section boundary merge pairwise (the two facets at the corner vanish
    # with the star)
    qa, la = make("polygon(4)")
    corner = 2  # ring vertex between sides s1 and s2
    qq, ll = cut_and_paste(
        qa, la, Excision.star([corner]), qa, la, Excision.star([corner])
    )
    assert qq.validate().ok
    assert validate_coloring(qq, ll).ok
    assert len(qq.facets) == 2  # two merged arcs: a 2-gon
    corners = [v for v in qq.vertices if len(qq.facet_set((v,))) == 2]
    assert len(corners) == 2
    # chi additivity: disk + disk - arc
    assert qq.euler_characteristic() == 1
    m = build(qq, ll)
    assert full_profile(m.delta).gf2_betti == (1, 0, 1)


def test_case_a_color_mismatch_rejected():
    # side-2 colors chosen so the surviving sides cannot match under any
    # section isomorphism: s3 recolored to 11 while s4 stays 01
    qa, la = make("polygon(4)")
    lb = Coloring.from_dict(
        2, {"s1": "10", "s2": "01", "s3": "11", "s4": "01"}
    )
    assert validate_coloring(qa, lb).ok
    with pytest.raises(SurgeryError) as exc:
        cut_and_paste(
            qa, la, Excision.star([2]), qa, lb, Excision.star([2])
        )
    assert "color" in str(exc.value).lower()


def test_matching_with_sigma_twist():
    # connected sum where the second summand's colors are a GL twist of the
    # first: passing sigma aligns them
    qa, la = make("football")
    twisted = Coloring.from_dict(3, {"p1": "110", "p2": "010", "p3": "001"})
    qq, ll = equivariant_connected_sum(qa, la, qa, twisted)
    assert validate_coloring(qq, ll).ok
    m = build(qq, ll)
    assert gf2_betti(m.delta) == (1, 7, 7, 1)
