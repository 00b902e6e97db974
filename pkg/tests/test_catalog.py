import pytest

from glueback.catalog import (
    CatalogError,
    default_build,
    expected_profiles,
    make,
    names,
    product_complex,
)
from glueback.coloring import validate_coloring
from glueback.homology import full_profile


def test_every_entry_matches_its_golden_profile():
    for name, entry in expected_profiles().items():
        q, lam, xi, m = default_build(name)
        assert q.validate().ok, name
        assert validate_coloring(q, lam).ok, name
        prof = full_profile(m.delta)
        assert prof.gf2_betti == entry.gf2_betti, name
        assert prof.rational_betti == entry.rational_betti, name
        assert prof.torsion == entry.torsion, name
        assert prof.euler == entry.euler, name
        assert prof.orientable == entry.orientable, name
        assert prof.components == entry.components, name


def test_football_boundary_combinatorics():
    q, lam = make("football")
    comp = q.boundary_components()[0]
    verts = [s for s in comp.simplices if len(s) == 1]
    # two poles at depth three, three meridian midpoints at depth two
    depth = sorted(len(q.facet_set(v)) for v in verts)
    assert depth == [2, 2, 2, 3, 3]
    assert sorted(comp.polygon_sizes.values()) == [2, 2, 2]


def test_parametrized_names():
    for spec, dim in (
        ("polygon(6)", 2),
        ("simplex(2)", 2),
        ("prism(4)", 3),
        ("product(interval,circle)", 2),
    ):
        q, lam = make(spec)
        assert q.dim == dim
        assert q.validate().ok, spec
        assert validate_coloring(q, lam).ok, spec


def test_guards():
    with pytest.raises(CatalogError):
        make("polygon(99)")
    with pytest.raises(CatalogError):
        make("simplex(4)")
    with pytest.raises(CatalogError):
        make("no-such-shape")
    with pytest.raises(CatalogError):
        make("product(cube,interval)")  # dimension 4


def test_product_chi_multiplicative():
    cases = [("interval", "interval"), ("triangle", "interval"), ("circle", "circle")]
    for a, b in cases:
        qa, _ = make(a)
        qb, _ = make(b)
        q, _ = product_complex(qa, qb)
        assert (
            q.euler_characteristic()
            == qa.euler_characteristic() * qb.euler_characteristic()
        )


def test_product_facet_counts():
    q, _ = make("cube")
    assert len(q.facets) == 6
    q, _ = make("prism(3)")
    assert len(q.facets) == 5  # three sides and two ends


def test_names_all_buildable():
    for name in names():
        q, lam = make(name)
        assert q.validate().ok, name


def test_annulus_has_corner_free_facets():
    # interval x circle: two boundary circles, each one corner-free facet
    q, lam = make("product(interval,circle)")
    comps = q.boundary_components()
    assert len(comps) == 2
    for comp in comps:
        assert len(comp.facet_ids) == 1
        assert list(comp.polygon_sizes.values()) == [0]
    assert validate_coloring(q, lam).ok
    # with the trivial bundle the free circle direction splits: two tori;
    # monodromy transverse to the facet color joins them into one
    from glueback.buildm import build
    from glueback.coloring import enumerate_bundle_classes, monodromy_subgroup
    from glueback.gf2 import Subgroup

    m2 = build(q, lam)
    assert full_profile(m2.delta).gf2_betti == (2, 4, 2)
    classes = enumerate_bundle_classes(q, 2)
    assert len(classes) == 4
    facet_bits = [b for _, b in lam.assignment]
    saw_single_torus = False
    for xi in classes:
        mono = monodromy_subgroup(q, xi)
        prof = full_profile(build(q, lam, xi).delta)
        # component count is the index of the span of colors and monodromy
        total = Subgroup.span(facet_bits + list(mono.basis), 2)
        assert prof.components == (1 << 2) >> total.rank
        if prof.components == 1:
            saw_single_torus = True
            assert prof.gf2_betti == (1, 2, 1)
    assert saw_single_torus
