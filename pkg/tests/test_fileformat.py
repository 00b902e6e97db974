import pytest

from glueback.catalog import expected_profiles, make
from glueback.complexes import facially_isomorphic
from glueback.fileformat import ParseError, emit, parse_input


def test_emit_parse_round_trip_catalog():
    for name in sorted(expected_profiles()):
        q, lam = make(name)
        text = emit(q, lam if lam.assignment else None)
        parsed = parse_input(text)
        assert parsed.complex.dim == q.dim
        assert sorted(parsed.complex.top_simplices) == sorted(q.top_simplices)
        assert facially_isomorphic(parsed.complex, q)
        if lam.assignment:
            assert parsed.coloring is not None
            assert sorted(parsed.coloring.assignment) == sorted(lam.assignment)
        # byte-identical re-emission
        again = emit(parsed.complex, parsed.coloring, parsed.cocycle)
        assert again == text


def test_requires_format_line():
    with pytest.raises(ParseError) as exc:
        parse_input("dim 2\nsimplex 0 1 2\n")
    assert "format glueback-1" in str(exc.value)


def test_duplicate_simplex_rejected():
    text = "format glueback-1\ndim 2\nsimplex 0 1 2\nsimplex 2 1 0\n"
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    assert "duplicate simplex" in str(exc.value)
    assert "line 4" in str(exc.value)


def test_unknown_facet_color_rejected():
    q, lam = make("2-gon")
    text = emit(q, lam) + "color F9 10\n"
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    assert "F9" in str(exc.value)


def test_wrong_width_bitstring_rejected():
    q, lam = make("2-gon")
    text = emit(q, lam).replace("color s2 01", "color s2 011")
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    assert "width" in str(exc.value) and "expected 2" in str(exc.value)


def test_offboundary_facet_tuple_rejected():
    # the diagonal (0 2) of the square fan is interior
    text = (
        "format glueback-1\n"
        "dim 2\n"
        "simplex 0 1 2\nsimplex 0 2 3\nsimplex 0 3 4\nsimplex 0 1 4\n"
        "facet bad { (0 2) }\n"
    )
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    assert "not on the boundary" in str(exc.value)
    assert "line 7" in str(exc.value)


def test_cocycle_edge_must_exist():
    text = (
        "format glueback-1\ndim 1\nsimplex 0 1\nsimplex 1 2\nsimplex 0 2\n"
        "cocycle (0 9) 1\n"
    )
    with pytest.raises(ParseError):
        parse_input(text)


def test_partial_coloring_rejected():
    q, lam = make("2-gon")
    text = emit(q, lam)
    text = text.replace("color s2 01\n", "")
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    assert "without colors" in str(exc.value)


def test_comments_and_blank_lines_ignored():
    q, lam = make("interval")
    text = emit(q, lam)
    noisy = "\n".join(
        ["# header comment"] * 0
        + [line + "   # trailing" for line in text.splitlines()]
    )
    parsed = parse_input(noisy)
    assert sorted(parsed.complex.top_simplices) == sorted(q.top_simplices)


def test_bad_directive_reports_line():
    text = "format glueback-1\ndim 1\nsimplex 0 1\nfrobnicate 1\n"
    with pytest.raises(ParseError) as exc:
        parse_input(text)
    assert "line 4" in str(exc.value)
