"""Line-oriented orbit-space file format, version "glueback-1".

    format glueback-1
    dim 3
    vertex 0                      # optional; vertices are implied by simplices
    simplex 0 1 2 3               # top-dimensional; faces close automatically
    facet p1 { (1 2 4) (1 2 5) }
    color p1 100
    cocycle (0 1) 101             # optional bundle datum

'#' starts a comment.  Diagnostics carry the line number and offending
token; duplicate simplices, facet tuples off the boundary, and bit-strings
of the wrong width are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coloring import Cocycle, Coloring
from .complexes import ComplexError, StratifiedComplex
from .gf2 import GroupElement, bits_to_string

FORMAT_LINE = "format glueback-1"


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class ParsedInput:
    complex: StratifiedComplex
    coloring: Coloring | None
    cocycle: Cocycle | None
    n: int | None


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_int(tok: str, lineno: int, what: str) -> int:
    if not re.fullmatch(r"\d+", tok):
        raise ParseError(lineno, f"expected a non-negative integer {what}, got {tok!r}")
    return int(tok)


def parse_input(text: str) -> ParsedInput:
    """Parse the versioned orbit-space grammar into validated-enough objects.

    Structural problems (bad tokens, duplicates, off-boundary facets, wrong
    bit widths) raise ParseError with the line number; deeper validation is
    left to the complex/coloring validators.
    """
    lines = list(_tokens(text))
    if not lines or lines[0][1] != FORMAT_LINE:
        lineno = lines[0][0] if lines else 1
        raise ParseError(lineno, f'the first line must be "{FORMAT_LINE}"')
    dim: int | None = None
    declared_vertices: list[int] = []
    simplices: list[tuple[int, ...]] = []
    simplex_lines: dict[tuple[int, ...], int] = {}
    facets: dict[str, list[tuple[int, ...]]] = {}
    facet_lines: dict[str, int] = {}
    colors: dict[str, str] = {}
    cocycle_vals: dict[tuple[int, int], int] = {}
    n_rank: int | None = None

    for lineno, line in lines[1:]:
        parts = line.split()
        verb = parts[0]
        if verb == "dim":
            if dim is not None:
                raise ParseError(lineno, "duplicate dim line")
            if len(parts) != 2:
                raise ParseError(lineno, "dim takes one argument")
            dim = _parse_int(parts[1], lineno, "dimension")
        elif verb == "vertex":
            if len(parts) != 2:
                raise ParseError(lineno, "vertex takes one id")
            declared_vertices.append(_parse_int(parts[1], lineno, "vertex id"))
        elif verb == "simplex":
            vs = tuple(sorted(_parse_int(p, lineno, "vertex id") for p in parts[1:]))
            if len(set(vs)) != len(vs):
                raise ParseError(lineno, f"repeated vertex in simplex {vs}")
            if vs in simplex_lines:
                raise ParseError(
                    lineno,
                    f"duplicate simplex {vs} (first seen at line {simplex_lines[vs]})",
                )
            simplex_lines[vs] = lineno
            simplices.append(vs)
        elif verb == "facet":
            m = re.fullmatch(r"facet\s+(\S+)\s*\{(.*)\}", line)
            if not m:
                raise ParseError(lineno, "facet syntax: facet <name> { (v..) (v..) }")
            fid, body = m.group(1), m.group(2)
            if fid in facets:
                raise ParseError(
                    lineno, f"duplicate facet {fid} (first seen at line {facet_lines[fid]})"
                )
            tuples = re.findall(r"\(([^()]*)\)", body)
            if not tuples or re.sub(r"\(([^()]*)\)|\s", "", body):
                raise ParseError(lineno, "facet body must be a list of (v ...) tuples")
            fs = []
            for t in tuples:
                vs = tuple(
                    sorted(_parse_int(p, lineno, "vertex id") for p in t.split())
                )
                if len(set(vs)) != len(vs):
                    raise ParseError(lineno, f"repeated vertex in facet tuple {vs}")
                fs.append(vs)
            facets[fid] = fs
            facet_lines[fid] = lineno
        elif verb == "color":
            if len(parts) != 3:
                raise ParseError(lineno, "color syntax: color <facet> <bitstring>")
            fid, bits = parts[1], parts[2]
            if fid in colors:
                raise ParseError(lineno, f"duplicate color for facet {fid}")
            if not re.fullmatch(r"[01]+", bits):
                raise ParseError(lineno, f"malformed bit-string {bits!r}")
            if n_rank is None:
                n_rank = len(bits)
            elif len(bits) != n_rank:
                raise ParseError(
                    lineno,
                    f"bit-string {bits!r} has width {len(bits)}, expected {n_rank}",
                )
            colors[fid] = bits
        elif verb == "cocycle":
            m = re.fullmatch(r"cocycle\s+\(\s*(\d+)\s+(\d+)\s*\)\s+([01]+)", line)
            if not m:
                raise ParseError(lineno, "cocycle syntax: cocycle (<u> <v>) <bitstring>")
            u, v, bits = int(m.group(1)), int(m.group(2)), m.group(3)
            if u == v:
                raise ParseError(lineno, "cocycle edge endpoints must differ")
            if n_rank is None:
                n_rank = len(bits)
            elif len(bits) != n_rank:
                raise ParseError(
                    lineno,
                    f"bit-string {bits!r} has width {len(bits)}, expected {n_rank}",
                )
            e = (u, v) if u < v else (v, u)
            if e in cocycle_vals:
                raise ParseError(lineno, f"duplicate cocycle edge {e}")
            cocycle_vals[e] = GroupElement.from_string(bits).bits
        else:
            raise ParseError(lineno, f"unknown directive {verb!r}")

    if dim is None:
        raise ParseError(1, "missing dim line")
    if not simplices:
        raise ParseError(1, "no simplices given")
    try:
        q = StratifiedComplex(dim, simplices, facets)
    except ComplexError as exc:
        raise ParseError(1, str(exc)) from exc
    for v in declared_vertices:
        if (v,) not in q.simplex_index:
            raise ParseError(1, f"declared vertex {v} is not used by any simplex")
    # facet tuples must be boundary simplices of the carrier
    for fid, fs in facets.items():
        for s in fs:
            if q._coface_count.get(s, 0) != 1:
                raise ParseError(
                    facet_lines[fid],
                    f"facet {fid}: tuple {s} is not on the boundary",
                )
    for fid in colors:
        if fid not in facets:
            raise ParseError(1, f"color given for unknown facet {fid}")
    for (u, v) in cocycle_vals:
        if (u, v) not in q.simplex_index:
            raise ParseError(1, f"cocycle edge ({u} {v}) is not in the 1-skeleton")
    coloring = None
    if colors or facets:
        if n_rank is None:
            n_rank = dim
        missing = sorted(set(facets) - set(colors))
        if colors and missing:
            raise ParseError(1, f"facets without colors: {', '.join(missing)}")
        if colors:
            coloring = Coloring.from_dict(n_rank, colors)
    cocycle = Cocycle.from_dict(n_rank, cocycle_vals) if (cocycle_vals and n_rank) else None
    return ParsedInput(q, coloring, cocycle, n_rank)


def parse_file(path: str) -> ParsedInput:
    with open(path, encoding="utf-8") as fh:
        return parse_input(fh.read())


def emit(
    q: StratifiedComplex,
    coloring: Coloring | None = None,
    cocycle: Cocycle | None = None,
) -> str:
    """Canonical text form; parse(emit(x)) reproduces isomorphic data."""
    lines = [FORMAT_LINE, f"dim {q.dim}"]
    for v in q.vertices:
        lines.append(f"vertex {v}")
    for s in q.top_simplices:
        lines.append("simplex " + " ".join(map(str, s)))
    for fid in sorted(q.facets):
        tuples = " ".join(
            "(" + " ".join(map(str, s)) + ")" for s in sorted(q.facets[fid])
        )
        lines.append(f"facet {fid} {{ {tuples} }}")
    if coloring is not None:
        for fid, bits in coloring.assignment:
            lines.append(f"color {fid} {bits_to_string(bits, coloring.n)}")
    if cocycle is not None and not cocycle.is_zero():
        for (u, v), bits in cocycle.values:
            lines.append(f"cocycle ({u} {v}) {bits_to_string(bits, cocycle.n)}")
    return "\n".join(lines) + "\n"


__all__ = ["FORMAT_LINE", "ParseError", "ParsedInput", "parse_input", "parse_file", "emit"]
