"""Command-line surface: parse orbit-space files, dispatch, report.

Exit codes: 0 success, 1 an applicable check failed, 2 input error.
All default output is deterministic plain text; --json switches every
verb to a stable structured form.
"""

from __future__ import annotations

import argparse
import json
import sys

from .buildm import build, euler_characteristic_predicted
from .catalog import CatalogError, make, names
from .coloring import (
    Cocycle,
    Coloring,
    ColoringError,
    enumerate_bundle_classes,
    enumerate_colorings,
    validate_coloring,
    validate_cocycle,
)
from .complexes import ComplexError
from .fileformat import ParseError, emit, parse_file, parse_input
from .gf2 import Gf2Error, Gf2Matrix, GroupElement, Subgroup, bits_to_string
from .homology import full_profile, homology
from .surgery import Excision, Matching, SurgeryError, cut_and_paste, fill_hole
from .theorems import (
    TheoremReport,
    classify_boundary,
    enumerate_sphere_patterns,
    run_suite,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class _Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.lines: list[str] = []
        self.data: dict = {}

    def text(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> str:
        if self.as_json:
            return json.dumps(self.data, indent=2, sort_keys=True) + "\n"
        return "\n".join(self.lines) + ("\n" if self.lines else "")


def _load(path: str, bundle: str | None = None):
    parsed = parse_file(path)
    q = parsed.complex
    lam = parsed.coloring
    xi = parsed.cocycle
    if lam is None:
        n = parsed.n or q.dim
        lam = Coloring.from_dict(n, {})
    if bundle:
        xi = _read_bundle(bundle, q, lam.n)
    if xi is None:
        xi = Cocycle.zero(lam.n)
    return q, lam, xi


def _read_bundle(path: str, q, n: int) -> Cocycle:
    """A cocycle override: either a full orbit-space file or a fragment of
    `cocycle (<u> <v>) <bits>` lines (comments allowed)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stripped = [
        ln.split("#", 1)[0].strip() for ln in text.splitlines()
    ]
    body = [ln for ln in stripped if ln]
    if body and body[0].startswith("format "):
        parsed = parse_input(text)
        return parsed.cocycle or Cocycle.zero(n)
    import re as _re

    vals = {}
    for i, ln in enumerate(body, start=1):
        m = _re.fullmatch(r"cocycle\s+\(\s*(\d+)\s+(\d+)\s*\)\s+([01]+)", ln)
        if not m:
            raise ParseError(i, f"bundle fragment line not understood: {ln!r}")
        u, v, bits = int(m.group(1)), int(m.group(2)), m.group(3)
        if len(bits) != n:
            raise ParseError(i, f"bit-string width {len(bits)}, expected {n}")
        vals[(u, v)] = GroupElement.from_string(bits).bits
    return Cocycle.from_dict(n, vals)


def _profile_dict(prof) -> dict:
    return {
        "gf2_betti": list(prof.gf2_betti),
        "rational_betti": list(prof.rational_betti),
        "torsion": [list(t) for t in prof.torsion],
        "euler": prof.euler,
        "orientable": prof.orientable,
        "components": prof.components,
    }


def _report_rows(out: _Output, reports: list[TheoremReport]) -> bool:
    ok = True
    rows = []
    for r in reports:
        if r.applicable and not r.passed:
            ok = False
        rows.append(
            {
                "theorem": r.theorem,
                "inputs": r.inputs,
                "left": str(r.left),
                "right": str(r.right),
                "passed": r.passed,
                "applicable": r.applicable,
                "note": r.note,
            }
        )
        out.text(r.line())
    out.data["reports"] = rows
    out.data["ok"] = ok
    return ok


def _parse_excision(spec: str) -> Excision:
    kind, _, arg = spec.partition("@")
    if kind == "ball":
        return Excision.ball(int(arg))
    if kind == "collar":
        return Excision.collar(int(arg))
    if kind == "star":
        return Excision.star(int(v) for v in arg.split(","))
    raise ValueError(f"unknown excision {spec!r} (use ball@V, collar@C, star@V1,V2)")


def _parse_match_file(path: str, n: int) -> Matching:
    pairs: dict[int, int] = {}
    sigma_rows: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0] == "pair" and len(parts) == 3:
                pairs[int(parts[1])] = int(parts[2])
            elif parts[0] == "sigma" and len(parts) == 2:
                sigma_rows.append(GroupElement.from_string(parts[1], n).bits)
            else:
                raise ValueError(f"bad match line: {line!r}")
    sigma = Gf2Matrix(n, n, tuple(sigma_rows)) if sigma_rows else None
    return Matching(vertex_map=pairs, sigma=sigma)


# ---------------------------------------------------------------------------
# verb handlers


def _cmd_validate(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    rep = q.validate()
    out.data["complex"] = {"ok": rep.ok, "violations": [str(v) for v in rep.violations]}
    out.text(f"complex: {rep}")
    code = EXIT_OK if rep.ok else EXIT_CHECK_FAILED
    if rep.ok and lam.assignment:
        crep = validate_coloring(q, lam)
        out.data["coloring"] = {
            "ok": crep.ok,
            "violations": [str(v) for v in crep.violations],
        }
        out.text(f"coloring: {crep}")
        if not crep.ok:
            code = EXIT_CHECK_FAILED
    if rep.ok and not xi.is_zero():
        brep = validate_cocycle(q, xi)
        out.data["cocycle"] = {
            "ok": brep.ok,
            "violations": [str(v) for v in brep.violations],
        }
        out.text(f"cocycle: {brep}")
        if not brep.ok:
            code = EXIT_CHECK_FAILED
    return code


def _cmd_build(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    m = build(q, lam, xi)
    counts = m.cell_counts()
    out.data["cells"] = counts
    out.data["euler"] = m.euler_characteristic()
    out.data["components"] = m.components()
    out.data["predicted_euler"] = euler_characteristic_predicted(q, lam)
    out.text(f"cells per dimension: {' '.join(map(str, counts))}")
    out.text(f"euler characteristic: {m.euler_characteristic()}")
    out.text(f"components: {m.components()}")
    if args.emit_cells:
        with open(args.emit_cells, "w", encoding="utf-8") as fh:
            fh.write(m.cell_dump())
        out.text(f"cell dump written to {args.emit_cells}")
    return EXIT_OK


def _cmd_homology(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    m = build(q, lam, xi)
    coeff = {"gf2": "gf2", "q": "rational", "z": "integral"}[args.coeff]
    result = homology(m.delta, coeff)
    rows = []
    if coeff == "integral":
        for deg, (betti, torsion) in enumerate(result):
            tstr = "[" + ", ".join(map(str, torsion)) + "]"
            out.text(f"{deg}: betti {betti} torsion {tstr}")
            rows.append({"degree": deg, "betti": betti, "torsion": list(torsion)})
    else:
        for deg, betti in enumerate(result):
            out.text(f"{deg}: betti {betti}")
            rows.append({"degree": deg, "betti": betti})
    out.data["coefficients"] = args.coeff
    out.data["homology"] = rows
    return EXIT_OK


def _cmd_profile(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    m = build(q, lam, xi)
    prof = full_profile(m.delta)
    out.data.update(_profile_dict(prof))
    for k, v in sorted(_profile_dict(prof).items()):
        out.text(f"{k}: {v}")
    return EXIT_OK


def _cmd_fixset(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    m = build(q, lam, xi)
    gens = [GroupElement.from_string(e, lam.n) for e in args.element]
    h = Subgroup.span([g.bits for g in gens], lam.n)
    sub = m.fixed_subcomplex(h)
    out.data["subgroup"] = [bits_to_string(b, lam.n) for b in h.basis]
    out.data["cells"] = [len(c) for c in sub.cells]
    out.data["euler"] = sub.euler_characteristic()
    out.data["dimension"] = sub.dimension
    out.text(f"subgroup basis: {out.data['subgroup']}")
    out.text(f"fixed cells per dimension: {out.data['cells']}")
    out.text(f"euler characteristic: {sub.euler_characteristic()}")
    if not sub.is_empty():
        betti = homology(sub.delta, "gf2")
        out.data["gf2_betti"] = list(betti)
        out.text(f"gf2 betti: {list(betti)}")
    return EXIT_OK


def _cmd_verify(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    which = []
    for name in ("euler", "borel", "lefschetz", "kobayashi", "boundary", "components"):
        if getattr(args, name if name != "components" else "component_counts") or args.all:
            which.append(name)
    if not which:
        which = ["euler", "borel", "lefschetz", "kobayashi", "boundary", "components"]
    reports = run_suite(q, lam, xi, which=which)
    ok = _report_rows(out, reports)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _cmd_classify_boundary(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    rows = []
    for idx, verdict, sizes in classify_boundary(q):
        out.text(f"component {idx}: {verdict} faces={sorted(sizes.values())}")
        rows.append({"component": idx, "verdict": verdict, "faces": sorted(sizes.values())})
    out.data["components"] = rows
    out.data["patterns"] = [list(p) for p in enumerate_sphere_patterns({2, 3})]
    return EXIT_OK


def _cmd_enumerate_colorings(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    n = args.n or (lam.n if lam.assignment else q.dim)
    all_colorings = enumerate_colorings(q, n)
    out.data["count"] = len(all_colorings)
    out.text(f"valid colorings: {len(all_colorings)}")
    if args.up_to_weak:
        reps = enumerate_colorings(q, n, up_to="weak")
        out.data["weak_classes"] = len(reps)
        out.text(f"weak classes: {len(reps)}")
        for lam2 in reps:
            out.text(f"  {lam2}")
        out.data["representatives"] = [str(l) for l in reps]
    return EXIT_OK


def _cmd_bundles(args, out: _Output) -> int:
    q, lam, xi = _load(args.file, args.bundle)
    n = args.n or (lam.n if lam.assignment else q.dim)
    classes = enumerate_bundle_classes(q, n)
    out.data["count"] = len(classes)
    out.text(f"bundle classes: {len(classes)}")
    reps = []
    for c in classes:
        desc = (
            "trivial"
            if c.is_zero()
            else " ".join(f"({u} {v})={bits_to_string(b, n)}" for (u, v), b in c.values)
        )
        reps.append(desc)
        out.text(f"  {desc}")
    out.data["representatives"] = reps
    return EXIT_OK


def _cmd_cutpaste(args, out: _Output) -> int:
    q1, lam1, xi1 = _load(args.file1)
    q2, lam2, xi2 = _load(args.file2)
    exc1 = _parse_excision(args.k1)
    exc2 = _parse_excision(args.k2)
    match = _parse_match_file(args.match, lam1.n) if args.match else None
    q, lam = cut_and_paste(q1, lam1, exc1, q2, lam2, exc2, match, xi1, xi2)
    text = emit(q, lam)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.text(f"written to {args.out}")
    else:
        out.text(text.rstrip("\n"))
    out.data["facets"] = sorted(q.facets)
    out.data["cells"] = [len(l) for l in q.simplices_by_dim]
    return EXIT_OK


def _cmd_fill(args, out: _Output) -> int:
    q, lam, xi = _load(args.file)
    if not xi.is_zero():
        raise SurgeryError("fill-a-hole supports only trivial bundle data")
    q2, lam2, record = fill_hole(q, lam, args.component)
    out.data["pattern"] = record.pattern
    out.data["plug_vertex"] = record.plug_vertex
    text = emit(q2, lam2 if lam2.assignment else None)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.text(f"pattern {record.pattern}; written to {args.out}")
    else:
        out.text(f"# pattern {record.pattern}, plug vertex {record.plug_vertex}")
        out.text(text.rstrip("\n"))
    return EXIT_OK


def _cmd_catalog(args, out: _Output) -> int:
    if args.action == "list":
        for name in names():
            out.text(name)
        out.data["names"] = names()
        return EXIT_OK
    q, lam = make(args.name)
    out.text(emit(q, lam).rstrip("\n"))
    out.data["name"] = args.name
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="glueback",
        description="orbit-space constructions and exact homology checks "
        "for locally standard (Z2)^n-actions",
    )
    p.add_argument("--json", action="store_true", help="structured output")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, bundle=True):
        sp.add_argument("file", help="orbit-space file")
        if bundle:
            sp.add_argument("--bundle", help="cocycle file overriding embedded data")

    sp = sub.add_parser("validate", help="validate a complex, coloring, cocycle")
    common(sp)
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("build", help="run the glue-back construction")
    common(sp)
    sp.add_argument("--emit-cells", help="write the stable cell dump here")
    sp.set_defaults(func=_cmd_build)

    sp = sub.add_parser("homology", help="homology of the built space")
    common(sp)
    sp.add_argument("--coeff", choices=["gf2", "q", "z"], default="gf2")
    sp.set_defaults(func=_cmd_homology)

    sp = sub.add_parser("profile", help="full homology profile of the built space")
    common(sp)
    sp.set_defaults(func=_cmd_profile)

    sp = sub.add_parser("fixset", help="fixed subcomplex of a subgroup")
    common(sp)
    sp.add_argument(
        "--element", action="append", required=True, help="generator bit-string"
    )
    sp.set_defaults(func=_cmd_fixset)

    sp = sub.add_parser("verify", help="run the theorem suite")
    common(sp)
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--euler", action="store_true")
    sp.add_argument("--borel", action="store_true")
    sp.add_argument("--lefschetz", action="store_true")
    sp.add_argument("--kobayashi", action="store_true")
    sp.add_argument("--boundary", action="store_true")
    sp.add_argument("--component-counts", action="store_true")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("classify-boundary", help="boundary tessellation patterns")
    common(sp)
    sp.set_defaults(func=_cmd_classify_boundary)

    sp = sub.add_parser("enumerate-colorings", help="count/list valid colorings")
    common(sp)
    sp.add_argument("-n", type=int, default=None, help="ambient rank")
    sp.add_argument("--up-to-weak", action="store_true")
    sp.set_defaults(func=_cmd_enumerate_colorings)

    sp = sub.add_parser("bundles", help="enumerate bundle classes")
    common(sp)
    sp.add_argument("-n", type=int, default=None, help="ambient rank")
    sp.set_defaults(func=_cmd_bundles)

    sp = sub.add_parser("cutpaste", help="equivariant cut-and-paste of two inputs")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("--k1", required=True, help="ball@V | collar@C | star@V1,V2")
    sp.add_argument("--k2", required=True)
    sp.add_argument("--match", help="match file: pair/sigma lines")
    sp.add_argument("--out", help="write the glued complex here")
    sp.set_defaults(func=_cmd_cutpaste)

    sp = sub.add_parser("fill", help="fill a football/tetrahedron boundary hole")
    sp.add_argument("file")
    sp.add_argument("--component", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_fill)

    sp = sub.add_parser("catalog", help="catalog shapes")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=_cmd_catalog)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(getattr(args, "json", False))
    try:
        code = args.func(args, out)
    except (
        ParseError,
        ComplexError,
        ColoringError,
        CatalogError,
        SurgeryError,
        Gf2Error,
        FileNotFoundError,
        ValueError,
    ) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR
    sys.stdout.write(out.flush())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
