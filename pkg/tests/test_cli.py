import json

import pytest

from glueback.catalog import make
from glueback.cli import run
from glueback.fileformat import emit


@pytest.fixture()
def football_file(tmp_path):
    q, lam = make("football")
    p = tmp_path / "football.gb"
    p.write_text(emit(q, lam), encoding="utf-8")
    return str(p)


def test_validate_ok(football_file, capsys):
    assert run(["validate", football_file]) == 0
    assert "valid" in capsys.readouterr().out


def test_build_and_cell_dump(football_file, tmp_path, capsys):
    dump = tmp_path / "cells.txt"
    assert run(["build", football_file, "--emit-cells", str(dump)]) == 0
    out = capsys.readouterr().out
    assert "cells per dimension: 16 64 96 48" in out
    text = dump.read_text()
    assert text.splitlines()[0].startswith("cell 0 ")
    # stable across runs
    dump2 = tmp_path / "cells2.txt"
    run(["build", football_file, "--emit-cells", str(dump2)])
    assert dump2.read_text() == text


def test_homology_table_integral(tmp_path, capsys):
    q, lam = make("simplex(3)")
    p = tmp_path / "tet.gb"
    p.write_text(emit(q, lam), encoding="utf-8")
    assert run(["homology", str(p), "--coeff", "z"]) == 0
    out = capsys.readouterr().out
    assert "1: betti 0 torsion [2]" in out


def test_verify_all_exit_zero(football_file, capsys):
    assert run(["verify", football_file, "--all"]) == 0
    out = capsys.readouterr().out
    assert "PASS borel" in out
    assert "FAIL" not in out


def test_invalid_coloring_exit_two(tmp_path, capsys):
    q, lam = make("simplex(3)")
    text = emit(q, lam).replace("color f4 111", "color f4 110")
    p = tmp_path / "bad.gb"
    p.write_text(text, encoding="utf-8")
    assert run(["build", str(p)]) == 2
    err = capsys.readouterr().err
    assert "dependent" in err.lower()


def test_parse_error_exit_two(tmp_path, capsys):
    p = tmp_path / "bad.gb"
    p.write_text("format glueback-1\ndim 2\nsimplex 0 1 2\nsimplex 0 1 2\n")
    assert run(["validate", str(p)]) == 2
    assert "line 4" in capsys.readouterr().err


def test_fixset(football_file, capsys):
    assert run(["fixset", football_file, "--element", "100"]) == 0
    out = capsys.readouterr().out
    assert "euler characteristic: 2" in out


def test_classify_boundary(football_file, capsys):
    assert run(["classify-boundary", football_file]) == 0
    assert "football-pattern" in capsys.readouterr().out


def test_bundles_and_colorings(tmp_path, capsys):
    q, lam = make("2-gon")
    p = tmp_path / "gon.gb"
    p.write_text(emit(q, lam), encoding="utf-8")
    assert run(["bundles", str(p)]) == 0
    assert "bundle classes: 1" in capsys.readouterr().out
    assert run(["enumerate-colorings", str(p), "--up-to-weak"]) == 0
    out = capsys.readouterr().out
    assert "valid colorings: 6" in out and "weak classes: 1" in out


def test_json_output_deterministic(football_file, capsys):
    assert run(["--json", "profile", football_file]) == 0
    first = capsys.readouterr().out
    data = json.loads(first)
    assert data["gf2_betti"] == [1, 0, 0, 1]
    run(["--json", "profile", football_file])
    assert capsys.readouterr().out == first


def test_catalog_emit_round_trip(tmp_path, capsys):
    assert run(["catalog", "emit", "cube"]) == 0
    text = capsys.readouterr().out
    p = tmp_path / "cube.gb"
    p.write_text(text, encoding="utf-8")
    assert run(["validate", str(p)]) == 0


def test_cutpaste_cli(tmp_path, capsys):
    q, lam = make("football")
    f1 = tmp_path / "a.gb"
    f2 = tmp_path / "b.gb"
    f1.write_text(emit(q, lam), encoding="utf-8")
    f2.write_text(emit(q, lam), encoding="utf-8")
    out = tmp_path / "glued.gb"
    code = run([
        "cutpaste", str(f1), str(f2),
        "--k1", "collar@0", "--k2", "collar@0", "--out", str(out),
    ])
    assert code == 0
    assert run(["profile", str(out)]) == 0
    prof = capsys.readouterr().out
    assert "components: 8" in prof


def test_fill_cli(tmp_path, capsys):
    q, lam = make("football")
    f1 = tmp_path / "a.gb"
    f1.write_text(emit(q, lam), encoding="utf-8")
    out = tmp_path / "filled.gb"
    assert run(["fill", str(f1), "--out", str(out)]) == 0
    assert run(["profile", str(out)]) == 0
    assert "components: 8" in capsys.readouterr().out


def test_nontrivial_bundle_rejected_in_cutpaste(tmp_path, capsys):
    q, lam = make("football")
    text = emit(q, lam) + "cocycle (0 1) 100\n"
    f1 = tmp_path / "a.gb"
    f2 = tmp_path / "b.gb"
    f1.write_text(text, encoding="utf-8")
    f2.write_text(emit(q, lam), encoding="utf-8")
    code = run([
        "cutpaste", str(f1), str(f2), "--k1", "collar@0", "--k2", "collar@0",
    ])
    assert code == 2
    assert "trivial bundle" in capsys.readouterr().err
