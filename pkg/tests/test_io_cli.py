"""Document round trips, the fixture directory and the command-line interface."""

import json
import shutil
import subprocess
import sys

import pytest

from polytri import cli, fixtures, io
from polytri.complex import boundary, build_complex, is_subdivision
from polytri.errors import NotConvexDown
from polytri.lifting import PLLifting, VerticialLifting, induced_subdivision
from polytri.semistable import check_nearly_semistable


# -- documents ----------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(fixtures.builders()))
def test_fixture_round_trip(name):
    obj = fixtures.build(name)
    again = io.loads(io.dumps(obj))
    assert again == obj
    assert fixtures.load(name) == obj


def test_subdivision_and_report_round_trip():
    sq = fixtures.build("square")
    sub = induced_subdivision(sq, fixtures.build("square-fold-lifting"))
    assert io.loads(io.dumps(sub)) == sub
    f = fixtures.build("r4-to-r2")
    report = check_nearly_semistable(f, f.source)
    back = io.loads(io.dumps(report))
    assert back.verdict == report.verdict and back.nearly_semistable and not back.semistable


def test_rationals_are_strings():
    doc = json.loads(io.dumps(fixtures.build("sliced-square")))
    coords = [x for v in doc["payload"]["vertices"] for x in v["coords"]]
    assert all(isinstance(x, str) for x in coords)
    assert any("/" in x for x in coords)


@pytest.mark.parametrize("text", [
    '{"kind": "lifting", "version": 1, "payload": {"type": "verticial", "values": [["a", 0.5]]}}',
    '{"kind": "lifting", "version": 2, "payload": {"values": []}}',
    '{"kind": "banana", "version": 1, "payload": {}}',
    '{"kind": "complex", "version": 1, "payload": {"cells": []}}',
    '{"kind": "lifting", "version": 1, "payload": {"values": [["a", true]]}}',
    '[1, 2]',
    'not json',
])
def test_parse_errors(text):
    with pytest.raises(io.ParseError):
        io.loads(text)


def test_pl_not_convex_down():
    sq = fixtures.build("square")
    split = is_subdivision(build_complex(fixtures.SQUARE, [["a", "b", "c"], ["a", "c", "d"]]), sq)
    valley = PLLifting(split, VerticialLifting({"a": 0, "c": 0, "b": 1, "d": 1}))
    with pytest.raises(NotConvexDown):
        induced_subdivision(sq, valley)
    ridge = PLLifting(split, VerticialLifting({"a": 1, "c": 1, "b": 0, "d": 0}))
    assert induced_subdivision(sq, ridge) == split


# -- fixtures directory ---------------------------------------------------------------------

def test_fixture_names_match_builders():
    assert fixtures.names() == sorted(fixtures.builders())


def test_fixture_directory_override(tmp_path, monkeypatch):
    shutil.copy(fixtures.path("square"), tmp_path / "only.json")
    monkeypatch.setenv(fixtures.ENV, str(tmp_path))
    assert fixtures.names() == ["only"]
    assert fixtures.load("only") == fixtures.build("square")
    with pytest.raises(FileNotFoundError):
        fixtures.path("square")


def test_write_all(tmp_path):
    paths = fixtures.write_all(tmp_path)
    assert len(paths) == len(fixtures.builders())
    for p in paths:
        assert p.read_text() == fixtures.path(p.stem).read_text()


# -- command line -----------------------------------------------------------------------------

def run(*argv):
    return cli.main([str(a) for a in argv])


def test_subdivide(tmp_path, capsys):
    out = tmp_path / "sub.json"
    assert run("subdivide", "fixture:square", "fixture:square-fold-lifting", "--out", out) == 0
    captured = capsys.readouterr()
    assert captured.out.strip() == str(out)
    assert "2 maximal cells" in captured.err
    assert len(io.read(out).refined.maximal_cells()) == 2


def test_extend_and_certificate(tmp_path):
    out, cert = tmp_path / "ext.json", tmp_path / "cert.json"
    code = run("extend", "fixture:prism", "fixture:prism-staircase-boundary", "fixture:prism-staircase-lifting",
               "--out", out, "--emit-certificate", cert)
    assert code == 0
    sub = io.read(out)
    assert len(sub.refined.maximal_cells()) == 3
    prism = fixtures.build("prism")
    assert induced_subdivision(prism, PLLifting(is_subdivision(sub.refined, prism), io.read(cert))).maximal_key() \
        == sub.maximal_key()


def test_extend_twisted_writes_witness(tmp_path):
    out = tmp_path / "ext.json"
    code = run("extend", "fixture:prism", "fixture:prism-twisted-boundary", "fixture:prism-staircase-lifting",
               "--out", out)
    assert code == cli.EXIT_NOT_INDUCED
    witness = io.read(tmp_path / "ext.witness.json")
    assert witness["regular"] is False and witness["verified"] is True


def test_extend_on_a_listed_subcomplex(tmp_path):
    cells = tmp_path / "cells.json"
    cells.write_text(json.dumps([["a", "b"], ["c", "d"]]))
    sub = tmp_path / "edges.json"
    run("subdivide", "fixture:square-edges", "fixture:square-zero-lifting", "--out", sub)
    code = run("extend", "fixture:square", sub, "fixture:square-zero-lifting", "--subcomplex", cells,
               "--out", tmp_path / "x.json", "--strategy", "random", "--seed", 4)
    assert code == 0


def test_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "lifting", "version": 1, "payload": {"values": [["a", 0.5]]}}')
    assert run("subdivide", "fixture:square", bad, "--out", tmp_path / "o.json") == cli.EXIT_PARSE
    assert run("subdivide", "fixture:square", tmp_path / "missing.json", "--out", tmp_path / "o.json") \
        == cli.EXIT_PARSE
    assert run("extend", "fixture:prism", "fixture:prism-twisted-boundary", "fixture:square-zero-lifting",
               "--out", tmp_path / "o.json") == cli.EXIT_DOMAIN
    # a lifting that is not convex-down on its linearity domains
    sq = fixtures.build("square")
    split = is_subdivision(build_complex(fixtures.SQUARE, [["a", "b", "c"], ["a", "c", "d"]]), sq)
    valley = io.write(PLLifting(split, VerticialLifting({"a": 0, "c": 0, "b": 1, "d": 1})), tmp_path / "v.json")
    assert run("subdivide", "fixture:square", valley, "--out", tmp_path / "o.json") == cli.EXIT_CONVEX
    # boundary of the cube with its trivial subdivision is not a triangulation
    cube = fixtures.build("cube")
    flat = VerticialLifting(dict.fromkeys(cube.vertices, 0))
    trivial = io.write(induced_subdivision(cube, flat).restrict(boundary(cube)), tmp_path / "t.json")
    zero = io.write(flat, tmp_path / "z.json")
    assert run("extend", "fixture:cube", trivial, zero, "--out", tmp_path / "o.json") == cli.EXIT_NOT_SIMPLICIAL
    assert run("export", "fixture:cube", "--format", "svg", "--out", tmp_path / "c.svg") == cli.EXIT_DIMENSION


def test_check_regular(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run("check-regular", "fixture:prism-boundary", "fixture:prism-twisted-boundary", "--out", out) == 0
    assert "NOT REGULAR" in capsys.readouterr().err
    assert io.read(out)["verified"] is True
    assert run("check-regular", "fixture:prism-boundary", "fixture:prism-staircase-boundary") == 0
    assert "REGULAR" in capsys.readouterr().err


def test_enumerate(tmp_path):
    out = tmp_path / "e.json"
    assert run("enumerate", "fixture:prism", "--out", out, "--jobs", 2) == 0
    assert io.read(out)["count"] == 6


def test_cone_and_slice(tmp_path):
    cone, back = tmp_path / "cone.json", tmp_path / "slice.json"
    assert run("cone", "fixture:pentagon", "--out", cone) == 0
    assert json.loads(cone.read_text())["payload"]["slicing"]
    assert run("slice", cone, "--out", back) == 0
    assert len(io.read(back).vertices) == 5
    assert run("slice", "fixture:cone-over-square", "--out", back) == 0


def test_check_semistable(tmp_path, capsys):
    out = tmp_path / "s.json"
    assert run("check-semistable", "fixture:r4-to-r2", "--out", out) == 0
    assert "nearly semistable: yes; semistable: no" in capsys.readouterr().err
    assert io.read(out).verdict == "nearly_semistable"
    assert run("check-semistable", "fixture:doubling", "--reduce", "2") == 0
    assert "semistable: yes" in capsys.readouterr().err


def test_export(tmp_path):
    off, svg = tmp_path / "s.off", tmp_path / "s.svg"
    assert run("extend", "fixture:prism", "fixture:prism-staircase-boundary", "fixture:prism-staircase-lifting",
               "--out", tmp_path / "ext.json") == 0
    assert run("export", tmp_path / "ext.json", "--out", off) == 0
    lines = off.read_text().splitlines()
    assert lines[0] == "OFF" and lines[1].split()[:2] == ["6", "12"]
    assert run("export", "fixture:square", "--format", "svg", "--out", svg) == 0
    assert svg.read_text().count("<polygon") == 1


def test_fixtures_command(capsys):
    assert run("fixtures") == 0
    assert "prism" in capsys.readouterr().out.split()
    assert run("fixtures", "nope") == cli.EXIT_PARSE


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polytri.cli", "fixtures", "square"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("square.json")
