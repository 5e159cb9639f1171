"""Polyhedral complexes, subdivisions and lifting functions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cases import SMALL, compact
from polytri import fixtures
from polytri.complex import (IntegralStructure, boundary, build_complex, is_subdivision, skeleton,
                             trivial_subdivision)
from polytri.errors import (CellNotContained, DimensionMismatch, DomainMismatch, NotComplete,
                            NotIntersectionClosed, UnattainableValue)
from polytri.lifting import (PLLifting, VerticialLifting, as_pl, explicit_epsilon, induced_subdivision,
                            minimal_extension, refine_by, restrict)

SQUARE = fixtures.SQUARE


def test_square_faces():
    sq = compact("square")
    assert sq.dim == 2
    assert [len(sq.cells_of_dim(k)) for k in range(3)] == [4, 4, 1]
    assert {frozenset(c.vertices) for c in sq.cells_of_dim(1)} == {
        frozenset("ab"), frozenset("bc"), frozenset("cd"), frozenset("ad")}
    assert not sq.is_simplicial()


def test_cube_face_counts():
    cube = compact("cube")
    assert [len(cube.cells_of_dim(k)) for k in range(4)] == [8, 12, 6, 1]
    assert [len(boundary(cube).cells_of_dim(k)) for k in range(3)] == [8, 12, 6]
    assert skeleton(cube, 1).dim == 1


def test_glued_prisms_share_a_square():
    g = compact("glued-prisms")
    tops = g.maximal_cells()
    assert len(tops) == 2
    common = tops[0].vertices & tops[1].vertices
    assert g.cell(common).dim == 2
    assert len(boundary(g).cells_of_dim(2)) == 8


def test_bad_complexes():
    with pytest.raises(DimensionMismatch):
        build_complex({0: (0, 0), 1: (1,)}, [[0, 1]])
    # two triangles overlapping in their interiors
    with pytest.raises(NotIntersectionClosed):
        build_complex({0: (0, 0), 1: (2, 0), 2: (0, 2), 3: (2, 2)}, [[0, 1, 2], [1, 2, 3], [0, 1, 3]])
    # a triangle and a segment crossing it
    with pytest.raises(NotIntersectionClosed):
        build_complex({0: (0, 0), 1: (2, 0), 2: (0, 2), 3: (-1, 1), 4: (3, 1)}, [[0, 1, 2], [3, 4]])


def test_lattice_structure():
    lat = IntegralStructure(((Fraction(1, 2), 0), (0, 1)))
    assert lat.coordinates((1, 1)) == (2, 1)
    with pytest.raises(DimensionMismatch):
        build_complex({0: (0, 0)}, [[0]], IntegralStructure.standard(3))


def test_is_subdivision():
    sq = compact("square")
    tri = build_complex(SQUARE, [["a", "b", "c"], ["a", "c", "d"]])
    sub = is_subdivision(tri, sq)
    assert sub.refined.is_simplicial()
    assert sub.carrier[tri.cell(["a", "c"])] == sq.cell(list("abcd"))
    half = build_complex(SQUARE, [["a", "b", "c"]])
    with pytest.raises(NotComplete):
        is_subdivision(half, sq)
    outside = build_complex({"a": (0, 0), "b": (1, 0), "z": (0, 5)}, [["a", "b", "z"]])
    with pytest.raises(CellNotContained):
        is_subdivision(outside, sq)


def test_trivial_and_restrict():
    sq = compact("square")
    assert trivial_subdivision(sq).is_trivial()
    edges = fixtures.build("square-edges")
    assert edges.is_subcomplex_of(sq)
    r = trivial_subdivision(sq).restrict(edges)
    assert r.parent == edges and r.is_trivial()


# -- liftings --------------------------------------------------------------------------

def test_fold_lifting_on_square():
    sq = compact("square")
    sub = induced_subdivision(sq, fixtures.build("square-fold-lifting"))
    # the lifting is large on b and d, so the crease runs along b-d
    assert sub.maximal_key() == {frozenset("abd"), frozenset("bcd")}


def test_minimal_extension_with_interior_point():
    sq = compact("square")
    values = dict.fromkeys(SQUARE, 0)
    f = minimal_extension(sq, {**values, "o": 1}, {"o": (Fraction(1, 2), Fraction(1, 2))})
    assert len(f.linearity.refined.maximal_cells()) == 4
    assert f((Fraction(1, 2), Fraction(1, 2))) == 1
    assert f((Fraction(1, 4), Fraction(1, 2))) == Fraction(1, 2)
    with pytest.raises(UnattainableValue):
        minimal_extension(sq, {**values, "o": -1}, {"o": (Fraction(1, 2), Fraction(1, 2))})
    with pytest.raises(DomainMismatch):
        minimal_extension(sq, {"a": 0})


def test_pl_lifting_round_trip():
    sq = compact("square")
    c = fixtures.build("square-fold-lifting")
    pl = as_pl(sq, c)
    assert induced_subdivision(sq, pl) == induced_subdivision(sq, c)
    assert isinstance(restrict(pl, fixtures.build("square-edges")), PLLifting)


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        induced_subdivision(compact("square"), VerticialLifting({"a": 0}))


def _lifting(draw, complex_):
    return VerticialLifting({v: draw(st.integers(-6, 6)) for v in complex_.vertices})


names = st.sampled_from(SMALL)


@settings(max_examples=60, deadline=None)
@given(names, st.data())
def test_affine_invariance(name, data):
    c_ = compact(name)
    f = _lifting(data.draw, c_)
    coeffs = [data.draw(st.integers(-3, 3)) for _ in range(c_.ambient_dim)]
    const = data.draw(st.integers(-3, 3))
    scale = data.draw(st.integers(1, 4))
    g = VerticialLifting({v: scale * f[v] + sum(a * x for a, x in zip(coeffs, c_.point(v))) + const
                          for v in c_.vertices})
    assert induced_subdivision(c_, g) == induced_subdivision(c_, f)


@settings(max_examples=60, deadline=None)
@given(names, st.data())
def test_restriction_identity(name, data):
    c_ = compact(name)
    if c_.dim == 0:
        return
    f = _lifting(data.draw, c_)
    sub_complex = boundary(c_) if c_.is_pure() and boundary(c_).cells else skeleton(c_, c_.dim - 1)
    whole = induced_subdivision(c_, f)
    assert induced_subdivision(sub_complex, restrict(f, sub_complex)) == whole.restrict(sub_complex)


@settings(max_examples=40, deadline=None)
@given(names, st.data())
def test_transitivity_property(name, data):
    c_ = compact(name)
    rng_vals = {v: data.draw(st.integers(0, 2)) for v in c_.vertices}
    f = VerticialLifting(rng_vals)
    base = induced_subdivision(c_, f)
    f_prime = VerticialLifting({v: data.draw(st.integers(-5, 5)) for v in base.refined.vertices})
    eps = explicit_epsilon(c_, f, f_prime)
    assert eps > 0
    combined = VerticialLifting({v: f[v] + eps * f_prime[v] for v in c_.vertices})
    assert induced_subdivision(c_, combined) == refine_by(base, f_prime)


def test_refine_by_refines():
    sq = compact("square")
    base = trivial_subdivision(sq)
    fine = refine_by(base, fixtures.build("square-fold-lifting"))
    assert fine.parent == sq
    assert all(fine.carrier[c] == sq.cell(list("abcd")) for c in fine.refined.cells_of_dim(2))

