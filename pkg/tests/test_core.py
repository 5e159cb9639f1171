"""Exact linear algebra, the feasibility LP and convex hulls."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polytri._linalg import (affine_coordinates, det, image_lattice, integer_kernel, inverse,
                             lattice_preimage, matmul, nullspace, rank, solve, to_fraction, transpose)
from polytri.errors import DegenerateInput
from polytri.hull import convex_hull, hull_vertices, upper_hull
from polytri.lp import check_farkas, solve_feasibility

small = st.integers(-4, 4)


def matrices(n, m=None):
    return st.lists(st.lists(small, min_size=m or n, max_size=m or n), min_size=n, max_size=n)


# -- linear algebra -----------------------------------------------------------------

def test_to_fraction_rejects_floats():
    assert to_fraction("3/4") == Fraction(3, 4)
    assert to_fraction(2) == 2
    with pytest.raises(TypeError):
        to_fraction(0.5)


@given(matrices(3), matrices(3))
def test_det_multiplicative(a, b):
    assert det(matmul(a, b)) == det(a) * det(b)
    assert det(transpose(a)) == det(a)


@given(matrices(3))
def test_inverse_and_solve(a):
    if det(a) == 0:
        assert rank(a) < 3
        return
    inv = inverse(a)
    assert matmul(a, inv) == [[int(i == j) for j in range(3)] for i in range(3)]
    x = solve(a, [1, 2, 3])
    assert [sum(r * v for r, v in zip(row, x)) for row in a] == [1, 2, 3]


@given(matrices(2, 4))
def test_nullspace(a):
    ns = nullspace(a, 4)
    assert len(ns) == 4 - rank(a)
    for v in ns:
        assert all(sum(r * x for r, x in zip(row, v)) == 0 for row in a)


def test_affine_coordinates():
    lam = affine_coordinates([(0, 0), (1, 0), (0, 1)], (Fraction(1, 4), Fraction(1, 2)))
    assert lam == (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))


@settings(max_examples=40, deadline=None)
@given(matrices(2, 3))
def test_integer_kernel_is_a_basis(m):
    ker = integer_kernel(m, 3)
    assert len(ker) == 3 - rank(m)
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)
    # every small kernel vector is an integral combination of the basis
    for z in itertools.product(range(-3, 4), repeat=3):
        if any(sum(a * x for a, x in zip(row, z)) for row in m):
            continue
        if not ker:
            assert not any(z)
            continue
        coeffs = solve(transpose(ker), list(z))
        assert coeffs is not None and all(c.denominator == 1 for c in coeffs)


def test_image_lattice_and_preimage():
    half = Fraction(1, 2)
    basis = image_lattice([(half,) * 4] + [tuple(int(i == j) for j in range(4)) for i in range(4)])
    assert len(basis) == 4
    assert abs(det(basis)) == half
    pre = lattice_preimage([[half, half]], 2)
    # {z : (z1 + z2) / 2 integral} has index 2
    assert abs(det(pre)) == 2


# -- LP -----------------------------------------------------------------------------

def _fourier_motzkin_feasible(rows, rhs):
    """Feasibility of ``rows x >= rhs`` by eliminating variables one at a time."""
    system = [(list(map(Fraction, r)), Fraction(b)) for r, b in zip(rows, rhs)]
    n = len(rows[0]) if rows else 0
    for j in range(n):
        pos = [(r, b) for r, b in system if r[j] > 0]
        neg = [(r, b) for r, b in system if r[j] < 0]
        rest = [(r, b) for r, b in system if r[j] == 0]
        for (rp, bp), (rn, bn) in itertools.product(pos, neg):
            a, c = -rn[j], rp[j]
            rest.append(([a * x + c * y for x, y in zip(rp, rn)], a * bp + c * bn))
        system = rest
    return all(b <= 0 for _, b in system)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.tuples(st.lists(small, min_size=2, max_size=2), small), min_size=1, max_size=6))
def test_lp_matches_fourier_motzkin(rows):
    g = [r for r, _ in rows]
    b = [x for _, x in rows]
    res = solve_feasibility(2, ge_rows=g, ge_rhs=b)
    assert res.feasible == _fourier_motzkin_feasible(g, b)
    if res.feasible:
        assert all(sum(a * x for a, x in zip(r, res.solution)) >= rhs for r, rhs in zip(g, b))
    else:
        assert check_farkas([], [], g, b, [], res.ge_multipliers)


@settings(max_examples=80, deadline=None)
@given(matrices(1, 3), small, st.lists(st.tuples(st.lists(small, min_size=3, max_size=3), small),
                                       min_size=1, max_size=5))
def test_lp_with_equalities(e, eb, rows):
    g = [r for r, _ in rows]
    b = [x for _, x in rows]
    res = solve_feasibility(3, e, [eb], g, b)
    # an equality is a pair of opposite inequalities
    both = g + [e[0], [-x for x in e[0]]]
    assert res.feasible == _fourier_motzkin_feasible(both, b + [eb, -eb])
    if not res.feasible:
        assert check_farkas(e, [eb], g, b, res.eq_multipliers, res.ge_multipliers)


def test_lp_trivial():
    assert solve_feasibility(2).feasible
    res = solve_feasibility(1, ge_rows=[[1], [-1]], ge_rhs=[1, 0])
    assert not res.feasible


# -- hulls --------------------------------------------------------------------------

def _monotone_chain(points):
    """Hull vertices in 2D by Andrew's algorithm (strict turns only)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return set(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    return set(half(pts)[:-1] + half(pts[::-1])[:-1])


points2 = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=12, unique=True)


@settings(max_examples=150, deadline=None)
@given(points2)
def test_hull_vertices_match_monotone_chain(pts):
    if rank([(p[0] - pts[0][0], p[1] - pts[0][1]) for p in pts[1:]]) < 2:
        return
    got = {pts[i] for i in hull_vertices(pts)}
    assert got == _monotone_chain(pts)
    for f in convex_hull(pts):
        assert all(f.side(p) <= 0 for p in pts)
        assert len(f.points) >= 2


def test_cube_hull():
    cube = list(itertools.product((0, 1), repeat=3)) + [(Fraction(1, 2),) * 3]
    facets = convex_hull(cube)
    assert len(facets) == 6
    assert all(len(f.points) == 4 for f in facets)
    assert len(hull_vertices(cube)) == 8


def test_repeated_points_are_rejected():
    with pytest.raises(DegenerateInput):
        hull_vertices([(0, 0), (0, 0)])


def _area(poly):
    hull = sorted(_monotone_chain(list(poly)))
    # order by angle around the centroid (convex polygon)
    cx = sum(Fraction(x) for x, _ in hull) / len(hull)
    cy = sum(Fraction(y) for _, y in hull) / len(hull)
    hull.sort(key=lambda q: math.atan2(q[1] - cy, q[0] - cx))
    return abs(sum(Fraction(a[0] * b[1] - a[1] * b[0]) for a, b in zip(hull, hull[1:] + hull[:1]))) / 2


@settings(max_examples=60, deadline=None)
@given(points2, st.lists(st.integers(-5, 5), min_size=12, max_size=12))
def test_upper_hull_pieces_tile(pts, hs):
    if rank([(p[0] - pts[0][0], p[1] - pts[0][1]) for p in pts[1:]]) < 2:
        return
    up = upper_hull(pts, hs[: len(pts)])
    total = _area(pts)
    assert sum(_area([pts[i] for i in piece]) for piece in up.pieces) == total
    # each piece's function lies on or above every lifted point, touching its members
    for k, piece in enumerate(up.pieces):
        for i, p in enumerate(pts):
            v = up.value(k, p)
            assert v >= hs[i]
            if i in piece:
                assert v == hs[i]
