"""Exact convex hulls by beneath-beyond, and upper hulls of lifted point sets.

All geometry is done on integer coordinates: inputs are rescaled by the common
denominator first, which changes neither the face structure nor the
orientation of any facet.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._linalg import (
    affine_dim,
    chart_axes,
    common_denominator,
    dot,
    nullspace,
    primitive_integer,
    rank,
    solve,
    sub,
)
from .errors import DegenerateInput

__all__ = [
    "Facet",
    "UpperHull",
    "convex_hull",
    "facet_sets",
    "hull_vertices",
    "project",
    "upper_hull",
]


@dataclass
class Facet:
    """Supporting hyperplane ``normal . x <= offset`` and the input points on it."""

    normal: tuple[int, ...]
    offset: int
    points: set[int] = field(default_factory=set)

    def side(self, p: Sequence[int]) -> int:
        return dot(self.normal, p) - self.offset


def project(point: Sequence, axes: Sequence[int]) -> tuple:
    return tuple(point[a] for a in axes)


def _to_integer(points: Sequence[Sequence]) -> list[tuple[int, ...]]:
    den = common_denominator(x for p in points for x in p)
    return [tuple(int(Fraction(x) * den) for x in p) for p in points]


def _hyperplane(pts: Sequence[Sequence[int]], interior_sum: Sequence[int], weight: int):
    dim = len(pts[0])
    rows = [list(p) + [-1] for p in pts]
    ns = nullspace(rows, dim + 1)
    if len(ns) != 1:
        raise DegenerateInput("points do not span a hyperplane")
    v = primitive_integer(ns[0])
    normal, offset = v[:dim], v[dim]
    if dot(normal, interior_sum) > weight * offset:
        normal = tuple(-x for x in normal)
        offset = -offset
    return tuple(normal), offset


def convex_hull(points: Sequence[Sequence]) -> list[Facet]:
    """Facets of the convex hull of full-dimensional ``points`` in R^D, D >= 1.

    Beneath-beyond: start from a simplex, then insert the remaining points one
    at a time, replacing the facets visible from the new point by cones over
    the horizon ridges.  Degenerate (coplanar) configurations are handled by
    letting non-visible facets that contain the new point absorb it.
    """
    pts = _to_integer(points)
    n = len(pts)
    if n == 0:
        raise DegenerateInput("no points")
    dim = len(pts[0])
    if dim == 1:
        xs = [p[0] for p in pts]
        lo, hi = min(xs), max(xs)
        if lo == hi:
            raise DegenerateInput("points are not full-dimensional")
        return [
            Facet((1,), hi, {i for i, x in enumerate(xs) if x == hi}),
            Facet((-1,), -lo, {i for i, x in enumerate(xs) if x == lo}),
        ]

    simplex = [0]
    diffs: list[tuple[int, ...]] = []
    for i in range(1, n):
        d = sub(pts[i], pts[0])
        if rank(diffs + [d]) > len(diffs):
            diffs.append(d)
            simplex.append(i)
            if len(simplex) == dim + 1:
                break
    if len(simplex) != dim + 1:
        raise DegenerateInput("points are not full-dimensional")

    interior = tuple(sum(pts[i][k] for i in simplex) for k in range(dim))
    weight = dim + 1
    inserted = list(simplex)
    facets: list[Facet] = []
    for drop in simplex:
        on = [i for i in simplex if i != drop]
        normal, offset = _hyperplane([pts[i] for i in on], interior, weight)
        facets.append(Facet(normal, offset, set(on)))

    in_simplex = set(simplex)
    for i in range(n):
        if i in in_simplex:
            continue
        p = pts[i]
        sides = [f.side(p) for f in facets]
        inserted.append(i)
        visible = [f for f, s in zip(facets, sides) if s > 0]
        if not visible:
            for f, s in zip(facets, sides):
                if s == 0:
                    f.points.add(i)
            continue
        hidden = [(f, s) for f, s in zip(facets, sides) if s <= 0]
        keys = {(f.normal, f.offset) for f, _ in hidden}
        new: list[Facet] = []
        for vf in visible:
            for hf, s in hidden:
                ridge = vf.points & hf.points
                if len(ridge) < dim - 1:
                    continue
                if affine_dim([pts[j] for j in ridge]) != dim - 2:
                    continue
                if s == 0:
                    hf.points.add(i)
                    continue
                normal, offset = _hyperplane([pts[j] for j in ridge] + [p], interior, weight)
                if (normal, offset) in keys:
                    continue
                keys.add((normal, offset))
                on = {j for j in inserted if dot(normal, pts[j]) == offset}
                new.append(Facet(normal, offset, on))
        facets = [f for f, _ in hidden] + new
    return facets


def facet_sets(points: Sequence[Sequence]) -> tuple[tuple[int, ...], list[Facet]]:
    """Facets of the hull of ``points`` inside its own affine hull.

    Returns the chart axes used and the facets in chart coordinates.  A single
    point has no facets.
    """
    axes = chart_axes(points)
    if len(axes) == 0:
        return axes, []
    return axes, convex_hull([project(p, axes) for p in points])


def hull_vertices(points: Sequence[Sequence]) -> list[int]:
    """Indices of the points that are vertices of their convex hull."""
    if len(points) == 1:
        return [0]
    axes, facets = facet_sets(points)
    if not axes:
        raise DegenerateInput("repeated points")
    out = []
    for i in range(len(points)):
        common = None
        for f in facets:
            if i in f.points:
                common = set(f.points) if common is None else common & f.points
        if common == {i}:
            out.append(i)
    return out


@dataclass(frozen=True)
class UpperHull:
    """Upper faces of the lifted point set ``{(p_i, h_i)}``.

    ``pieces`` are the vertex index sets of the projected upper facets; they
    decompose the hull of the points.  ``incident`` lists every point lying on
    each upper facet.  ``functions`` holds the affine function ``(coeffs,
    const)`` of each facet in chart coordinates ``project(p, axes)``.
    ``below`` maps each point that lies strictly under the hull to the index
    of a piece whose function exceeds its height there.
    """

    pieces: list[frozenset[int]]
    incident: list[frozenset[int]]
    functions: list[tuple[tuple[Fraction, ...], Fraction]]
    below: dict[int, int]
    axes: tuple[int, ...]

    def value(self, k: int, point: Sequence) -> Fraction:
        coeffs, const = self.functions[k]
        return dot(coeffs, project(point, self.axes)) + const


def _piece_vertices(chart_pts: list[tuple], members: frozenset[int], d: int) -> frozenset[int]:
    if len(members) == d + 1:
        return members
    order = sorted(members)
    local = hull_vertices([chart_pts[i] for i in order])
    return frozenset(order[j] for j in local)


def upper_hull(points: Sequence[Sequence], heights: Sequence) -> UpperHull:
    """Upper hull of ``points`` lifted by ``heights``.

    The decomposition is the set of maximal domains on which the pointwise
    smallest convex-down function through the lifted points is affine.
    """
    if len(points) == 0:
        raise DegenerateInput("upper hull of an empty point set")
    if len(points) != len(heights):
        raise ValueError("one height per point required")
    heights = [Fraction(h) for h in heights]
    axes = chart_axes(points)
    d = len(axes)
    chart = [tuple(Fraction(x) for x in project(p, axes)) for p in points]
    everyone = frozenset(range(len(points)))
    if d == 0:
        if len(points) > 1:
            raise DegenerateInput("repeated points")
        return UpperHull([everyone], [everyone], [((), heights[0])], {}, axes)

    lifted = [c + (h,) for c, h in zip(chart, heights)]
    if affine_dim(lifted) == d:
        # heights are affine on the points: one flat piece
        base = [0]
        diffs: list[tuple] = []
        for i in range(1, len(chart)):
            dv = sub(chart[i], chart[0])
            if rank(diffs + [dv]) > len(diffs):
                diffs.append(dv)
                base.append(i)
        func = _interpolate([chart[i] for i in base], [heights[i] for i in base])
        verts = _piece_vertices(chart, everyone, d)
        return UpperHull([verts], [everyone], [func], {}, axes)

    s = common_denominator(x for c in chart for x in c)
    t = common_denominator(heights)
    facets = convex_hull(lifted)
    pieces, incident, functions = [], [], []
    for f in facets:
        az = f.normal[-1]
        if az <= 0:
            continue
        members = frozenset(f.points)
        incident.append(members)
        pieces.append(_piece_vertices(chart, members, d))
        coeffs = tuple(Fraction(-s * a, t * az) for a in f.normal[:-1])
        functions.append((coeffs, Fraction(f.offset, t * az)))
    covered = set().union(*incident)
    below = {}
    for i in everyone - covered:
        best = max(range(len(functions)),
                   key=lambda k: dot(functions[k][0], chart[i]) + functions[k][1] - heights[i])
        below[i] = best
    order = sorted(range(len(pieces)), key=lambda k: sorted(pieces[k]))
    return UpperHull(
        [pieces[k] for k in order],
        [incident[k] for k in order],
        [functions[k] for k in order],
        {i: order.index(k) for i, k in below.items()},
        axes,
    )


def _interpolate(pts: Sequence[Sequence], values: Sequence) -> tuple[tuple[Fraction, ...], Fraction]:
    """Affine function through affinely independent points with given values."""
    d = len(pts[0])
    rows = [list(p) + [1] for p in pts]
    sol = solve(rows, list(values))
    if sol is None:
        raise ValueError("values are not affine on the points")
    return tuple(sol[:d]), sol[d]
