"""Lifting (order) functions and the subdivisions they induce.

Lifting functions are convex-down on every cell: their graphs are read off
from *upper* hulls.  A :class:`VerticialLifting` is determined by values on
the vertices of a complex; a :class:`PLLifting` carries its own domains of
linearity and may have vertices that the underlying complex lacks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from ._linalg import affine_coordinates, affine_dim, rank, sub, to_fraction, to_point
from .complex import (
    Cell,
    PolyComplex,
    Subdivision,
    build_complex,
    carriers,
    sorted_ids,
)
from .errors import DomainMismatch, NotConvexDown, NotSubcomplex, UnattainableValue
from .hull import upper_hull

__all__ = [
    "PLLifting",
    "VerticialLifting",
    "as_pl",
    "combined_lifting",
    "explicit_epsilon",
    "induced_subdivision",
    "minimal_extension",
    "refine_by",
    "restrict",
]


@dataclass(frozen=True, eq=False)
class VerticialLifting:
    """Rational values on the vertices of a complex."""

    values: Mapping

    def __post_init__(self):
        object.__setattr__(self, "values",
                           MappingProxyType({v: to_fraction(x) for v, x in dict(self.values).items()}))

    @property
    def domain(self) -> frozenset:
        return frozenset(self.values)

    def __getitem__(self, v) -> Fraction:
        return self.values[v]

    def shifted(self, c) -> "VerticialLifting":
        return VerticialLifting({v: x + c for v, x in self.values.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, VerticialLifting):
            return NotImplemented
        return dict(self.values) == dict(other.values)

    def __hash__(self) -> int:
        return hash(frozenset(self.values.items()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{v}: {self.values[v]}" for v in sorted_ids(self.values))
        return f"VerticialLifting({{{inner}}})"


@dataclass(frozen=True, eq=False)
class PLLifting:
    """Piecewise-linear lifting: affine on each cell of ``linearity.refined``."""

    linearity: Subdivision
    values: VerticialLifting

    def __post_init__(self):
        if self.values.domain != self.linearity.refined.vertex_ids():
            raise DomainMismatch("PL lifting values must be given on the vertices of its linearity domains")

    @property
    def domain(self) -> PolyComplex:
        return self.linearity.parent

    def __call__(self, x: Sequence) -> Fraction:
        """Evaluate at a point of the support."""
        x = to_point(x)
        refined = self.linearity.refined
        for v, p in refined.vertices.items():
            if p == x:
                return self.values[v]
        for cell in refined.maximal_cells():
            if refined.contains(cell, x):
                return _interpolate(refined, cell, self.values.values, x)
        raise DomainMismatch(f"point {x} is outside the support")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLLifting):
            return NotImplemented
        return self.linearity == other.linearity and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)


def _affine_basis(points: Sequence[Sequence]) -> list[int]:
    base = [0]
    diffs: list[tuple] = []
    for i in range(1, len(points)):
        d = sub(points[i], points[0])
        if rank(diffs + [d]) > len(diffs):
            diffs.append(d)
            base.append(i)
    return base


def _interpolate(complex_: PolyComplex, cell: Cell, values: Mapping, x: Sequence) -> Fraction:
    order = cell.ordered()
    pts = [complex_.point(v) for v in order]
    base = _affine_basis(pts)
    lam = affine_coordinates([pts[i] for i in base], x)
    if lam is None:
        raise DomainMismatch("point is not in the affine hull of the cell")
    return sum((t * values[order[i]] for t, i in zip(lam, base)), Fraction(0))


def _points_in(complex_: PolyComplex, cell: Cell, coords: Mapping) -> list:
    out = []
    for w, p in coords.items():
        if w in complex_.vertices and complex_.point(w) == p:
            if w in cell.vertices:
                out.append(w)
        elif complex_.contains(cell, p):
            out.append(w)
    return sorted_ids(out)


def _decompose(complex_: PolyComplex, coords: Mapping, values: Mapping, pl_cells: Subdivision | None = None):
    """Per-cell upper hull of ``{(coords[w], values[w])}`` over ``complex_``.

    With ``pl_cells`` every maximal linearity cell must sit inside one upper
    piece and no point may lie below the hull; otherwise NotConvexDown.
    Without it, a point strictly below the hull raises UnattainableValue.
    """
    pieces = []
    for top in complex_.maximal_cells():
        ids = _points_in(complex_, top, coords)
        hull = upper_hull([coords[w] for w in ids], [values[w] for w in ids])
        if hull.below:
            i, k = min(hull.below.items())
            w = ids[i]
            if pl_cells is not None:
                raise NotConvexDown(top.vertices, w)
            raise UnattainableValue(w, values[w], hull.value(k, coords[w]), top.vertices,
                                    (hull.axes,) + hull.functions[k])
        local = [frozenset(ids[i] for i in piece) for piece in hull.pieces]
        if pl_cells is not None:
            incident = [frozenset(ids[i] for i in inc) for inc in hull.incident]
            for c in pl_cells.cells_in(top):
                if c.dim == top.dim and not any(c.vertices <= inc for inc in incident):
                    raise NotConvexDown(top.vertices)
        pieces.extend(local)
    used = {v: coords[v] for piece in pieces for v in piece}
    for v in complex_.vertices:
        used.setdefault(v, complex_.point(v))
    refined = build_complex(used, pieces, complex_.integral, check=False)
    return Subdivision(refined, complex_, carriers(refined, complex_))


def induced_subdivision(complex_: PolyComplex, f) -> Subdivision:
    """The coarsest subdivision of ``complex_`` on whose cells ``f`` is affine."""
    if isinstance(f, VerticialLifting):
        if f.domain != complex_.vertex_ids():
            raise DomainMismatch("verticial lifting must be defined exactly on the vertices")
        return _decompose(complex_, complex_.vertices, f.values)
    if isinstance(f, PLLifting):
        if f.linearity.parent != complex_:
            raise DomainMismatch("PL lifting lives on a different complex")
        return _decompose(complex_, f.linearity.refined.vertices, f.values.values, f.linearity)
    raise TypeError(f"not a lifting: {f!r}")


def minimal_extension(complex_: PolyComplex, values: Mapping, extra_points: Mapping | None = None) -> PLLifting:
    """Smallest function, convex-down on each cell, taking the prescribed values.

    ``values`` must cover every vertex of ``complex_``; points that are not
    vertices need coordinates in ``extra_points`` and must lie in the support.
    Raises UnattainableValue when some prescribed value lies strictly below
    the hull of the others.
    """
    extra_points = {w: to_point(p) for w, p in (extra_points or {}).items()}
    values = {w: to_fraction(x) for w, x in values.items()}
    missing = complex_.vertex_ids() - set(values)
    if missing:
        raise DomainMismatch(f"no value for vertices {sorted_ids(missing)}")
    coords = dict(complex_.vertices)
    for w in values:
        if w in coords:
            continue
        if w not in extra_points:
            raise DomainMismatch(f"no coordinates for point {w!r}")
        if complex_.carrier_of_point(extra_points[w]) is None:
            raise DomainMismatch(f"point {w!r} lies outside the support")
        coords[w] = extra_points[w]
    coords = {w: coords[w] for w in values}
    sub_ = _decompose(complex_, coords, values)
    kept = {v: values[v] for v in sub_.refined.vertices}
    return PLLifting(sub_, VerticialLifting(kept))


def as_pl(complex_: PolyComplex, f) -> PLLifting:
    if isinstance(f, PLLifting):
        return f
    if f.domain != complex_.vertex_ids():
        raise DomainMismatch("verticial lifting must be defined exactly on the vertices")
    return minimal_extension(complex_, f.values)


def restrict(f, sub_complex: PolyComplex):
    """Restriction of a lifting to a subcomplex of its domain."""
    if isinstance(f, VerticialLifting):
        if not sub_complex.vertex_ids() <= f.domain:
            raise NotSubcomplex("subcomplex has vertices outside the lifting's domain")
        return VerticialLifting({v: f.values[v] for v in sub_complex.vertices})
    linearity = f.linearity.restrict(sub_complex)
    return PLLifting(linearity, VerticialLifting({v: f.values[v] for v in linearity.refined.vertices}))


def refine_by(base: Subdivision, f_prime) -> Subdivision:
    """Subdivide each cell of ``base`` by the lifting ``f_prime`` on ``base.refined``."""
    inner = induced_subdivision(base.refined, f_prime)
    carrier = {c: base.carrier[inner.carrier[c]] for c in inner.refined.cells}
    return Subdivision(inner.refined, base.parent, carrier)


def explicit_epsilon(complex_: PolyComplex, f, f_prime) -> Fraction:
    """A rational eps0 > 0 with ``Delta_{f + eps f'} = refine_by(Delta_f, f')`` for 0 < eps <= eps0.

    Collects the strict fold inequalities of ``f + eps f'`` along the common
    refinement: each is ``A + eps B > 0`` with ``A >= 0``; when ``A > 0`` and
    ``B < 0`` it bounds eps by ``A / -B``.  The result is half the tightest
    bound, or 1 when nothing binds.
    """
    base = induced_subdivision(complex_, f)
    big_f = as_pl(complex_, f)
    small_f = as_pl(base.refined, f_prime)
    fine = refine_by(base, small_f)
    refined = fine.refined
    at_f = {w: big_f(p) for w, p in refined.vertices.items()}
    at_g = {w: small_f(p) for w, p in refined.vertices.items()}
    bound = None
    for top in complex_.maximal_cells():
        pts = fine.points_in(top)
        for tau in fine.cells_in(top):
            if tau.dim != top.dim:
                continue
            order = tau.ordered()
            tau_pts = [refined.point(v) for v in order]
            basis = [order[i] for i in _affine_basis(tau_pts)]
            for w in pts:
                if w in tau.vertices:
                    continue
                lam = affine_coordinates([refined.point(v) for v in basis], refined.point(w))
                a = sum((t * at_f[v] for t, v in zip(lam, basis)), Fraction(0)) - at_f[w]
                b = sum((t * at_g[v] for t, v in zip(lam, basis)), Fraction(0)) - at_g[w]
                if a < 0 or (a == 0 and b <= 0):
                    raise AssertionError("fold inequality violated; inputs are not liftings")
                if a > 0 and b < 0:
                    r = a / -b
                    bound = r if bound is None or r < bound else bound
    return Fraction(1) if bound is None else bound / 2


def combined_lifting(complex_: PolyComplex, f, f_prime, eps) -> tuple[Subdivision, VerticialLifting]:
    """The refinement ``refine_by(Delta_f, f')`` and the values of ``f + eps f'`` on its vertices."""
    base = induced_subdivision(complex_, f)
    big_f = as_pl(complex_, f)
    small_f = as_pl(base.refined, f_prime)
    fine = refine_by(base, small_f)
    eps = to_fraction(eps)
    vals = {w: big_f(p) + eps * small_f(p) for w, p in fine.refined.vertices.items()}
    return fine, VerticialLifting(vals)


def is_affine_on(points: Sequence[Sequence], values: Sequence) -> bool:
    lifted = [tuple(p) + (Fraction(v),) for p, v in zip(points, values)]
    return affine_dim(lifted) == affine_dim(list(points))
