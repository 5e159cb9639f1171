"""Compact polyhedral complexes with integral structure.

A complex is vertex-determined: every cell is the convex hull of a set of
vertex ids, all living in one ambient chart with exact rational coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping, Sequence

from . import lp
from ._linalg import (
    affine_coordinates,
    affine_dim,
    chart_axes,
    det,
    dot,
    inverse,
    nullspace,
    sub,
    to_point,
    transpose,
)
from .errors import (
    CellNotContained,
    DimensionMismatch,
    NotComplete,
    NotIntersectionClosed,
    NotPure,
    NotSubcomplex,
    RedundantVertex,
)
from .hull import facet_sets, project

__all__ = [
    "Cell",
    "IntegralStructure",
    "PolyComplex",
    "Subdivision",
    "boundary",
    "build_complex",
    "is_subdivision",
    "skeleton",
    "sort_key",
    "trivial_subdivision",
]

VertexId = Hashable
Point = tuple  # of Fraction


def sort_key(v) -> tuple:
    """Total order on vertex ids mixing ints and strings."""
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def sorted_ids(ids: Iterable) -> list:
    return sorted(ids, key=sort_key)


def cell_key(vertices: Iterable) -> tuple:
    return tuple(sort_key(v) for v in sorted_ids(vertices))


@dataclass(frozen=True)
class Cell:
    vertices: frozenset
    dim: int

    @property
    def simplicial(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def ordered(self) -> list:
        return sorted_ids(self.vertices)

    def __repr__(self) -> str:
        return f"Cell({','.join(map(str, self.ordered()))}; dim={self.dim})"


@dataclass(frozen=True)
class IntegralStructure:
    """Lattice generated by the vectors in ``lattice_basis`` (one per column)."""

    lattice_basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        basis = tuple(to_point(v) for v in self.lattice_basis)
        object.__setattr__(self, "lattice_basis", basis)
        n = len(basis)
        if any(len(v) != n for v in basis):
            raise DimensionMismatch("lattice basis must be square")
        if n and det(basis) == 0:
            raise ValueError("lattice basis is singular")

    @classmethod
    def standard(cls, n: int) -> "IntegralStructure":
        return cls(tuple(tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)))

    @property
    def dim(self) -> int:
        return len(self.lattice_basis)

    def matrix(self) -> list[list[Fraction]]:
        """Basis vectors as the columns of a matrix."""
        return transpose(self.lattice_basis)

    def coordinates(self, x: Sequence) -> tuple[Fraction, ...]:
        """Coordinates of ``x`` in the lattice basis."""
        inv = inverse(self.matrix())
        return tuple(dot(row, x) for row in inv)


def _faces_of_polytope(coords: Mapping, ids: Iterable, memo: dict) -> dict:
    """All nonempty faces ``{vertex set: dim}`` of the hull of ``ids``.

    Raises RedundantVertex if some id is not a vertex of the hull.
    """
    key = frozenset(ids)
    if key in memo:
        return memo[key]
    order = sorted_ids(key)
    pts = [coords[v] for v in order]
    d = affine_dim(pts)
    out: dict = {}
    if len(order) == d + 1:
        for r in range(1, len(order) + 1):
            for sub_ids in itertools.combinations(order, r):
                out[frozenset(sub_ids)] = r - 1
        memo[key] = out
        return out
    if d == 0:
        raise RedundantVertex(order[1], key)
    _, facets = facet_sets(pts)
    facet_ids = [frozenset(order[j] for j in f.points) for f in facets]
    for v in order:
        common = None
        for f in facet_ids:
            if v in f:
                common = set(f) if common is None else common & f
        if common != {v}:
            raise RedundantVertex(v, key)
    out[key] = d
    for f in facet_ids:
        out.update(_faces_of_polytope(coords, f, memo))
    memo[key] = out
    return out


class PolyComplex:
    """A compact polyhedral complex; build with :func:`build_complex`.

    ``vertices`` maps vertex ids to exact points, ``cells`` is the face-closed
    set of cells (vertex sets with their dimension).  Instances are treated
    as immutable values.
    """

    def __init__(self, vertices: Mapping, cells: Iterable[Cell], integral: IntegralStructure):
        self._vertices = MappingProxyType(dict(vertices))
        self._cells = frozenset(cells)
        self.integral = integral
        self._by_set = {c.vertices: c for c in self._cells}
        self._cache: dict = {}
        dims = {len(p) for p in self._vertices.values()}
        self.ambient_dim = dims.pop() if dims else integral.dim

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> Mapping:
        return self._vertices

    @property
    def cells(self) -> frozenset:
        return self._cells

    @property
    def dim(self) -> int:
        return max((c.dim for c in self._cells), default=-1)

    def point(self, v) -> Point:
        return self._vertices[v]

    def vertex_ids(self) -> frozenset:
        return frozenset(self._vertices)

    def cell(self, vertex_ids: Iterable) -> Cell:
        return self._by_set[frozenset(vertex_ids)]

    def has_cell(self, vertex_ids: Iterable) -> bool:
        return frozenset(vertex_ids) in self._by_set

    def cells_of_dim(self, k: int) -> list[Cell]:
        return sorted((c for c in self._cells if c.dim == k), key=lambda c: cell_key(c.vertices))

    def maximal_cells(self) -> list[Cell]:
        if "maximal" not in self._cache:
            cells = sorted(self._cells, key=lambda c: (-c.dim, cell_key(c.vertices)))
            out: list[Cell] = []
            for c in cells:
                if not any(c.vertices < m.vertices for m in out):
                    out.append(c)
            self._cache["maximal"] = sorted(out, key=lambda c: cell_key(c.vertices))
        return self._cache["maximal"]

    def faces(self, cell: Cell) -> list[Cell]:
        return [c for c in self._cells if c.vertices <= cell.vertices]

    def facets(self, cell: Cell) -> list[Cell]:
        return [c for c in self._cells if c.dim == cell.dim - 1 and c.vertices < cell.vertices]

    def is_pure(self) -> bool:
        d = self.dim
        return all(c.dim == d for c in self.maximal_cells())

    def is_simplicial(self) -> bool:
        return all(c.simplicial for c in self._cells)

    def maximal_key(self) -> frozenset:
        """Canonical, hashable description of the cell structure."""
        return frozenset(c.vertices for c in self.maximal_cells())

    # -- geometry --------------------------------------------------------
    def chart(self, cell: Cell) -> tuple[int, ...]:
        """Coordinate axes projecting the affine hull of ``cell`` bijectively."""
        key = ("chart", cell.vertices)
        if key not in self._cache:
            self._cache[key] = chart_axes([self.point(v) for v in cell.ordered()])
        return self._cache[key]

    def _halfspaces(self, cell: Cell):
        key = ("half", cell.vertices)
        if key not in self._cache:
            order = cell.ordered()
            pts = [self.point(v) for v in order]
            p0 = pts[0]
            diffs = [sub(p, p0) for p in pts[1:]]
            normals = nullspace(diffs, self.ambient_dim) if diffs else nullspace(
                [[0] * self.ambient_dim], self.ambient_dim)
            eqs = [(n, dot(n, p0)) for n in normals]
            ineqs = []
            if cell.dim >= 1:
                axes, facets = facet_sets(pts)
                chart_pts = [project(p, axes) for p in pts]
                for f in facets:
                    j = next(iter(f.points))
                    ineqs.append((axes, f.normal, dot(f.normal, chart_pts[j])))
            self._cache[key] = (eqs, ineqs)
        return self._cache[key]

    def contains(self, cell: Cell, x: Sequence) -> bool:
        """Whether the point ``x`` lies in the (closed) cell."""
        x = to_point(x)
        if cell.simplicial:
            lam = affine_coordinates([self.point(v) for v in cell.ordered()], x)
            return lam is not None and all(t >= 0 for t in lam)
        eqs, ineqs = self._halfspaces(cell)
        if any(dot(n, x) != c for n, c in eqs):
            return False
        return all(dot(normal, project(x, axes)) <= off for axes, normal, off in ineqs)

    def in_relative_interior(self, cell: Cell, x: Sequence) -> bool:
        x = to_point(x)
        if cell.simplicial:
            lam = affine_coordinates([self.point(v) for v in cell.ordered()], x)
            return lam is not None and all(t > 0 for t in lam)
        eqs, ineqs = self._halfspaces(cell)
        if any(dot(n, x) != c for n, c in eqs):
            return False
        return all(dot(normal, project(x, axes)) < off for axes, normal, off in ineqs)

    def carrier_of_point(self, x: Sequence) -> Cell | None:
        """Smallest cell containing ``x`` (None if ``x`` is outside the support)."""
        best = None
        for c in self.maximal_cells():
            if self.contains(c, x):
                for f in self.faces(c):
                    if (best is None or f.dim < best.dim) and self.contains(f, x):
                        best = f
        return best

    def simplices_of(self, cell: Cell) -> list[tuple]:
        """A triangulation of ``cell`` without new vertices (pulling its least vertex)."""
        key = ("tri", cell.vertices)
        if key in self._cache:
            return self._cache[key]
        if cell.simplicial:
            out = [tuple(cell.ordered())]
        else:
            apex = cell.ordered()[0]
            out = []
            for f in self.facets(cell):
                if apex not in f.vertices:
                    out.extend((apex,) + s for s in self.simplices_of(f))
        self._cache[key] = out
        return out

    def simplex_volume(self, ids: Sequence, axes: Sequence[int]) -> Fraction:
        """|det| of the simplex in the given chart (d! times the volume)."""
        pts = [project(self.point(v), axes) for v in ids]
        if len(pts) == 1:
            return Fraction(1)
        return abs(det([sub(p, pts[0]) for p in pts[1:]]))

    def volume(self, cell: Cell, axes: Sequence[int] | None = None) -> Fraction:
        """Normalized volume of ``cell`` in the chart ``axes`` (its own by default)."""
        if axes is None:
            axes = self.chart(cell)
        return sum((self.simplex_volume(s, axes) for s in self.simplices_of(cell)), Fraction(0))

    def centroid(self, ids: Iterable) -> Point:
        ids = list(ids)
        n = len(ids)
        return tuple(sum(self.point(v)[k] for v in ids) / n for k in range(self.ambient_dim))

    # -- comparison ------------------------------------------------------
    def is_subcomplex_of(self, other: "PolyComplex") -> bool:
        if any(v not in other.vertices or other.point(v) != p for v, p in self._vertices.items()):
            return False
        return all(other.has_cell(c.vertices) for c in self._cells)

    def subcomplex(self, cells: Iterable) -> "PolyComplex":
        """Subcomplex generated (face-closed) by ``cells`` given as vertex sets."""
        keep: set[Cell] = set()
        for c in cells:
            cell = c if isinstance(c, Cell) else self.cell(c)
            keep.update(self.faces(cell))
        verts = {v: self.point(v) for c in keep for v in c.vertices}
        return PolyComplex(verts, keep, self.integral)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyComplex):
            return NotImplemented
        return dict(self._vertices) == dict(other._vertices) and self._cells == other._cells

    def __hash__(self) -> int:
        return hash((frozenset(self._vertices.items()), self._cells))

    def __repr__(self) -> str:
        counts = [len(self.cells_of_dim(k)) for k in range(self.dim + 1)]
        return f"PolyComplex(dim={self.dim}, f-vector={counts})"


def build_complex(
    vertices: Mapping | Sequence,
    maximal_cells: Iterable[Iterable],
    integral: IntegralStructure | None = None,
    check: bool = True,
) -> PolyComplex:
    """Face-close the given cells into a polyhedral complex.

    ``vertices`` is a mapping id -> coordinates or a sequence (ids 0..n-1).
    With ``check`` the pairwise intersection property is verified; internal
    constructions whose output is a complex by design pass ``check=False``.
    """
    if not isinstance(vertices, Mapping):
        vertices = dict(enumerate(vertices))
    coords = {v: to_point(p) for v, p in vertices.items()}
    dims = {len(p) for p in coords.values()}
    if len(dims) > 1:
        raise DimensionMismatch(f"vertices have mixed dimensions {sorted(dims)}")
    ambient = dims.pop() if dims else 0
    if integral is None:
        integral = IntegralStructure.standard(ambient)
    elif coords and integral.dim != ambient:
        raise DimensionMismatch("lattice dimension differs from the ambient dimension")
    memo: dict = {}
    faces: dict = {}
    tops = []
    for cell in maximal_cells:
        ids = frozenset(cell)
        missing = [v for v in ids if v not in coords]
        if missing:
            raise KeyError(f"unknown vertex ids {missing}")
        if not ids:
            continue
        faces.update(_faces_of_polytope(coords, ids, memo))
        tops.append(ids)
    for v in coords:
        faces.setdefault(frozenset([v]), 0)
    cells = [Cell(vs, d) for vs, d in faces.items()]
    if check:
        _check_intersections(coords, faces, tops)
    return PolyComplex(coords, cells, integral)


def _check_intersections(coords: Mapping, faces: Mapping, tops: list[frozenset]) -> None:
    tops = [t for t in set(tops) if not any(t < u for u in tops)]
    tops.sort(key=cell_key)
    boxes = {}
    for t in tops:
        pts = [coords[v] for v in t]
        boxes[t] = [(min(c), max(c)) for c in zip(*pts)]
    for s, t in itertools.combinations(tops, 2):
        common = s & t
        if not common and any(a[1] < b[0] or b[1] < a[0] for a, b in zip(boxes[s], boxes[t])):
            continue
        if common and (common not in faces):
            raise NotIntersectionClosed(s, t)
        if not _separable(coords, s, t, faces):
            raise NotIntersectionClosed(s, t)


def _separable(coords: Mapping, s: frozenset, t: frozenset, faces: Mapping) -> bool:
    """Is there a hyperplane with s on one side, t on the other, meeting both in s & t?"""
    common = s & t
    ds, dt = faces[s], faces[t]
    n = len(next(iter(coords.values())))
    if common and ds == dt == n and faces[common] == n - 1:
        pts = [coords[v] for v in sorted_ids(common)]
        p0 = pts[0]
        normal = nullspace([sub(p, p0) for p in pts[1:]], n)[0]
        off = dot(normal, p0)
        side_s = {(dot(normal, coords[v]) - off > 0) for v in s - common}
        side_t = {(dot(normal, coords[v]) - off > 0) for v in t - common}
        return len(side_s) == 1 and len(side_t) == 1 and side_s != side_t
    # variables (a_1..a_n, b): a.v - b <= -1 on s\common, = 0 on common, >= 1 on t\common
    eq = [list(coords[v]) + [-1] for v in common]
    ge = [[-x for x in coords[v]] + [1] for v in s - common]
    ge += [list(coords[v]) + [-1] for v in t - common]
    res = lp.solve_feasibility(n + 1, eq, [0] * len(eq), ge, [1] * len(ge))
    return res.feasible


def skeleton(complex_: PolyComplex, k: int) -> PolyComplex:
    """Subcomplex of all cells of dimension at most ``k``."""
    if k < 0:
        raise ValueError("skeleton dimension must be non-negative")
    cells = [c for c in complex_.cells if c.dim <= k]
    return PolyComplex(dict(complex_.vertices), cells, complex_.integral)


def boundary(complex_: PolyComplex) -> PolyComplex:
    """Relative boundary of a pure complex: codimension-one cells in exactly one top cell."""
    if not complex_.is_pure():
        raise NotPure("boundary requires a pure-dimensional complex")
    d = complex_.dim
    if d == 0:
        return PolyComplex({}, [], complex_.integral)
    tops = complex_.cells_of_dim(d)
    outer = [f for f in complex_.cells_of_dim(d - 1)
             if sum(1 for t in tops if f.vertices < t.vertices) == 1]
    return complex_.subcomplex(outer)


@dataclass(frozen=True, eq=False)
class Subdivision:
    """``refined`` subdivides ``parent``; ``carrier`` maps each refined cell to
    the smallest parent cell containing it."""

    refined: PolyComplex
    parent: PolyComplex
    carrier: Mapping

    def maximal_key(self) -> frozenset:
        return self.refined.maximal_key()

    def cells_in(self, parent_cell: Cell) -> list[Cell]:
        """Refined cells lying in ``parent_cell``."""
        return [c for c in self.refined.cells if self.carrier[c].vertices <= parent_cell.vertices]

    def points_in(self, parent_cell: Cell) -> list:
        """Refined vertex ids lying in ``parent_cell``."""
        return sorted_ids(v for v in self.refined.vertices
                          if self.carrier[self.refined.cell([v])].vertices <= parent_cell.vertices)

    def restrict(self, sub_complex: PolyComplex) -> "Subdivision":
        """The induced subdivision of a subcomplex of the parent."""
        if not sub_complex.is_subcomplex_of(self.parent):
            raise NotSubcomplex("not a subcomplex of the parent")
        keep = [c for c in self.refined.cells if sub_complex.has_cell(self.carrier[c].vertices)]
        verts = {v: self.refined.point(v) for c in keep for v in c.vertices}
        refined = PolyComplex(verts, keep, self.refined.integral)
        return Subdivision(refined, sub_complex, {c: self.carrier[c] for c in keep})

    def is_trivial(self) -> bool:
        return self.refined.cells == self.parent.cells

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subdivision):
            return NotImplemented
        return self.refined == other.refined and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.refined)

    def __repr__(self) -> str:
        return f"Subdivision({self.refined!r} of {self.parent!r})"


def trivial_subdivision(complex_: PolyComplex) -> Subdivision:
    return Subdivision(complex_, complex_, {c: c for c in complex_.cells})


def carriers(candidate: PolyComplex, parent: PolyComplex) -> dict:
    """Smallest parent cell containing each candidate cell.

    Raises CellNotContained when some candidate cell is in no parent cell.
    """
    out = {}
    vertex_home: dict = {}
    for v, p in candidate.vertices.items():
        if v in parent.vertices and parent.point(v) == p:
            vertex_home[v] = parent.cell([v])
        else:
            home = parent.carrier_of_point(p)
            if home is None:
                raise CellNotContained(frozenset([v]))
            vertex_home[v] = home
    for c in sorted(candidate.cells, key=lambda c: c.dim):
        union = frozenset().union(*(vertex_home[v].vertices for v in c.vertices))
        options = [f for f in parent.cells if union <= f.vertices]
        if not options:
            raise CellNotContained(c.vertices)
        best = min(options, key=lambda f: f.dim)
        if best.dim < c.dim:
            raise CellNotContained(c.vertices)
        out[c] = best
    return out


def is_subdivision(candidate: PolyComplex, parent: PolyComplex) -> Subdivision:
    """Certify that ``candidate`` subdivides ``parent`` and return the Subdivision.

    Raises CellNotContained or NotComplete (with a witness point when one of
    the sampled points of the uncovered cell is found outside every piece).
    """
    if candidate.ambient_dim != parent.ambient_dim:
        raise DimensionMismatch("complexes live in different ambient charts")
    for v, p in candidate.vertices.items():
        if v in parent.vertices and parent.point(v) != p:
            raise ValueError(f"vertex id {v!r} names different points")
    carrier = carriers(candidate, parent)
    for top in parent.maximal_cells():
        axes = parent.chart(top)
        pieces = [c for c, home in carrier.items() if home == top and c.dim == top.dim]
        total = sum((candidate.volume(c, axes) for c in pieces), Fraction(0))
        whole = parent.volume(top, axes)
        if total != whole:
            inside = [c for c, home in carrier.items() if home.vertices <= top.vertices]
            raise NotComplete(top.vertices, whole - total, _uncovered_point(candidate, parent, top, inside))
    return Subdivision(candidate, parent, carrier)


def _uncovered_point(candidate: PolyComplex, parent: PolyComplex, top: Cell, pieces: list[Cell]):
    order = top.ordered()
    samples = []
    for r in range(len(order), 0, -1):
        for ids in itertools.combinations(order, r):
            samples.append(parent.centroid(ids))
    for simplex in parent.simplices_of(top):
        c = parent.centroid(simplex)
        for v in simplex:
            samples.append(tuple((2 * a + b) / 3 for a, b in zip(c, parent.point(v))))
    for x in samples:
        if not any(candidate.contains(c, x) for c in pieces):
            return x
    return None
