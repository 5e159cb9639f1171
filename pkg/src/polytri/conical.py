"""Conical polyhedral complexes, slicing functions and the cone/slice correspondence.

Cones are pointed and determined by their rays.  Every maximal cone keeps a
positive linear functional ``u`` (``u . r >= 1`` on its rays); the polytope
``{x in cone : u . x = 1}`` is its *local slice*, through which faces,
containment and homogeneous liftings are computed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from . import lp
from ._linalg import common_denominator, dot, primitive_integer, solve, to_fraction, to_point
from .complex import (
    Cell,
    IntegralStructure,
    PolyComplex,
    Subdivision,
    _faces_of_polytope,
    build_complex,
    carriers,
    cell_key,
    is_subdivision,
    sorted_ids,
)
from .errors import (
    CellNotContained,
    DimensionMismatch,
    DomainMismatch,
    NoSlicingFunction,
    NotIntersectionClosed,
    NotPointed,
    NotSlicing,
    NotSubcomplex,
    UnattainableValue,
)
from .hull import upper_hull
from .lifting import VerticialLifting
from .triangulation import ExtensionResult, extend_triangulation, is_regular, RegularityCertificate

__all__ = [
    "ConicalComplex",
    "ConicalExtension",
    "ConicalSubdivision",
    "Ray",
    "SlicingFunction",
    "build_conical",
    "cone_over",
    "conical_skeleton",
    "extend_conical_triangulation",
    "find_slicing_function",
    "induced_conical_subdivision",
    "is_homogeneous_lifting",
    "slice",
]

ORIGIN = Cell(frozenset(), 0)


def primitive_on_ray(x: Sequence, integral: IntegralStructure) -> tuple[Fraction, ...]:
    """The first nonzero lattice point on the ray through ``x``."""
    z = integral.coordinates(x)
    if not any(z):
        raise ValueError("zero vector spans no ray")
    den = common_denominator(z)
    prim = primitive_integer([c * den for c in z])
    basis = integral.lattice_basis
    return tuple(sum((Fraction(k) * b[i] for k, b in zip(prim, basis)), Fraction(0))
                 for i in range(len(x)))


@dataclass(frozen=True)
class Ray:
    generator: tuple[Fraction, ...]
    primitive_generator: tuple[Fraction, ...]


class ConicalComplex:
    """Pointed cones sharing the origin; build with :func:`build_conical`.

    ``cones`` holds every face as a :class:`Cell` whose vertices are ray ids
    and whose ``dim`` is the dimension of the cone's span; the origin is the
    cell with no rays.
    """

    def __init__(self, rays: Mapping, cones: Iterable[Cell], integral: IntegralStructure,
                 functionals: Mapping):
        self._rays = MappingProxyType(dict(rays))
        self._cones = frozenset(cones) | {ORIGIN}
        self.integral = integral
        self.ambient_dim = integral.dim
        self._by_set = {c.vertices: c for c in self._cones}
        self._functionals = dict(functionals)
        self._cache: dict = {}

    @property
    def rays(self) -> Mapping:
        return self._rays

    @property
    def cones(self) -> frozenset:
        return self._cones

    @property
    def dim(self) -> int:
        return max((c.dim for c in self._cones), default=0)

    def ray_ids(self) -> frozenset:
        return frozenset(self._rays)

    def generator(self, r) -> tuple:
        return self._rays[r].generator

    def cone(self, ray_ids: Iterable) -> Cell:
        return self._by_set[frozenset(ray_ids)]

    def has_cone(self, ray_ids: Iterable) -> bool:
        return frozenset(ray_ids) in self._by_set

    def cones_of_dim(self, k: int) -> list[Cell]:
        return sorted((c for c in self._cones if c.dim == k), key=lambda c: cell_key(c.vertices))

    def maximal_cones(self) -> list[Cell]:
        if "max" not in self._cache:
            cones = [c for c in self._cones
                     if not any(c.vertices < d.vertices for d in self._cones)]
            self._cache["max"] = sorted(cones, key=lambda c: cell_key(c.vertices))
        return self._cache["max"]

    def maximal_key(self) -> frozenset:
        return frozenset(c.vertices for c in self.maximal_cones())

    def is_simplicial(self) -> bool:
        return all(len(c.vertices) == c.dim for c in self._cones)

    def functional(self, cone: Cell) -> tuple[Fraction, ...]:
        """A linear functional positive on every nonzero point of ``cone``."""
        for top in self.maximal_cones():
            if cone.vertices <= top.vertices:
                return self._functionals[top.vertices]
        raise KeyError(cone)

    def local_slice(self, cone: Cell) -> PolyComplex:
        """The polytope ``{x in cone : u . x = 1}`` with its faces, vertex ids = ray ids."""
        key = ("slice", cone.vertices)
        if key not in self._cache:
            u = self.functional(cone)
            pts = {r: _scale(self.generator(r), 1 / dot(u, self.generator(r))) for r in cone.vertices}
            faces = _faces_of_polytope(pts, cone.vertices, {}) if pts else {}
            cells = [Cell(vs, d) for vs, d in faces.items()]
            self._cache[key] = PolyComplex(pts, cells, self.integral)
        return self._cache[key]

    def contains(self, cone: Cell, x: Sequence) -> bool:
        x = to_point(x)
        if not any(x):
            return True
        if not cone.vertices:
            return False
        t = dot(self.functional(cone), x)
        if t <= 0:
            return False
        local = self.local_slice(cone)
        return local.contains(local.cell(cone.vertices), _scale(x, 1 / t))

    def carrier_of_point(self, x: Sequence) -> Cell | None:
        """Smallest cone containing ``x``."""
        x = to_point(x)
        if not any(x):
            return ORIGIN
        for top in self.maximal_cones():
            if self.contains(top, x):
                local = self.local_slice(top)
                t = dot(self.functional(top), x)
                return self.cone(local.carrier_of_point(_scale(x, 1 / t)).vertices)
        return None

    def faces(self, cone: Cell) -> list[Cell]:
        return [c for c in self._cones if c.vertices <= cone.vertices]

    def subcomplex(self, cones: Iterable) -> "ConicalComplex":
        """The smallest subcomplex containing the given cones (ray-id sets or cells)."""
        keep = set()
        for c in cones:
            ids = c.vertices if isinstance(c, Cell) else frozenset(c)
            if ids not in self._by_set:
                raise NotSubcomplex(f"{sorted_ids(ids)} is not a cone")
            keep.update(self.faces(self._by_set[ids]))
        rays = {r: self._rays[r] for c in keep for r in c.vertices}
        tops = [c for c in keep if not any(c.vertices < d.vertices for d in keep)]
        funcs = {c.vertices: self.functional(c) for c in tops}
        return ConicalComplex(rays, keep, self.integral, funcs)

    def is_subcomplex_of(self, other: "ConicalComplex") -> bool:
        return (all(other.has_cone(c.vertices) for c in self._cones)
                and all(other.rays.get(r) == ray for r, ray in self._rays.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConicalComplex):
            return NotImplemented
        return (dict(self._rays) == dict(other._rays) and self._cones == other._cones
                and self.integral == other.integral)

    def __hash__(self) -> int:
        return hash((frozenset(self._rays), self._cones))

    def __repr__(self) -> str:
        counts = [len(self.cones_of_dim(k)) for k in range(self.dim + 1)]
        return f"ConicalComplex(dim={self.dim}, f-vector={counts})"

    def __reduce__(self):
        return (ConicalComplex, (dict(self._rays), self._cones, self.integral, self._functionals))


def _scale(x: Sequence, t) -> tuple:
    return tuple(c * t for c in x)


def _positive_functional(gens: list) -> tuple | None:
    n = len(gens[0])
    res = lp.solve_feasibility(n, [], [], [list(g) for g in gens], [1] * len(gens))
    return res.solution if res.feasible else None


def _cones_separable(gens: Mapping, s: frozenset, t: frozenset) -> bool:
    """Is there a hyperplane through O with s and t on opposite sides meeting both in s & t?"""
    n = len(next(iter(gens.values())))
    common = s & t
    eq = [list(gens[r]) for r in common]
    ge = [list(gens[r]) for r in s - common] + [[-x for x in gens[r]] for r in t - common]
    return lp.solve_feasibility(n, eq, [0] * len(eq), ge, [1] * len(ge)).feasible


def build_conical(
    rays: Mapping | Sequence,
    maximal_cones: Iterable[Iterable],
    integral: IntegralStructure | None = None,
    check: bool = True,
) -> ConicalComplex:
    """Face-close the given cones into a conical complex.

    Raises NotPointed for a cone containing a line, RedundantVertex for a ray
    that is not extremal in its cone and, with ``check``,
    NotIntersectionClosed when two cones meet outside a common face.
    """
    if not isinstance(rays, Mapping):
        rays = dict(enumerate(rays))
    gens = {r: to_point(g) for r, g in rays.items()}
    dims = {len(g) for g in gens.values()}
    if len(dims) > 1:
        raise DimensionMismatch(f"ray generators have mixed dimensions {sorted(dims)}")
    ambient = dims.pop() if dims else (integral.dim if integral else 0)
    if integral is None:
        integral = IntegralStructure.standard(ambient)
    elif integral.dim != ambient:
        raise DimensionMismatch("lattice dimension differs from the ambient dimension")
    for r, g in gens.items():
        if not any(g):
            raise NotPointed(f"ray {r!r} has a zero generator")
    faces: dict = {}
    funcs: dict = {}
    tops = []
    for cone in maximal_cones:
        ids = frozenset(cone)
        if not ids:
            continue
        order = sorted_ids(ids)
        u = _positive_functional([gens[r] for r in order])
        if u is None:
            raise NotPointed(f"cone {order} contains a line")
        pts = {r: _scale(gens[r], 1 / dot(u, gens[r])) for r in order}
        for vs, d in _faces_of_polytope(pts, ids, {}).items():
            faces[vs] = d + 1
        funcs[ids] = u
        tops.append(ids)
    for r in gens:
        if frozenset([r]) not in faces:
            u = tuple(gens[r])
            funcs[frozenset([r])] = _scale(u, 1 / dot(u, u))
            faces[frozenset([r])] = 1
            tops.append(frozenset([r]))
    tops = [t for t in set(tops) if not any(t < o for o in tops)]
    if check:
        for s, t in itertools.combinations(sorted(tops, key=cell_key), 2):
            common = s & t
            if common and common not in faces:
                raise NotIntersectionClosed(s, t)
            if not _cones_separable(gens, s, t):
                raise NotIntersectionClosed(s, t)
    ray_objs = {r: Ray(g, primitive_on_ray(g, integral)) for r, g in gens.items()}
    cells = [Cell(vs, d) for vs, d in faces.items()]
    return ConicalComplex(ray_objs, cells, integral, {t: funcs[t] for t in tops})


def conical_skeleton(sigma: ConicalComplex, k: int) -> ConicalComplex:
    """Subcomplex of all cones of dimension at most ``k``."""
    return sigma.subcomplex([c for c in sigma.cones if c.dim <= k])


@dataclass(frozen=True, eq=False)
class ConicalSubdivision:
    refined: ConicalComplex
    parent: ConicalComplex
    carrier: Mapping

    def maximal_key(self) -> frozenset:
        return self.refined.maximal_key()

    def restrict(self, sub_complex: ConicalComplex) -> "ConicalSubdivision":
        if not sub_complex.is_subcomplex_of(self.parent):
            raise NotSubcomplex("not a subcomplex of the parent")
        keep = [c for c in self.refined.cones if sub_complex.has_cone(self.carrier[c].vertices)]
        refined = self.refined.subcomplex(keep)
        return ConicalSubdivision(refined, sub_complex, {c: self.carrier[c] for c in refined.cones})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConicalSubdivision):
            return NotImplemented
        return self.refined == other.refined and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.refined)


def conical_carriers(candidate: ConicalComplex, parent: ConicalComplex) -> dict:
    """Smallest parent cone containing each candidate cone."""
    home = {}
    for r, ray in candidate.rays.items():
        if r in parent.rays and parent.rays[r].generator == ray.generator:
            home[r] = parent.cone([r])
        else:
            c = parent.carrier_of_point(ray.generator)
            if c is None:
                raise CellNotContained(frozenset([r]))
            home[r] = c
    out = {}
    for c in candidate.cones:
        union = frozenset().union(*(home[r].vertices for r in c.vertices))
        options = [f for f in parent.cones if union <= f.vertices]
        if not options:
            raise CellNotContained(c.vertices)
        best = min(options, key=lambda f: f.dim)
        if best.dim < c.dim:
            raise CellNotContained(c.vertices)
        out[c] = best
    return out


# -- slicing functions ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SlicingFunction:
    """Positive values on rays, extended linearly over each cone."""

    ray_values: Mapping

    def __post_init__(self):
        object.__setattr__(self, "ray_values",
                           MappingProxyType({r: to_fraction(x) for r, x in dict(self.ray_values).items()}))

    def __getitem__(self, r) -> Fraction:
        return self.ray_values[r]

    def __eq__(self, other) -> bool:
        return isinstance(other, SlicingFunction) and dict(self.ray_values) == dict(other.ray_values)

    def __hash__(self) -> int:
        return hash(frozenset(self.ray_values.items()))

    def linear_form(self, sigma: ConicalComplex, cone: Cell) -> tuple[Fraction, ...]:
        """A linear functional agreeing with the ray values on ``cone``; NotSlicing if none."""
        order = sorted_ids(cone.vertices)
        rows = [list(sigma.generator(r)) for r in order]
        sol = solve(rows, [self.ray_values[r] for r in order]) if rows else ()
        if sol is None:
            raise NotSlicing(f"values are not linear on cone {order}")
        return tuple(sol)

    def __call__(self, sigma: ConicalComplex, x: Sequence) -> Fraction:
        x = to_point(x)
        cone = sigma.carrier_of_point(x)
        if cone is None:
            raise DomainMismatch(f"point {x} is outside the support")
        return dot(self.linear_form(sigma, cone), x) if cone.vertices else Fraction(0)


def validate_slicing(sigma: ConicalComplex, h: SlicingFunction) -> None:
    missing = sigma.ray_ids() - set(h.ray_values)
    if missing:
        raise NotSlicing(f"no value on rays {sorted_ids(missing)}")
    for r in sorted_ids(sigma.ray_ids()):
        if h[r] <= 0:
            raise NotSlicing(f"value {h[r]} on ray {r!r} is not positive")
    for top in sigma.maximal_cones():
        h.linear_form(sigma, top)


def find_slicing_function(sigma: ConicalComplex) -> SlicingFunction | None:
    """Feasibility LP for positive ray values that are linear on every cone.

    Variables: one linear form per maximal cone; the forms must agree on
    shared rays and be at least 1 on every ray.
    """
    tops = sigma.maximal_cones()
    n = sigma.ambient_dim
    nv = n * len(tops)
    eq_rows, ge_rows = [], []
    first: dict = {}
    for k, top in enumerate(tops):
        for r in sorted_ids(top.vertices):
            row = [Fraction(0)] * nv
            row[k * n:(k + 1) * n] = sigma.generator(r)
            if r in first:
                j = first[r]
                diff = [Fraction(0)] * nv
                diff[k * n:(k + 1) * n] = sigma.generator(r)
                diff[j * n:(j + 1) * n] = [-x for x in sigma.generator(r)]
                eq_rows.append(diff)
            else:
                first[r] = k
                ge_rows.append(row)
    res = lp.solve_feasibility(nv, eq_rows, [0] * len(eq_rows), ge_rows, [1] * len(ge_rows))
    if not res.feasible:
        return None
    vals = {}
    for r, k in first.items():
        vals[r] = dot(res.solution[k * n:(k + 1) * n], sigma.generator(r))
    return SlicingFunction(vals)


# -- cone / slice ----------------------------------------------------------------

def cone_over(complex_: PolyComplex) -> tuple[ConicalComplex, SlicingFunction]:
    """The cone over a compact complex and its canonical slicing (last coordinate)."""
    n = complex_.ambient_dim
    rays = {v: tuple(p) + (Fraction(1),) for v, p in complex_.vertices.items()}
    basis = [tuple(b) + (Fraction(0),) for b in complex_.integral.lattice_basis]
    basis.append(tuple([Fraction(0)] * n) + (Fraction(1),))
    integral = IntegralStructure(tuple(basis))
    tops = [c.vertices for c in complex_.maximal_cells()]
    sigma = build_conical(rays, tops, integral, check=False)
    return sigma, SlicingFunction({v: 1 for v in complex_.vertices})


def slice(sigma: ConicalComplex, h: SlicingFunction) -> PolyComplex:
    """The compact complex ``h^{-1}(1)``; vertex ids are the ray ids.

    The slice lives in the same ambient space and keeps the cone lattice.
    """
    validate_slicing(sigma, h)
    pts = {r: _scale(sigma.generator(r), 1 / h[r]) for r in sigma.rays}
    cells = [Cell(c.vertices, c.dim - 1) for c in sigma.cones if c.vertices]
    return PolyComplex(pts, cells, sigma.integral)


def drop_last(complex_: PolyComplex) -> PolyComplex:
    """Forget the last coordinate (inverse of the embedding used by :func:`cone_over`)."""
    pts = {v: tuple(p[:-1]) for v, p in complex_.vertices.items()}
    basis = tuple(tuple(b[:-1]) for b in complex_.integral.lattice_basis[:-1])
    return PolyComplex(pts, complex_.cells, IntegralStructure(basis))


# -- homogeneous liftings ------------------------------------------------------------

def _values(f) -> dict:
    return dict(f.values) if isinstance(f, VerticialLifting) else dict(f)


def _homogeneous_pieces(sigma: ConicalComplex, values: Mapping, gens: Mapping):
    pieces = []
    for top in sigma.maximal_cones():
        u = sigma.functional(top)
        local = sigma.local_slice(top)
        face = local.cell(top.vertices)
        ids, pts, hts, scales = [], [], [], []
        for r in sorted_ids(gens):
            g = gens[r]
            t = dot(u, g)
            if t <= 0:
                continue
            p = _scale(g, 1 / t)
            if r in top.vertices or (r not in sigma.rays and local.contains(face, p)):
                ids.append(r)
                pts.append(p)
                hts.append(values[r] / t)
                scales.append(t)
        hull = upper_hull(pts, hts)
        if hull.below:
            i, k = min(hull.below.items())
            raise UnattainableValue(ids[i], values[ids[i]], hull.value(k, pts[i]) * scales[i], top.vertices,
                                    hull.functions[k])
        pieces.extend(frozenset(ids[i] for i in piece) for piece in hull.pieces)
    return pieces


def induced_conical_subdivision(sigma: ConicalComplex, f: Mapping,
                                extra_rays: Mapping | None = None) -> ConicalSubdivision:
    """Coarsest conical subdivision on whose cones the homogeneous lifting ``f`` is linear.

    ``f`` gives values at the ray generators of ``sigma`` (and at the
    generators in ``extra_rays``, which must lie in the support).
    """
    values = {r: to_fraction(x) for r, x in _values(f).items()}
    gens = {r: sigma.generator(r) for r in sigma.rays}
    for r, g in (extra_rays or {}).items():
        g = to_point(g)
        if sigma.carrier_of_point(g) is None:
            raise DomainMismatch(f"ray {r!r} lies outside the support")
        gens[r] = g
    if set(values) != set(gens):
        raise DomainMismatch("homogeneous lifting must be given exactly on the rays")
    pieces = _homogeneous_pieces(sigma, values, gens)
    used = {r: gens[r] for p in pieces for r in p}
    for r in sigma.rays:
        used.setdefault(r, gens[r])
    refined = build_conical(used, pieces, sigma.integral, check=False)
    return ConicalSubdivision(refined, sigma, conical_carriers(refined, sigma))


def is_homogeneous_lifting(sigma: ConicalComplex, f: Mapping, extra_rays: Mapping | None = None) -> bool:
    """True iff the ray values define a homogeneous convex-down lifting on ``sigma``."""
    try:
        values = {r: to_fraction(x) for r, x in _values(f).items()}
        induced_conical_subdivision(sigma, values, extra_rays)
    except (UnattainableValue, DomainMismatch, TypeError, ValueError):
        return False
    return True


def evaluate_homogeneous(sub: ConicalSubdivision, values: Mapping, x: Sequence) -> Fraction:
    """Value at ``x`` of the lifting that is linear on each cone of ``sub.refined``."""
    refined = sub.refined
    cone = refined.carrier_of_point(x)
    if cone is None:
        raise DomainMismatch(f"point {to_point(x)} is outside the support")
    if not cone.vertices:
        return Fraction(0)
    form = SlicingFunction({r: values[r] for r in cone.vertices}).linear_form(refined, cone)
    return dot(form, to_point(x))


# -- conical extension -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ConicalExtension:
    """Simplicial conical subdivision with the homogeneous lifting inducing it."""

    subdivision: ConicalSubdivision
    lifting: VerticialLifting
    slicing: SlicingFunction
    compact: ExtensionResult
    details: dict = field(default_factory=dict)


def _slice_subdivision(sub: ConicalSubdivision, h: SlicingFunction, base: PolyComplex) -> tuple[Subdivision, dict]:
    parent = sub.parent
    hv = {}
    for r, ray in sub.refined.rays.items():
        hv[r] = h[r] if r in parent.rays else h(parent, ray.generator)
    pts = {r: _scale(ray.generator, 1 / hv[r]) for r, ray in sub.refined.rays.items()}
    cells = [Cell(c.vertices, c.dim - 1) for c in sub.refined.cones if c.vertices]
    refined = PolyComplex(pts, cells, sub.refined.integral)
    return is_subdivision(refined, base), hv


def extend_conical_triangulation(
    sigma: ConicalComplex,
    h: SlicingFunction | None,
    sigma0: ConicalComplex,
    sigma0_sub: ConicalSubdivision,
    f0: Mapping,
    strategy: str = "pulling",
    seed: int | None = 0,
) -> ConicalExtension:
    """Extend a lifting-induced simplicial subdivision of a subcomplex of ``sigma``.

    The result is simplicial, restricts to ``sigma0_sub`` on ``sigma0``, is
    induced by a homogeneous lifting and has no rays beyond those of
    ``sigma`` and ``sigma0_sub``.  Works on the slice ``h = 1``: the compact
    extension is applied there and the answer is coned back, with
    homogeneous values ``c_w * h(w)``.
    """
    if h is None:
        h = find_slicing_function(sigma)
        if h is None:
            raise NoSlicingFunction("the complex admits no slicing function")
    if not sigma0.is_subcomplex_of(sigma):
        raise NotSubcomplex("sigma0 is not a subcomplex of sigma")
    if sigma0_sub.parent != sigma0:
        raise DomainMismatch("the subdivision must refine sigma0")
    delta = slice(sigma, h)
    delta0 = slice(sigma0, SlicingFunction({r: h[r] for r in sigma0.rays}))
    delta0_sub, hv = _slice_subdivision(sigma0_sub, h, delta0)
    values = {r: to_fraction(x) for r, x in _values(f0).items()}
    if set(values) != set(sigma0_sub.refined.rays):
        raise DomainMismatch("f0 must be given on the rays of the subdivision")
    compact_f0 = VerticialLifting({r: values[r] / hv[r] for r in values})
    res = extend_triangulation(delta, delta0, delta0_sub, compact_f0, strategy, seed)

    gens = {}
    hw = {}
    for w in res.subdivision.refined.vertices:
        if w in sigma.rays:
            gens[w], hw[w] = sigma.generator(w), h[w]
        else:
            gens[w], hw[w] = sigma0_sub.refined.generator(w), hv[w]
    tops = [c.vertices for c in res.subdivision.refined.maximal_cells()]
    refined = build_conical(gens, tops, sigma.integral, check=False)
    out = ConicalSubdivision(refined, sigma, conical_carriers(refined, sigma))
    lifting = VerticialLifting({w: res.lifting[w] * hw[w] for w in gens})
    return ConicalExtension(out, lifting, h, res)


def check_conical_extension(sigma: ConicalComplex, sigma0: ConicalComplex,
                            sigma0_sub: ConicalSubdivision, ext: ConicalExtension) -> dict[str, bool]:
    """Simplicial, induced, restriction and 1-skeleton conditions, checked directly on cones."""
    sub = ext.subdivision
    extra = {r: ray.generator for r, ray in sub.refined.rays.items() if r not in sigma.rays}
    values = {r: ext.lifting[r] for r in sub.refined.rays}
    try:
        induced = induced_conical_subdivision(sigma, values, extra).refined.maximal_key() == sub.maximal_key()
    except (UnattainableValue, DomainMismatch):
        induced = False
    rays = sub.refined.ray_ids() == sigma.ray_ids() | sigma0_sub.refined.ray_ids()
    edges = {c.vertices for c in sub.refined.cones_of_dim(1)}
    expected = {c.vertices for c in sigma.cones_of_dim(1)} | {c.vertices for c in sigma0_sub.refined.cones_of_dim(1)}
    restricted = sub.restrict(sigma0)
    return {
        "simplicial": sub.refined.is_simplicial(),
        "induced": induced,
        "restriction": restricted.refined.maximal_key() == sigma0_sub.maximal_key()
        and restricted.refined.cones == sigma0_sub.refined.cones,
        "skeleton1": rays and edges == expected,
    }


def trivial_conical_subdivision(sigma: ConicalComplex) -> ConicalSubdivision:
    return ConicalSubdivision(sigma, sigma, {c: c for c in sigma.cones})


def conical_regularity(sigma: ConicalComplex, h: SlicingFunction, sub: ConicalSubdivision):
    """Regularity of a conical subdivision, decided on the slice by ``h``."""
    delta = slice(sigma, h)
    compact, _ = _slice_subdivision(sub, h, delta)
    return is_regular(delta, compact)
