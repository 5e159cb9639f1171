"""Combinatorial semistable reduction over an orthant base.

A :class:`ConicalMorphism` is linear on each cone of its source and maps it
into the nonnegative orthant.  Lattices enter through cone indices: every
cone ``sigma`` of the source is measured against ``N cap span(sigma) cap
M_sigma^{-1}(N_B1)``, where ``N`` is the source lattice and ``N_B1`` the
target lattice after base change.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ._linalg import (
    common_denominator,
    det,
    image_lattice,
    integer_kernel,
    lattice_preimage,
    matmul,
    matvec,
    nullspace,
    primitive_integer,
    rank,
    solve,
    to_fraction,
    transpose,
)
from .complex import Cell, IntegralStructure, cell_key, sorted_ids
from .conical import (
    ConicalComplex,
    ConicalSubdivision,
    SlicingFunction,
    build_conical,
    conical_carriers,
    extend_conical_triangulation,
    induced_conical_subdivision,
    slice,
)
from .errors import (
    BoundaryNotIndexOne,
    BoundaryNotInduced,
    DomainMismatch,
    IncompatibleSubdivision,
    NonPositiveMultiplier,
    NotSimplicial,
    NotSlicing,
    SearchExhausted,
    UnattainableValue,
)
from .lifting import VerticialLifting
from .triangulation import RegularityCertificate, enumerate_triangulations, is_regular

__all__ = [
    "EdgeData",
    "ConicalMorphism",
    "OrthantBase",
    "SemistabilityReport",
    "base_change",
    "check_nearly_semistable",
    "cone_index",
    "generated_lattice",
    "index_one_search",
    "orthant",
    "preimage_skeleton",
    "pullback_slicing",
    "weak_to_nearly_semistable",
]


def generated_lattice(generators: Sequence[Sequence]) -> IntegralStructure:
    """Integral structure generated by a (possibly redundant) full-rank set of vectors."""
    basis = image_lattice([tuple(to_fraction(x) for x in g) for g in generators])
    if len(basis) != len(generators[0]):
        raise ValueError("generators do not span the ambient space")
    return IntegralStructure(tuple(basis))


def _sublattice(integral: IntegralStructure, vectors: Sequence[Sequence],
                extra: Sequence[Sequence] | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of ``N cap span(vectors)``, further cut by ``{x : extra @ x integral}``."""
    n = integral.dim
    coords = [integral.coordinates(v) for v in vectors]
    # integer rows whose common kernel is the span (in lattice coordinates)
    perp = nullspace(coords, n) if coords else [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    rows = [[int(x * common_denominator(p)) for x in p] for p in perp]
    if rows:
        ker = integer_kernel(rows, n)
    else:
        ker = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    basis = [tuple(sum(Fraction(z[k]) * integral.lattice_basis[k][i] for k in range(n)) for i in range(n))
             for z in ker]
    if extra and basis:
        # restrict to {sum a_j b_j : extra @ (sum a_j b_j) integral}
        images = transpose([matvec(extra, b) for b in basis])
        keep = lattice_preimage(images, len(basis))
        basis = [tuple(sum(Fraction(a[j]) * basis[j][i] for j in range(len(basis))) for i in range(n))
                 for a in keep]
    return basis


def _coordinates_in(basis: Sequence[Sequence], x: Sequence) -> tuple[Fraction, ...]:
    sol = solve(transpose(basis), list(x))
    if sol is None:
        raise ValueError("vector outside the lattice span")
    return sol


def primitive_in(basis: Sequence[Sequence], x: Sequence) -> tuple[Fraction, ...]:
    """First nonzero point of the lattice spanned by ``basis`` on the ray through ``x``."""
    z = _coordinates_in(basis, x)
    den = common_denominator(z)
    prim = primitive_integer([c * den for c in z])
    return tuple(sum(Fraction(k) * b[i] for k, b in zip(prim, basis)) for i in range(len(x)))


def cone_index(generators: Sequence[Sequence], lattice: IntegralStructure,
               extra: Sequence[Sequence] | None = None) -> int:
    """Index of the simplicial cone spanned by ``generators``.

    ``|det|`` of the primitive generators written in a basis of the lattice
    ``N cap span``; ``extra`` optionally cuts the lattice further to the
    points mapped to integral vectors by that matrix.
    """
    gens = [tuple(to_fraction(x) for x in g) for g in generators]
    if not gens:
        return 1
    if rank(gens) != len(gens):
        raise NotSimplicial(f"{len(gens)} generators span a cone of dimension {rank(gens)}")
    basis = _sublattice(lattice, gens, extra)
    prims = [primitive_in(basis, g) for g in gens]
    return abs(int(det([_coordinates_in(basis, p) for p in prims])))


# -- base and morphisms ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OrthantBase:
    """The nonnegative orthant with lattice ``prod Z k_i e_i``; rays are named 1..n."""

    n: int
    multipliers: tuple[int, ...]
    complex: ConicalComplex

    @property
    def lattice(self) -> IntegralStructure:
        return IntegralStructure(tuple(tuple(Fraction(k * int(i == j)) for i in range(self.n))
                                       for j, k in enumerate(self.multipliers)))

    def lattice_matrix_inverse(self) -> list[list[Fraction]]:
        """``diag(1/k_i)``: a point ``y`` is in the lattice iff this times ``y`` is integral."""
        return [[Fraction(int(i == j), self.multipliers[i]) for j in range(self.n)] for i in range(self.n)]

    def edge(self, i: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(int(j == i - 1)) for j in range(self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, OrthantBase) and (self.n, self.multipliers) == (other.n, other.multipliers)

    def __hash__(self) -> int:
        return hash((self.n, self.multipliers))


def orthant(n: int, multipliers: Sequence[int] | None = None) -> OrthantBase:
    ks = tuple(int(k) for k in (multipliers or [1] * n))
    if len(ks) != n:
        raise ValueError("one multiplier per coordinate")
    if any(k <= 0 for k in ks):
        raise NonPositiveMultiplier(f"multipliers must be positive integers, got {ks}")
    rays = {i + 1: tuple(int(j == i) for j in range(n)) for i in range(n)}
    sigma = build_conical(rays, [list(rays)], check=False)
    return OrthantBase(n, ks, sigma)


def _edge_of(image: Sequence) -> int | None:
    """0 for the origin, i for a positive multiple of e_i, None otherwise."""
    nz = [i for i, x in enumerate(image) if x != 0]
    if not nz:
        return 0
    if len(nz) == 1 and image[nz[0]] > 0:
        return nz[0] + 1
    return None


class ConicalMorphism:
    """A map from ``source`` to an orthant, linear on each maximal cone.

    ``matrices`` maps each maximal cone (as a ray-id set) to an ``n x m``
    matrix; a single matrix may be given for a globally linear map.
    """

    def __init__(self, source: ConicalComplex, target: OrthantBase, matrices):
        self.source = source
        self.target = target
        if isinstance(matrices, Mapping):
            self.matrices = {frozenset(k): [[to_fraction(x) for x in row] for row in m]
                             for k, m in matrices.items()}
            self.linear = None
        else:
            m = [[to_fraction(x) for x in row] for row in matrices]
            self.linear = m
            self.matrices = {c.vertices: m for c in source.maximal_cones()}
        self._validate()

    def _validate(self) -> None:
        src, n = self.source, self.target.n
        for top in src.maximal_cones():
            m = self.matrices.get(top.vertices)
            if m is None:
                raise DomainMismatch(f"no matrix for cone {sorted_ids(top.vertices)}")
            if len(m) != n or any(len(row) != src.ambient_dim for row in m):
                raise DomainMismatch("matrix shape does not match source and target")
        for r in src.rays:
            images = {matvec(self.matrix_of(top), src.generator(r))
                      for top in src.maximal_cones() if r in top.vertices}
            if len(images) > 1:
                raise DomainMismatch(f"cone maps disagree on ray {r!r}")
            for img in images:
                if any(x < 0 for x in img):
                    raise DomainMismatch(f"ray {r!r} maps outside the orthant")
        # lattice-respecting against the base lattice N_B = Z^n
        for top in src.maximal_cones():
            basis = _sublattice(src.integral, [src.generator(r) for r in top.vertices])
            for b in basis:
                if any(Fraction(x).denominator != 1 for x in matvec(self.matrix_of(top), b)):
                    raise DomainMismatch(f"cone {sorted_ids(top.vertices)} does not respect the lattices")
        full = any(rank([matvec(self.matrix_of(t), src.generator(r)) for r in t.vertices]) == n
                   for t in src.maximal_cones())
        if not full:
            raise DomainMismatch("the image is not full-dimensional (map is not dominant)")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConicalMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.matrices == other.matrices)

    def __hash__(self) -> int:
        return hash((self.source, self.target))

    def matrix_of(self, cone: Cell) -> list[list[Fraction]]:
        for top in self.source.maximal_cones():
            if cone.vertices <= top.vertices:
                return self.matrices[top.vertices]
        raise KeyError(cone)

    def image_of_ray(self, r) -> tuple[Fraction, ...]:
        return matvec(self.matrix_of(self.source.cone([r])), self.source.generator(r))

    def cone_lattice(self, cone: Cell) -> list[tuple[Fraction, ...]]:
        """Basis of ``N cap span(cone) cap M^{-1}(N_B1)``."""
        gens = [self.source.generator(r) for r in sorted_ids(cone.vertices)]
        extra = matmul(self.target.lattice_matrix_inverse(), self.matrix_of(cone))
        return _sublattice(self.source.integral, gens, extra)

    def index(self, cone: Cell, complex_: ConicalComplex | None = None) -> int:
        """Index of a simplicial cone of ``complex_`` (default: the source)."""
        complex_ = complex_ or self.source
        gens = [complex_.generator(r) for r in sorted_ids(cone.vertices)]
        if not gens:
            return 1
        if rank(gens) != len(gens):
            raise NotSimplicial(f"cone {sorted_ids(cone.vertices)} is not simplicial")
        basis = self._lattice_for(gens, complex_, cone)
        prims = [primitive_in(basis, g) for g in gens]
        return abs(int(det([_coordinates_in(basis, p) for p in prims])))

    def _lattice_for(self, gens, complex_, cone):
        home = self._home(complex_, cone)
        extra = matmul(self.target.lattice_matrix_inverse(), self.matrix_of(home))
        return _sublattice(self.source.integral, gens, extra)

    def _home(self, complex_: ConicalComplex, cone: Cell) -> Cell:
        if complex_ is self.source or complex_ == self.source:
            return cone
        gens = [complex_.generator(r) for r in cone.vertices]
        if not gens:
            return cone
        mid = tuple(sum(c) for c in zip(*gens))
        home = self.source.carrier_of_point(mid)
        if home is None:
            raise IncompatibleSubdivision(f"cone {sorted_ids(cone.vertices)} leaves the source")
        return home

    def map_point(self, x: Sequence, complex_: ConicalComplex | None = None) -> tuple[Fraction, ...]:
        home = self.source.carrier_of_point(x)
        if home is None:
            raise DomainMismatch("point outside the source support")
        return matvec(self.matrix_of(home), x)

    def with_source(self, source: ConicalComplex) -> "ConicalMorphism":
        """The same map on a subdivision (or re-latticed copy) of the source."""
        if self.linear is not None:
            return ConicalMorphism(source, self.target, self.linear)
        mats = {}
        for top in source.maximal_cones():
            mats[top.vertices] = self.matrix_of(self._home(source, top))
        return ConicalMorphism(source, self.target, mats)


def base_change(f: ConicalMorphism, k: Sequence[int]) -> ConicalMorphism:
    """Replace the base lattice by ``prod Z k_i e_i`` and the source lattice by its preimage.

    For a globally linear map the new source lattice is ``N cap
    M^{-1}(N_B1)``; for a piecewise map the per-cone lattices are cut the same
    way on demand (see :meth:`ConicalMorphism.cone_lattice`).
    """
    ks = tuple(k)
    if len(ks) != f.target.n:
        raise ValueError("one multiplier per base coordinate")
    if any((not isinstance(x, int)) or x <= 0 for x in ks):
        raise NonPositiveMultiplier(f"multipliers must be positive integers, got {ks}")
    total = tuple(a * b for a, b in zip(f.target.multipliers, ks))
    target = orthant(f.target.n, total)
    src = f.source
    if f.linear is not None:
        extra = matmul(target.lattice_matrix_inverse(), f.linear)
        basis = _sublattice(src.integral, [tuple(Fraction(int(i == j)) for i in range(src.ambient_dim))
                                            for j in range(src.ambient_dim)], extra)
        integral = IntegralStructure(tuple(basis))
        if _same_lattice(integral, src.integral):
            integral = src.integral
        rays = {r: src.generator(r) for r in src.rays}
        src = build_conical(rays, [c.vertices for c in src.maximal_cones()], integral, check=False)
    if f.linear is not None:
        return ConicalMorphism(src, target, f.linear)
    return ConicalMorphism(src, target, {c.vertices: f.matrix_of(c) for c in src.maximal_cones()})


def _same_lattice(a: IntegralStructure, b: IntegralStructure) -> bool:
    return all(Fraction(x).denominator == 1 for v in a.lattice_basis for x in b.coordinates(v)) and \
        all(Fraction(x).denominator == 1 for v in b.lattice_basis for x in a.coordinates(v))


def preimage_skeleton(f: ConicalMorphism) -> tuple[ConicalComplex, dict[int, ConicalComplex]]:
    """Cones over the 1-skeleton of the orthant, and the preimage of each edge."""
    src = f.source
    over: dict[int, list] = {i: [] for i in range(1, f.target.n + 1)}
    for cone in src.cones:
        edges = {_edge_of(f.image_of_ray(r)) for r in cone.vertices}
        edges.discard(0)
        if None in edges or len(edges) > 1:
            continue
        if not edges:
            for i in over:
                over[i].append(cone.vertices)
        else:
            over[edges.pop()].append(cone.vertices)
    pieces = {i: src.subcomplex(cs) if cs else src.subcomplex([frozenset()]) for i, cs in over.items()}
    everything = [c for cs in over.values() for c in cs] or [frozenset()]
    return src.subcomplex(everything), pieces


# -- verification ------------------------------------------------------------------

@dataclass(frozen=True)
class SemistabilityReport:
    equidimensional: bool
    reduced: bool
    codim1_semistable: bool
    simplicial: bool
    base_nonsingular: bool
    all_maximal_index_one: bool
    verdict: str
    witnesses: Mapping = field(default_factory=dict)

    @property
    def nearly_semistable(self) -> bool:
        return self.verdict in ("nearly_semistable", "semistable")

    @property
    def semistable(self) -> bool:
        return self.verdict == "semistable"

    def summary(self) -> str:
        yes = {True: "yes", False: "no"}
        return f"nearly semistable: {yes[self.nearly_semistable]}; semistable: {yes[self.semistable]}"


def check_nearly_semistable(f: ConicalMorphism, sub: ConicalSubdivision | ConicalComplex) -> SemistabilityReport:
    """Combinatorial nearly-semistable conditions for ``f`` on a subdivision of its source."""
    refined = sub.refined if isinstance(sub, ConicalSubdivision) else sub
    if isinstance(sub, ConicalSubdivision) and sub.parent != f.source:
        raise IncompatibleSubdivision("the subdivision does not refine the morphism's source")
    try:
        conical_carriers(refined, f.source)
    except Exception as exc:
        raise IncompatibleSubdivision(str(exc)) from exc
    witnesses: dict = {"equidimensional": [], "reduced": [], "codim1": [], "maximal": []}

    def image(r):
        home = f._home(refined, refined.cone([r]))
        return matvec(f.matrix_of(home), refined.generator(r))

    edge = {}
    for r in sorted_ids(refined.rays):
        e = _edge_of(image(r))
        edge[r] = e
        if e is None:
            witnesses["equidimensional"].append(r)
            continue
        if e == 0:
            continue
        basis = f._lattice_for([refined.generator(r)], refined, refined.cone([r]))
        prim = primitive_in(basis, refined.generator(r))
        img = matvec(f.matrix_of(f._home(refined, refined.cone([r]))), prim)
        if img != f.target.lattice.lattice_basis[e - 1]:
            witnesses["reduced"].append((r, img))
    simplicial = refined.is_simplicial()
    for cone in refined.cones:
        if not cone.vertices or not simplicial:
            continue
        edges = {edge[r] for r in cone.vertices} - {0}
        if None in edges or len(edges) > 1:
            continue
        idx = f.index(cone, refined)
        if idx != 1:
            witnesses["codim1"].append((sorted_ids(cone.vertices), idx))
    if simplicial:
        for cone in refined.maximal_cones():
            idx = f.index(cone, refined)
            if idx != 1:
                witnesses["maximal"].append((sorted_ids(cone.vertices), idx))
    base = f.target
    base_ok = cone_index([base.edge(i) for i in range(1, base.n + 1)], base.lattice) == 1
    equi = not witnesses["equidimensional"]
    reduced = not witnesses["reduced"]
    codim1 = simplicial and not witnesses["codim1"]
    all_one = simplicial and not witnesses["maximal"]
    nearly = equi and reduced and codim1 and simplicial and base_ok
    verdict = "semistable" if nearly and all_one else "nearly_semistable" if nearly else "neither"
    return SemistabilityReport(equi, reduced, codim1, simplicial, base_ok, all_one, verdict,
                               {k: tuple(v) for k, v in witnesses.items()})


def pullback_slicing(f: ConicalMorphism) -> SlicingFunction:
    """``h_B o f`` with ``h_B`` the coordinate sum; NotSlicing if some ray maps to the origin."""
    vals = {}
    for r in sorted_ids(f.source.rays):
        v = sum(f.image_of_ray(r))
        if v <= 0:
            raise NotSlicing(f"ray {r!r} lies in the fiber over the origin")
        vals[r] = v
    return SlicingFunction(vals)


@dataclass(frozen=True, eq=False)
class EdgeData:
    """An index-one simplicial subdivision of the preimage of one base edge, with its lifting."""

    subdivision: ConicalSubdivision
    lifting: Mapping


def _verify_edge(f1: ConicalMorphism, i: int, piece: ConicalComplex, data: EdgeData) -> None:
    sub = data.subdivision
    if sub.parent.maximal_key() != piece.maximal_key():
        raise BoundaryNotInduced(f"data for edge {i} does not subdivide its preimage")
    extra = {r: ray.generator for r, ray in sub.refined.rays.items() if r not in piece.rays}
    values = dict(data.lifting.values) if isinstance(data.lifting, VerticialLifting) else dict(data.lifting)
    try:
        induced = induced_conical_subdivision(piece, values, extra)
    except (UnattainableValue, DomainMismatch) as exc:
        raise BoundaryNotInduced(f"edge {i}: {exc}") from exc
    if induced.maximal_key() != sub.maximal_key():
        raise BoundaryNotInduced(f"edge {i}: the lifting does not induce the given subdivision")
    if not sub.refined.is_simplicial():
        raise BoundaryNotInduced(f"edge {i}: the subdivision is not simplicial")
    for cone in sorted(sub.refined.cones, key=lambda c: cell_key(c.vertices)):
        idx = f1.index(cone, sub.refined)
        if idx != 1:
            raise BoundaryNotIndexOne(sorted_ids(cone.vertices), idx)


def weak_to_nearly_semistable(f: ConicalMorphism, k: Sequence[int], boundary_data: Mapping[int, EdgeData],
                              strategy: str = "pulling", seed: int | None = 0):
    """Base change, assemble the edge triangulations, extend, and verify.

    ``boundary_data[i]`` must be an index-one, lifting-induced simplicial
    subdivision of the preimage of the i-th base edge (trivial data may be
    omitted when that preimage is already index one).  Returns the
    base-changed morphism on the new subdivision, the subdivision, and the
    report.
    """
    f1 = base_change(f, k)
    skel, pieces = preimage_skeleton(f1)
    data = {}
    for i, piece in pieces.items():
        d = boundary_data.get(i)
        if d is None:
            trivial = ConicalSubdivision(piece, piece, {c: c for c in piece.cones})
            d = EdgeData(trivial, {r: 0 for r in piece.rays})
        d = EdgeData(ConicalSubdivision(d.subdivision.refined, piece, d.subdivision.carrier), d.lifting)
        _verify_edge(f1, i, piece, d)
        data[i] = d

    rays, cones, values = {}, set(), {}
    for i in sorted(data):
        d = data[i]
        lv = dict(d.lifting.values) if isinstance(d.lifting, VerticialLifting) else dict(d.lifting)
        for r, ray in d.subdivision.refined.rays.items():
            if r in rays and rays[r] != ray.generator:
                raise BoundaryNotInduced(f"ray id {r!r} is used for two different rays")
            rays[r] = ray.generator
            if r in values and values[r] != to_fraction(lv[r]):
                raise BoundaryNotInduced(f"liftings disagree on the shared ray {r!r}")
            values[r] = to_fraction(lv[r])
        cones.update(c.vertices for c in d.subdivision.refined.maximal_cones())
    if not rays:
        assembled_complex = skel
    else:
        assembled_complex = build_conical(rays, cones, f1.source.integral)
    assembled = ConicalSubdivision(assembled_complex, skel, conical_carriers(assembled_complex, skel))
    values = {r: values.get(r, Fraction(0)) for r in assembled_complex.rays}

    h = pullback_slicing(f1)
    ext = extend_conical_triangulation(f1.source, h, skel, assembled, values, strategy, seed)
    report = check_nearly_semistable(f1, ext.subdivision)
    return f1, ext.subdivision, report


def index_one_search(f: ConicalMorphism, piece: ConicalComplex, h: SlicingFunction | None = None,
                     limit: int = 8) -> EdgeData:
    """Look for a regular index-one triangulation of ``piece`` on its existing rays.

    Exhaustive over triangulations of the slice (dimension at most 3).  May
    raise SearchExhausted: index-one subdivisions usually need new rays.
    """
    if piece.dim > 4:
        raise SearchExhausted("search is limited to cones of dimension at most 4")
    h = h or SlicingFunction({r: sum(f.image_of_ray(r)) or 1 for r in piece.rays})
    delta = slice(piece, h)
    if len(delta.vertices) > limit:
        raise SearchExhausted(f"{len(delta.vertices)} rays exceed the search limit {limit}")
    for tri in enumerate_triangulations(delta, limit=limit):
        cones = [c.vertices for c in tri.refined.maximal_cells()]
        refined = build_conical({r: piece.generator(r) for r in piece.rays}, cones, piece.integral, check=False)
        if any(f.index(c, refined) != 1 for c in refined.maximal_cones()):
            continue
        cert = is_regular(delta, tri)
        if not isinstance(cert, RegularityCertificate):
            continue
        values = {r: cert.lifting[r] * h[r] for r in piece.rays}
        sub = ConicalSubdivision(refined, piece, conical_carriers(refined, piece))
        return EdgeData(sub, values)
    raise SearchExhausted("no index-one triangulation on the existing rays")
