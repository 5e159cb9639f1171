"""Triangulations: genericity, stability, regularity and extension."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import lp
from ._linalg import affine_coordinates, affine_dim, det, nullspace, to_fraction
from .complex import (
    PolyComplex,
    Subdivision,
    build_complex,
    carriers,
    cell_key,
    sorted_ids,
    trivial_subdivision,
)
from .errors import (
    DomainMismatch,
    GenericityExhausted,
    InputNotInduced,
    InputNotSimplicial,
    NotSubcomplex,
    RestrictionMismatch,
    TooLarge,
    UnattainableValue,
)
from .hull import project
from .lifting import (
    PLLifting,
    VerticialLifting,
    _affine_basis,
    combined_lifting,
    explicit_epsilon,
    induced_subdivision,
    minimal_extension,
    refine_by,
    restrict,
)

__all__ = [
    "ExtensionResult",
    "FoldConstraint",
    "NonRegularityWitness",
    "RegularityCertificate",
    "degeneracy_determinants",
    "enumerate_triangulations",
    "extend_triangulation",
    "generic_simplicial_lifting",
    "is_regular",
    "is_simplicial",
    "stability_radius",
]


def is_simplicial(x) -> bool:
    """True iff every cell is a simplex."""
    complex_ = x.refined if isinstance(x, Subdivision) else x
    return complex_.is_simplicial()


# -- genericity ---------------------------------------------------------------

def random_lifting(complex_: PolyComplex, rng: random.Random, denominator: int = 10**4) -> VerticialLifting:
    return VerticialLifting({
        v: Fraction(rng.randint(-denominator, denominator), rng.randint(1, denominator))
        for v in sorted_ids(complex_.vertices)
    })


def pulling_lifting(complex_: PolyComplex, order: Sequence | None = None) -> tuple[VerticialLifting, Subdivision]:
    """Pull the vertices in ``order``; returns one lifting inducing the result.

    Each step refines the current subdivision by the indicator lifting of
    the next vertex; the single verticial lifting is accumulated with the
    step sizes from :func:`explicit_epsilon`.
    """
    if order is None:
        order = sorted_ids(complex_.vertices)
    acc = VerticialLifting({v: 0 for v in complex_.vertices})
    current = trivial_subdivision(complex_)
    for v in order:
        pull = VerticialLifting({w: int(w == v) for w in current.refined.vertices})
        eps = explicit_epsilon(complex_, acc, pull)
        current = refine_by(current, pull)
        acc = VerticialLifting({w: acc[w] + eps * pull[w] for w in complex_.vertices})
    return acc, current


def generic_simplicial_lifting(
    complex_: PolyComplex,
    strategy: str = "pulling",
    *,
    order: Sequence | None = None,
    seed: int | None = 0,
    denominator: int = 10**4,
    max_tries: int = 64,
) -> VerticialLifting:
    """A verticial lifting inducing a triangulation of ``complex_``.

    ``strategy="pulling"`` is deterministic; ``"random"`` samples values with
    bounded denominators until the induced subdivision is simplicial.
    """
    if strategy == "pulling":
        lifting, sub = pulling_lifting(complex_, order)
        if not sub.refined.is_simplicial():
            raise AssertionError("pulling every vertex must give a triangulation")
        return lifting
    if strategy != "random":
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        c = random_lifting(complex_, rng, denominator)
        if induced_subdivision(complex_, c).refined.is_simplicial():
            return c
    raise GenericityExhausted(f"no simplicial lifting in {max_tries} draws")


def degeneracy_determinants(complex_: PolyComplex, subdivision: Subdivision, lifting: VerticialLifting) -> list[Fraction]:
    """For each non-simplicial cell, the determinant of d+2 of its lifted points.

    Lifted points of one cell lie on a common hyperplane, so every such
    determinant vanishes; the determinant is linear in the lifting values.
    """
    out = []
    refined = subdivision.refined
    for cell in refined.cells:
        if cell.simplicial or cell.dim == 0:
            continue
        home = subdivision.carrier[cell]
        axes = complex_.chart(home)
        ids = cell.ordered()[: home.dim + 2]
        rows = [list(project(refined.point(v), axes)) + [lifting[v], 1] for v in ids]
        if len(rows) == home.dim + 2:
            out.append(det(rows))
        else:
            # fewer points than a full determinant needs: use the rank defect instead
            pts = [project(refined.point(v), axes) + (lifting[v],) for v in cell.ordered()]
            out.append(Fraction(affine_dim(pts) - cell.dim))
    return out


# -- stability ------------------------------------------------------------------

def stability_radius(complex_: PolyComplex, c: VerticialLifting) -> Fraction:
    """A radius within which every perturbation of ``c`` refines ``Delta_c``.

    For ``||c' - c||_2 < radius`` the subdivision induced by ``c'`` refines the
    one induced by ``c``, and equals it when the latter is simplicial.  Each
    strict fold ``slack = l_tau(w) - c_w`` can move by at most
    ``||delta||_inf * (1 + sum |lambda|)``, where ``lambda`` are the affine
    coordinates of ``w`` on a simplex of ``tau``.
    """
    sub = induced_subdivision(complex_, c)
    best = None
    for top in complex_.maximal_cells():
        pts = top.ordered()
        for tau in sub.cells_in(top):
            if tau.dim != top.dim:
                continue
            others = [w for w in pts if w not in tau.vertices]
            if not others:
                continue
            ids = tau.ordered()
            for simplex in itertools.combinations(ids, top.dim + 1):
                base = [complex_.point(v) for v in simplex]
                if affine_dim(base) != top.dim:
                    continue
                for w in others:
                    lam = affine_coordinates(base, complex_.point(w))
                    slack = sum((t * c[v] for t, v in zip(lam, simplex)), Fraction(0)) - c[w]
                    r = slack / (1 + sum(abs(t) for t in lam))
                    if best is None or r < best:
                        best = r
    return Fraction(1) if best is None else best


# -- regularity -------------------------------------------------------------------

@dataclass(frozen=True)
class FoldConstraint:
    """``sum coefficients[v] * c_v  (==|>=)  rhs`` for one (parent, cell, point) triple."""

    parent: frozenset
    cell: frozenset
    point: object
    kind: str
    coefficients: Mapping
    rhs: Fraction
    multiplier: Fraction = Fraction(0)


@dataclass(frozen=True)
class RegularityCertificate:
    lifting: VerticialLifting
    margin: Fraction

    regular = True


@dataclass(frozen=True)
class NonRegularityWitness:
    infeasible_constraint_subset: tuple[FoldConstraint, ...]

    regular = False

    def verify(self) -> bool:
        """Exact Farkas check: the weighted constraints sum to ``0 >= positive``."""
        total: dict = {}
        rhs = Fraction(0)
        for con in self.infeasible_constraint_subset:
            if con.kind == "ge" and con.multiplier < 0:
                return False
            for v, a in con.coefficients.items():
                total[v] = total.get(v, Fraction(0)) + con.multiplier * a
            rhs += con.multiplier * con.rhs
        return all(x == 0 for x in total.values()) and rhs > 0


def fold_constraints(complex_: PolyComplex, sub: Subdivision) -> list[FoldConstraint]:
    """Linear constraints on vertex values whose feasibility means ``sub`` is induced."""
    refined = sub.refined
    out = []
    for top in complex_.maximal_cells():
        pts = sub.points_in(top)
        for tau in sub.cells_in(top):
            if tau.dim != top.dim:
                continue
            order = tau.ordered()
            basis = [order[i] for i in _affine_basis([refined.point(v) for v in order])]
            base_pts = [refined.point(v) for v in basis]
            for w in pts:
                if w in basis:
                    continue
                lam = affine_coordinates(base_pts, refined.point(w))
                coeffs = {v: t for v, t in zip(basis, lam) if t}
                coeffs[w] = coeffs.get(w, Fraction(0)) - 1
                inside = w in tau.vertices
                out.append(FoldConstraint(top.vertices, tau.vertices, w, "eq" if inside else "ge",
                                          coeffs, Fraction(0 if inside else 1)))
    return out


def is_regular(complex_: PolyComplex, sub: Subdivision) -> RegularityCertificate | NonRegularityWitness:
    """Decide whether some lifting induces exactly ``sub``.

    Solves, in exact arithmetic, for values ``c_w`` on the refined vertices
    such that every top cell's affine interpolant is attained on the cell and
    exceeds the value at every other point of the same parent cell by at
    least 1 (a margin of 1 loses nothing: the constraints are homogeneous).
    """
    if sub.parent != complex_:
        raise DomainMismatch("subdivision of a different complex")
    names = sorted_ids(sub.refined.vertices)
    index = {v: i for i, v in enumerate(names)}
    cons = fold_constraints(complex_, sub)
    eqs = [c for c in cons if c.kind == "eq"]
    ges = [c for c in cons if c.kind == "ge"]

    def row(con):
        r = [Fraction(0)] * len(names)
        for v, a in con.coefficients.items():
            r[index[v]] += a
        return r

    res = lp.solve_feasibility(len(names), [row(c) for c in eqs], [c.rhs for c in eqs],
                               [row(c) for c in ges], [c.rhs for c in ges])
    if res.feasible:
        values = dict(zip(names, res.solution))
        margin = min((sum(a * values[v] for v, a in c.coefficients.items()) for c in ges),
                     default=Fraction(1))
        return RegularityCertificate(VerticialLifting(values), margin)
    subset = []
    for con, y in list(zip(eqs, res.eq_multipliers)) + list(zip(ges, res.ge_multipliers)):
        if y:
            subset.append(FoldConstraint(con.parent, con.cell, con.point, con.kind,
                                         con.coefficients, con.rhs, y))
    return NonRegularityWitness(tuple(subset))


# -- exhaustive enumeration ---------------------------------------------------------

class _Circuits:
    """Signed minimal affine dependences among the vertices, computed lazily."""

    def __init__(self, coords: Mapping):
        self.coords = coords
        self.memo: dict = {}

    def of(self, ids: frozenset):
        if ids not in self.memo:
            order = sorted_ids(ids)
            rows = [[self.coords[v][k] for v in order] for k in range(len(self.coords[order[0]]))]
            rows.append([1] * len(order))
            ns = nullspace(rows, len(order))
            out = None
            if len(ns) == 1 and all(x != 0 for x in ns[0]):
                lam = ns[0]
                out = (frozenset(v for v, x in zip(order, lam) if x > 0),
                       frozenset(v for v, x in zip(order, lam) if x < 0))
            self.memo[ids] = out
        return self.memo[ids]

    def proper(self, s: frozenset, t: frozenset) -> bool:
        """Simplices ``s`` and ``t`` meet in a common face iff no circuit has Z+ in s and Z- in t."""
        union = sorted_ids(s | t)
        ambient = len(next(iter(self.coords.values())))
        for r in range(2, min(len(union), ambient + 2) + 1):
            for z in itertools.combinations(union, r):
                z = frozenset(z)
                if z <= s or z <= t:
                    continue
                circ = self.of(z)
                if circ is None:
                    continue
                pos, neg = circ
                if (pos <= s and neg <= t) or (neg <= s and pos <= t):
                    return False
        return True


def _candidates(complex_: PolyComplex):
    tops = complex_.maximal_cells()
    cands = []
    for top in tops:
        axes = complex_.chart(top)
        row = []
        for simplex in itertools.combinations(top.ordered(), top.dim + 1):
            vol = complex_.simplex_volume(simplex, axes)
            if vol:
                row.append((frozenset(simplex), vol))
        cands.append(row)
    totals = [complex_.volume(top) for top in tops]
    return tops, cands, totals


def _search(complex_: PolyComplex, prefix: tuple = ()) -> list[list[frozenset]]:
    tops, cands, totals = _candidates(complex_)
    circuits = _Circuits(dict(complex_.vertices))
    compat: dict = {}

    def ok(s, t):
        key = (s, t) if id(s) < id(t) else (t, s)
        if key not in compat:
            compat[key] = circuits.proper(s, t)
        return compat[key]

    found: list[list[frozenset]] = []

    def rec(ci: int, chosen: list, remaining: Fraction, start: int):
        if remaining == 0:
            ci, start = ci + 1, 0
            if ci == len(tops):
                found.append(list(chosen))
                return
            remaining = totals[ci]
        row = cands[ci]
        for k in range(start, len(row)):
            s, vol = row[k]
            if vol > remaining:
                continue
            if all(ok(s, t) for t in chosen):
                chosen.append(s)
                rec(ci, chosen, remaining - vol, k + 1)
                chosen.pop()

    if not tops:
        return [[]]
    if prefix:
        k = prefix[0]
        s, vol = cands[0][k]
        rec(0, [s], totals[0] - vol, k + 1)
    else:
        rec(0, [], totals[0], 0)
    return found


def _search_branch(args):
    vertices, cells, integral, k = args
    complex_ = PolyComplex(vertices, cells, integral)
    return [[sorted_ids(s) for s in tri] for tri in _search(complex_, (k,))]


def enumerate_triangulations(complex_: PolyComplex, jobs: int = 1, limit: int = 12) -> list[Subdivision]:
    """Every triangulation of ``complex_`` using exactly its vertices.

    Exhaustive: full-dimensional simplices on the vertices of each top cell
    are combined while pairwise intersections stay proper (checked through
    circuits of the vertex set) until their volumes fill the cell.
    """
    if len(complex_.vertices) > limit:
        raise TooLarge(f"{len(complex_.vertices)} vertices exceed the guard of {limit}")
    if jobs > 1 and complex_.maximal_cells():
        _, cands, _ = _candidates(complex_)
        args = [(dict(complex_.vertices), complex_.cells, complex_.integral, k) for k in range(len(cands[0]))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            raw = [tri for part in pool.map(_search_branch, args) for tri in part]
        found = [[frozenset(s) for s in tri] for tri in raw]
    else:
        found = _search(complex_)
    subs = []
    for tri in found:
        refined = build_complex(dict(complex_.vertices), tri, complex_.integral, check=False)
        subs.append(Subdivision(refined, complex_, carriers(refined, complex_)))
    subs.sort(key=lambda s: sorted(tuple(map(str, sorted_ids(c))) for c in s.maximal_key()))
    return subs


# -- extension --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ExtensionResult:
    """Output of :func:`extend_triangulation` with every intermediate step.

    ``lifting`` holds values on the vertices of ``subdivision.refined``; the
    PL function they define induces ``subdivision``.
    """

    subdivision: Subdivision
    lifting: VerticialLifting
    shift: Fraction
    extension: PLLifting
    intermediate: Subdivision
    generic: VerticialLifting
    epsilon: Fraction
    details: dict = field(default_factory=dict)


def _as_input_lifting(sub_complex: PolyComplex, sub: Subdivision, f0) -> PLLifting:
    """Interpret ``f0`` as a function on the subcomplex and check that it induces ``sub``."""
    if isinstance(f0, PLLifting):
        try:
            induced = induced_subdivision(sub_complex, f0)
        except Exception as exc:  # NotConvexDown, DomainMismatch
            raise InputNotInduced(str(exc)) from exc
        func = f0
    else:
        values = dict(f0.values)
        if set(values) != sub.refined.vertex_ids() and set(values) != sub_complex.vertex_ids():
            raise DomainMismatch("f0 must be given on the vertices of the triangulation")
        extra = {v: sub.refined.point(v) for v in values if v not in sub_complex.vertices}
        try:
            func = minimal_extension(sub_complex, values, extra)
        except UnattainableValue as exc:
            raise InputNotInduced(str(exc)) from exc
        induced = func.linearity
    if induced != sub:
        witness = is_regular(sub_complex, sub)
        raise InputNotInduced("the lifting does not induce the given subdivision",
                              witness if isinstance(witness, NonRegularityWitness) else None)
    return func


def extend_triangulation(
    complex_: PolyComplex,
    sub_complex: PolyComplex,
    sub_triangulation: Subdivision,
    f0,
    strategy: str = "pulling",
    seed: int | None = 0,
) -> ExtensionResult:
    """Extend a lifting-induced triangulation of a subcomplex to the whole complex.

    The result is induced by a lifting, restricts to ``sub_triangulation`` and
    has no vertices beyond those of ``complex_`` and ``sub_triangulation``.
    Steps: shift ``f0`` to be positive, extend it by zero to the remaining
    vertices through the minimal convex-down extension, then triangulate the
    resulting subdivision with a generic verticial lifting and compose the
    two liftings with an explicit epsilon.
    """
    if not sub_complex.is_subcomplex_of(complex_):
        raise NotSubcomplex("sub_complex is not a subcomplex")
    if sub_triangulation.parent != sub_complex:
        raise DomainMismatch("the triangulation must subdivide the given subcomplex")
    if not sub_triangulation.refined.is_simplicial():
        raise InputNotSimplicial("the subcomplex subdivision is not a triangulation")
    f0_pl = _as_input_lifting(sub_complex, sub_triangulation, f0)

    refined0 = sub_triangulation.refined
    base_values = {v: f0_pl(p) for v, p in refined0.vertices.items()}
    low = min(base_values.values(), default=Fraction(1))
    shift = Fraction(0) if low > 0 else 1 - low
    partial = {v: x + shift for v, x in base_values.items()}
    for v in complex_.vertices:
        partial.setdefault(v, Fraction(0))
    extra = {v: p for v, p in refined0.vertices.items() if v not in complex_.vertices}
    f = minimal_extension(complex_, partial, extra)

    back = restrict(f, sub_complex)
    if back.linearity != sub_triangulation:
        odd = [sorted_ids(c) for c in sorted(back.linearity.maximal_key() ^ sub_triangulation.maximal_key(), key=cell_key)]
        raise RestrictionMismatch(odd[0] if odd else None)
    for v, p in refined0.vertices.items():
        if f(p) != partial[v]:
            raise RestrictionMismatch(v)

    intermediate = f.linearity
    g = generic_simplicial_lifting(intermediate.refined, strategy, seed=seed)
    final = refine_by(intermediate, g)
    eps = explicit_epsilon(complex_, f, g)
    composed_sub, composed = combined_lifting(complex_, f, g, eps)
    if composed_sub != final:
        raise AssertionError("composition of liftings disagrees with the refinement")
    return ExtensionResult(final, composed, shift, f, intermediate, g, eps)


def check_extension(complex_: PolyComplex, sub_complex: PolyComplex, sub_triangulation: Subdivision,
                    result: ExtensionResult) -> dict[str, bool]:
    """The four defining properties of an extension, each checked independently."""
    final = result.subdivision
    expected = complex_.vertex_ids() | sub_triangulation.refined.vertex_ids()
    cert = is_regular(complex_, final)
    reproduced = induced_subdivision(complex_, PLLifting(final, result.lifting)) == final
    return {
        "simplicial": final.refined.is_simplicial(),
        "restriction": final.restrict(sub_complex) == sub_triangulation,
        "vertices": final.refined.vertex_ids() == expected,
        "regular": isinstance(cert, RegularityCertificate) and reproduced,
    }


def lifting_from_values(values: Mapping) -> VerticialLifting:
    return VerticialLifting({v: to_fraction(x) for v, x in values.items()})
