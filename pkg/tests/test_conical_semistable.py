"""Conical complexes, slicing, homogeneous liftings, lattice indices and semistable reduction."""

import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cases import compact, conical_cases
from polytri import fixtures
from polytri.complex import IntegralStructure
from polytri.conical import (ConicalSubdivision, SlicingFunction, build_conical, check_conical_extension,
                             conical_carriers, conical_regularity, cone_over, drop_last,
                             extend_conical_triangulation, find_slicing_function,
                             induced_conical_subdivision, is_homogeneous_lifting, slice, validate_slicing)
from polytri.errors import (BoundaryNotIndexOne, BoundaryNotInduced, DomainMismatch, NonPositiveMultiplier,
                            NotPointed, NotSlicing, SearchExhausted)
from polytri.lifting import VerticialLifting, induced_subdivision
from polytri.semistable import (ConicalMorphism, EdgeData, base_change, check_nearly_semistable, cone_index,
                                generated_lattice, index_one_search, orthant, preimage_skeleton,
                                weak_to_nearly_semistable)
from polytri.triangulation import NonRegularityWitness

HALF = Fraction(1, 2)


# -- conical complexes -------------------------------------------------------------------

def test_cone_over_square():
    sigma, h = cone_over(compact("square"))
    assert sigma.dim == 3
    assert len(sigma.maximal_cones()) == 1
    assert not sigma.is_simplicial()
    assert all(h[r] == 1 for r in sigma.rays)
    assert drop_last(slice(sigma, h)) == compact("square")


def test_orthant_faces():
    o = fixtures.build("orthant3")
    assert [len(o.cones_of_dim(k)) for k in range(4)] == [1, 3, 3, 1]
    assert o.is_simplicial()


def test_not_pointed():
    with pytest.raises(NotPointed):
        build_conical({1: (1, 0), 2: (-1, 0)}, [[1, 2]])
    with pytest.raises(NotPointed):
        build_conical({1: (0, 0)}, [[1]])


def test_slicing_function_checks():
    sigma, _ = cone_over(compact("square"))
    h = find_slicing_function(sigma)
    validate_slicing(sigma, h)
    with pytest.raises(NotSlicing):
        validate_slicing(sigma, SlicingFunction({r: (0 if r == "a" else 1) for r in sigma.rays}))
    # ray values not coming from one linear function on the square cone
    with pytest.raises(NotSlicing):
        validate_slicing(sigma, SlicingFunction({"a": 1, "b": 1, "c": 1, "d": 2}))


def test_primitive_generators():
    sigma = build_conical({1: (2, 4), 2: (HALF, 0)}, [[1, 2]])
    assert sigma.rays[1].primitive_generator == (1, 2)
    assert sigma.rays[2].primitive_generator == (1, 0)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["square", "pentagon", "prism", "cube", "two-squares", "hexagon-fan"]), st.data())
def test_homogeneous_matches_compact(name, data):
    delta = compact(name)
    c = {v: data.draw(st.integers(-4, 4)) for v in delta.vertices}
    sigma, _ = cone_over(delta)
    conical = induced_conical_subdivision(sigma, c)
    assert conical.maximal_key() == induced_subdivision(delta, VerticialLifting(c)).maximal_key()
    assert is_homogeneous_lifting(sigma, c)


def test_homogeneous_with_extra_ray():
    sigma, _ = cone_over(compact("square"))
    centre = (HALF, HALF, 1)
    values = dict.fromkeys("abcd", 0)
    assert is_homogeneous_lifting(sigma, {**values, "o": 1}, {"o": centre})
    assert not is_homogeneous_lifting(sigma, {**values, "o": -1}, {"o": centre})
    sub = induced_conical_subdivision(sigma, {**values, "o": 1}, {"o": centre})
    assert len(sub.refined.maximal_cones()) == 4


def test_twisted_prism_cone_is_not_regular():
    sigma, h = cone_over(fixtures.build("prism-boundary"))
    refined, _ = cone_over(fixtures.build("prism-twisted-boundary").refined)
    sub = ConicalSubdivision(refined, sigma, conical_carriers(refined, sigma))
    w = conical_regularity(sigma, h, sub)
    assert isinstance(w, NonRegularityWitness) and w.verify()


def test_conical_extension_with_non_canonical_slicing():
    label, sigma, _, sigma0, sub0, f0 = conical_cases()[0]
    h = SlicingFunction({r: 1 + sum(sigma.generator(r)[:-1]) for r in sigma.rays})
    values = {r: x * h[r] for r, x in f0.items()}
    ext = extend_conical_triangulation(sigma, h, sigma0, sub0, values)
    assert all(check_conical_extension(sigma, sigma0, sub0, ext).values())


def test_conical_extension_finds_slicing():
    label, sigma, _, sigma0, sub0, f0 = conical_cases()[1]
    ext = extend_conical_triangulation(sigma, None, sigma0, sub0, f0)
    assert all(check_conical_extension(sigma, sigma0, sub0, ext).values())
    with pytest.raises(DomainMismatch):
        extend_conical_triangulation(sigma, None, sigma0, sub0, {})


# -- lattices and indices -----------------------------------------------------------------

def test_cone_index_examples():
    z2 = IntegralStructure.standard(2)
    assert cone_index([(1, 0), (1, 2)], z2) == 2
    assert cone_index([(1, 0), (0, 1)], z2) == 1
    assert cone_index([(2, 0)], z2) == 1
    n_y = generated_lattice([(HALF,) * 4] + [tuple(int(i == j) for j in range(4)) for i in range(4)])
    assert cone_index([tuple(int(i == j) for j in range(4)) for i in range(4)], n_y) == 2


def _primitive(v):
    g = math.gcd(*v)
    return [x // g for x in v]


def _int_det(m):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = (-1) ** sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        total += sign * math.prod(m[i][perm[i]] for i in range(n))
    return total


unimodular = st.sampled_from([
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 2], [0, 1, -1], [0, 0, 1]],
    [[0, 1, 0], [1, 0, 0], [0, 0, -1]], [[2, 1, 0], [1, 1, 0], [0, 3, 1]],
])
vec3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)


@settings(max_examples=100, deadline=None)
@given(st.lists(vec3, min_size=3, max_size=3), unimodular)
def test_cone_index_unimodular_invariance(gens, u):
    if _int_det(gens) == 0:
        return
    expected = abs(_int_det([_primitive(g) for g in gens]))
    z3 = IntegralStructure.standard(3)
    assert cone_index(gens, z3) == expected
    # move the generators and the lattice by the same unimodular map
    moved = [[sum(u[i][j] * g[j] for j in range(3)) for i in range(3)] for g in gens]
    basis = tuple(tuple(u[i][j] for i in range(3)) for j in range(3))
    assert cone_index(moved, IntegralStructure(basis)) == expected


# -- morphisms --------------------------------------------------------------------------------

def test_r4_to_r2_morphism():
    f = fixtures.build("r4-to-r2")
    report = check_nearly_semistable(f, f.source)
    assert report.verdict == "nearly_semistable"
    assert report.summary() == "nearly semistable: yes; semistable: no"
    assert report.witnesses["maximal"] == (([1, 2, 3, 4], 2),)
    assert base_change(f, (1, 1)) == f
    skel, pieces = preimage_skeleton(f)
    assert pieces[1].maximal_key() == {frozenset({1, 2})}
    assert pieces[2].maximal_key() == {frozenset({3, 4})}


def test_base_change_can_break_edges():
    f = fixtures.build("r4-to-r2")
    with pytest.raises(BoundaryNotIndexOne) as info:
        weak_to_nearly_semistable(f, (2, 2), {})
    assert info.value.index == 2


def test_doubling():
    d = fixtures.build("doubling")
    report = check_nearly_semistable(d, d.source)
    assert not report.reduced and report.verdict == "neither"
    f1, sub, report = weak_to_nearly_semistable(d, (2,), {})
    assert report.semistable
    assert f1.target.multipliers == (2,)


def test_identity_is_semistable():
    f = fixtures.build("identity-orthant")
    assert check_nearly_semistable(f, f.source).semistable


def test_morphism_validation():
    o = orthant(2)
    src = o.complex
    with pytest.raises(DomainMismatch):
        ConicalMorphism(src, o, [[1, 0], [0, -1]])
    with pytest.raises(DomainMismatch):
        ConicalMorphism(src, o, [[1, 1], [0, 0]])
    with pytest.raises(DomainMismatch):
        ConicalMorphism(src, o, [[HALF, 0], [0, 1]])
    with pytest.raises(NonPositiveMultiplier):
        orthant(2, [1, 0])
    with pytest.raises(NonPositiveMultiplier):
        base_change(fixtures.build("identity-orthant"), (1, -1))


def test_piecewise_morphism_not_reduced():
    s = build_conical({1: (1, 0), 2: (1, 1), 3: (0, 1)}, [[1, 2], [2, 3]])
    p = ConicalMorphism(s, orthant(1), [[1, 1]])
    report = check_nearly_semistable(p, s)
    assert report.equidimensional and not report.reduced
    assert report.witnesses["reduced"] == ((2, (2,)),)


def _index_two_edge():
    n = generated_lattice([(HALF, HALF, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    s = build_conical({1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1)}, [[1, 2, 3]], n)
    f = ConicalMorphism(s, orthant(2), [[1, 1, 0], [0, 0, 1]])
    piece = preimage_skeleton(f)[1][1]
    refined = build_conical({1: (1, 0, 0), 2: (0, 1, 0), "w": (HALF, HALF, 0)}, [[1, "w"], ["w", 2]], n)
    return f, piece, ConicalSubdivision(refined, piece, conical_carriers(refined, piece))


def test_reduction_with_edge_data():
    f, piece, sub = _index_two_edge()
    report = check_nearly_semistable(f, f.source)
    assert not report.codim1_semistable
    f1, result, report = weak_to_nearly_semistable(f, (1, 1), {1: EdgeData(sub, {1: 0, 2: 0, "w": 1})})
    assert report.semistable
    assert result.refined.maximal_key() == {frozenset({1, 3, "w"}), frozenset({2, 3, "w"})}


def test_reduction_rejects_bad_edge_data():
    f, piece, sub = _index_two_edge()
    with pytest.raises(BoundaryNotIndexOne):
        weak_to_nearly_semistable(f, (1, 1), {})
    with pytest.raises(BoundaryNotInduced):
        weak_to_nearly_semistable(f, (1, 1), {1: EdgeData(sub, {1: 0, 2: 0, "w": -1})})
    # the index-one subdivision needs the new ray, so a search on the old rays fails
    with pytest.raises(SearchExhausted):
        index_one_search(f, piece)


def test_index_one_search_success():
    s = build_conical({1: (1, 0), 2: (1, 1), 3: (0, 1)}, [[1, 2], [2, 3]])
    p = ConicalMorphism(s, orthant(1), [[1, 1]])
    data = index_one_search(p, preimage_skeleton(p)[1][1])
    assert data.subdivision.refined.is_simplicial()
