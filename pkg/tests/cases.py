"""Shared inputs for the test modules: fixture lists and boundary-data builders."""

from __future__ import annotations

import random

from polytri import fixtures
from polytri.complex import boundary
from polytri.conical import ConicalSubdivision, conical_carriers, cone_over
from polytri.lifting import VerticialLifting, induced_subdivision
from polytri.triangulation import generic_simplicial_lifting, random_lifting

COMPACT = sorted(fixtures.COMPACT)
SMALL = [n for n in COMPACT if len(fixtures.build(n).vertices) <= 8]


def compact(name):
    return fixtures.build(name)


def boundary_data(complex_, strategy="pulling", seed=0, order=None, sub_complex=None):
    """A regular triangulation of ``sub_complex`` (default: the boundary) with its lifting."""
    sub_complex = boundary(complex_) if sub_complex is None else sub_complex
    c = generic_simplicial_lifting(sub_complex, strategy, order=order, seed=seed)
    return sub_complex, induced_subdivision(sub_complex, c), c


def extension_cases():
    """(label, complex, subcomplex, triangulation, lifting) for the extension suite."""
    out = []

    def add(label, name, **kw):
        c = compact(name)
        sub_complex, tri, f0 = boundary_data(c, **kw)
        out.append((label, c, sub_complex, tri, f0))

    for name in ["square", "cube", "prism", "glued-prisms", "pentagon", "hexagon", "pyramid",
                 "octahedron", "tetrahedron", "two-squares", "sliced-square", "sliced-pentagon",
                 "sliced-hexagon", "house"]:
        add(f"{name}/pulling", name)
    for name in ["square", "cube", "prism", "glued-prisms", "hexagon", "sliced-hexagon"]:
        add(f"{name}/random", name, strategy="random", seed=7)
    for name in ["cube", "prism", "pentagon"]:
        verts = sorted(compact(name).vertices, key=str, reverse=True)
        add(f"{name}/reverse-pull", name, order=verts)
    # the staircase boundary of the prism with its hand-made lifting
    prism = compact("prism")
    out.append(("prism/staircase", prism, fixtures.build("prism-boundary"),
                fixtures.build("prism-staircase-boundary"), fixtures.build("prism-staircase-lifting")))
    # a single facet of the cube as the subcomplex
    cube = compact("cube")
    face = cube.subcomplex([["v000", "v100", "v010", "v110"]])
    sub_complex, tri, f0 = boundary_data(cube, sub_complex=face, order=["v100"])
    out.append(("cube/one-face", cube, sub_complex, tri, f0))
    return out


def conical_cases():
    """(label, sigma, h, sigma0, sigma0 subdivision, homogeneous values) from cone_over."""
    out = []
    for name in ["square", "pentagon", "hexagon", "hexagon-fan", "triangle", "cube", "prism",
                 "glued-prisms", "pyramid", "octahedron", "two-squares", "l-shape"]:
        delta = compact(name)
        sub_complex, tri, c = boundary_data(delta)
        sigma, h = cone_over(delta)
        sigma0 = sigma.subcomplex([m.vertices for m in sub_complex.maximal_cells()])
        refined, _ = cone_over(tri.refined)
        sub0 = ConicalSubdivision(refined, sigma0, conical_carriers(refined, sigma0))
        out.append((name, sigma, h, sigma0, sub0, dict(c.values)))
    return out


def coarse_lifting(complex_, rng, levels=3):
    """Small integer values: usually gives non-simplicial subdivisions."""
    return VerticialLifting({v: rng.randrange(levels) for v in complex_.vertices})


def seeded(seed):
    return random.Random(seed)


__all__ = ["COMPACT", "SMALL", "boundary_data", "compact", "coarse_lifting", "conical_cases",
           "extension_cases", "random_lifting", "seeded"]
