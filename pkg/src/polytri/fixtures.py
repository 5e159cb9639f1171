"""Named example objects, shipped as JSON documents.

``builders()`` constructs every fixture in Python; the JSON files in the
fixture directory are generated from them by :func:`write_all`.  Set
``POLYTRI_FIXTURES`` to read fixtures from another directory.
"""

from __future__ import annotations

import os
from fractions import Fraction
from pathlib import Path

from . import io
from .complex import IntegralStructure, boundary, build_complex, is_subdivision
from .conical import build_conical, cone_over, slice, SlicingFunction
from .lifting import VerticialLifting
from .semistable import ConicalMorphism, generated_lattice, orthant

ENV = "POLYTRI_FIXTURES"

SQUARE = {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1)}
PRISM = {
    "f00": (0, 0, 0), "f01": (1, 0, 0), "f02": (0, 1, 0),
    "f10": (0, 0, 1), "f11": (1, 0, 1), "f12": (0, 1, 1),
}
# the three inserted edges f00-f11, f01-f12, f02-f10 cut each square face
TWISTED_TRIANGLES = [
    ["f00", "f01", "f11"], ["f00", "f11", "f10"],
    ["f01", "f02", "f12"], ["f01", "f12", "f11"],
    ["f02", "f00", "f10"], ["f02", "f10", "f12"],
    ["f00", "f01", "f02"], ["f10", "f11", "f12"],
]
# diagonals f00-f11, f01-f12, f00-f12: all tilt the same way
STAIRCASE_TRIANGLES = [
    ["f00", "f01", "f11"], ["f00", "f11", "f10"],
    ["f01", "f02", "f12"], ["f01", "f12", "f11"],
    ["f02", "f00", "f12"], ["f00", "f10", "f12"],
    ["f00", "f01", "f02"], ["f10", "f11", "f12"],
]
STAIRCASE_VALUES = {"f00": 2, "f01": 1, "f02": 0, "f10": 0, "f11": 0, "f12": 0}


def square():
    return build_complex(SQUARE, [list(SQUARE)])


def square_edges():
    """The two opposite edges ab and cd of the square."""
    return square().subcomplex([["a", "b"], ["c", "d"]])


def segment():
    return build_complex({0: (0,), 1: (1,)}, [[0, 1]])


def triangle():
    return build_complex({0: (0, 0), 1: (1, 0), 2: (0, 1)}, [[0, 1, 2]])


def polygon(points):
    verts = dict(enumerate(points))
    return build_complex(verts, [list(verts)])


def pentagon():
    return polygon([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)])


def hexagon():
    return polygon([(0, 0), (2, 0), (3, 1), (2, 2), (0, 2), (-1, 1)])


def hexagon_fan():
    pts = [(0, 0), (2, 0), (3, 1), (2, 2), (0, 2), (-1, 1)]
    verts = dict(enumerate(pts))
    verts["o"] = (1, 1)
    return build_complex(verts, [[i, (i + 1) % 6, "o"] for i in range(6)])


def tetrahedron():
    return build_complex({0: (0, 0, 0), 1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1)}, [[0, 1, 2, 3]])


def cube():
    verts = {f"v{i & 1}{(i >> 1) & 1}{(i >> 2) & 1}": (i & 1, (i >> 1) & 1, (i >> 2) & 1) for i in range(8)}
    return build_complex(verts, [list(verts)])


def prism():
    return build_complex(PRISM, [list(PRISM)])


def prism_boundary():
    return boundary(prism())


def prism_twisted_boundary():
    refined = build_complex(PRISM, TWISTED_TRIANGLES)
    return is_subdivision(refined, prism_boundary())


def prism_staircase_boundary():
    refined = build_complex(PRISM, STAIRCASE_TRIANGLES)
    return is_subdivision(refined, prism_boundary())


def prism_staircase_lifting():
    return VerticialLifting(STAIRCASE_VALUES)


def glued_prisms():
    """Two prisms sharing a square face (together they fill the unit cube)."""
    verts = dict(PRISM)
    verts["g0"] = (1, 1, 0)
    verts["g1"] = (1, 1, 1)
    return build_complex(verts, [list(PRISM), ["f01", "f02", "f11", "f12", "g0", "g1"]])


def pyramid():
    verts = {"b0": (0, 0, 0), "b1": (2, 0, 0), "b2": (2, 2, 0), "b3": (0, 2, 0), "apex": (1, 1, 1)}
    return build_complex(verts, [list(verts)])


def octahedron():
    verts = {"+x": (1, 0, 0), "-x": (-1, 0, 0), "+y": (0, 1, 0), "-y": (0, -1, 0), "+z": (0, 0, 1), "-z": (0, 0, -1)}
    return build_complex(verts, [list(verts)])


def bipyramid():
    verts = {0: (0, 0, 0), 1: (2, 0, 0), 2: (0, 2, 0), "n": (1, 1, 2), "s": (0, 0, -2)}
    return build_complex(verts, [[0, 1, 2, "n"], [0, 1, 2, "s"]])


def two_squares():
    verts = {"a": (0, 0), "b": (1, 0), "c": (1, 1), "d": (0, 1), "e": (2, 0), "f": (2, 1)}
    return build_complex(verts, [["a", "b", "c", "d"], ["b", "e", "f", "c"]])


def l_shape():
    verts = {(x, y): (x, y) for x in range(3) for y in range(3) if not (x == 2 and y == 2)}
    verts = {f"p{x}{y}": p for (x, y), p in verts.items()}
    cells = [["p00", "p10", "p11", "p01"], ["p10", "p20", "p21", "p11"], ["p01", "p11", "p12", "p02"]]
    return build_complex(verts, cells)


def house():
    """A cube with a square pyramid on its top face."""
    verts = {f"v{i & 1}{(i >> 1) & 1}{(i >> 2) & 1}": (2 * (i & 1), 2 * ((i >> 1) & 1), 2 * ((i >> 2) & 1))
             for i in range(8)}
    verts["roof"] = (1, 1, 3)
    return build_complex(verts, [[v for v in verts if v != "roof"],
                                 ["v001", "v101", "v011", "v111", "roof"]])


def sliced_cone(points, functional):
    """The cone over a polygon, sliced back by a non-canonical linear slicing function."""
    sigma, _ = cone_over(polygon(points))
    h = SlicingFunction({r: sum(Fraction(u) * x for u, x in zip(functional, sigma.generator(r)))
                         for r in sigma.rays})
    return slice(sigma, h)


def sliced_square():
    return sliced_cone([(0, 0), (1, 0), (1, 1), (0, 1)], (1, 2, 1))


def sliced_pentagon():
    return sliced_cone([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)], (1, 1, 2))


def sliced_hexagon():
    return sliced_cone([(0, 0), (2, 0), (3, 1), (2, 2), (0, 2), (-1, 1)], (0, 1, 3))


def orthant3():
    return orthant(3).complex


def r4_to_r2():
    """(a, b, c, d) -> (a + b, c + d) on the orthant, source lattice generated by w and e_1..e_4."""
    half = Fraction(1, 2)
    lattice = generated_lattice([(half,) * 4] + [tuple(int(i == j) for j in range(4)) for i in range(4)])
    rays = {i + 1: tuple(int(j == i) for j in range(4)) for i in range(4)}
    source = build_conical(rays, [[1, 2, 3, 4]], lattice)
    return ConicalMorphism(source, orthant(2), [[1, 1, 0, 0], [0, 0, 1, 1]])


def doubling():
    """x -> 2x on the half-line."""
    source = build_conical({1: (1,)}, [[1]])
    return ConicalMorphism(source, orthant(1), [[2]])


def identity_orthant():
    return ConicalMorphism(orthant(2).complex, orthant(2), [[1, 0], [0, 1]])


COMPACT = {
    "segment": segment,
    "triangle": triangle,
    "square": square,
    "square-edges": square_edges,
    "pentagon": pentagon,
    "hexagon": hexagon,
    "hexagon-fan": hexagon_fan,
    "tetrahedron": tetrahedron,
    "cube": cube,
    "prism": prism,
    "prism-boundary": prism_boundary,
    "glued-prisms": glued_prisms,
    "pyramid": pyramid,
    "octahedron": octahedron,
    "bipyramid": bipyramid,
    "two-squares": two_squares,
    "l-shape": l_shape,
    "house": house,
    "sliced-square": sliced_square,
    "sliced-pentagon": sliced_pentagon,
    "sliced-hexagon": sliced_hexagon,
}


def builders() -> dict:
    out = dict(COMPACT)
    out.update({
        "prism-twisted-boundary": prism_twisted_boundary,
        "prism-staircase-boundary": prism_staircase_boundary,
        "prism-staircase-lifting": prism_staircase_lifting,
        "square-zero-lifting": lambda: VerticialLifting({v: 0 for v in SQUARE}),
        "square-fold-lifting": lambda: VerticialLifting({"a": -1, "b": 1, "c": -1, "d": 1}),
        "orthant3": orthant3,
        "cone-over-square": lambda: cone_over(square())[0],
        "cone-over-prism": lambda: cone_over(prism())[0],
        "r4-to-r2": r4_to_r2,
        "doubling": doubling,
        "identity-orthant": identity_orthant,
    })
    return out


def fixture_dir() -> Path:
    env = os.environ.get(ENV)
    return Path(env) if env else Path(__file__).with_name("fixtures")


def names() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.json"))


def path(name: str) -> Path:
    p = fixture_dir() / f"{name}.json"
    if not p.exists():
        raise FileNotFoundError(f"no fixture named {name!r} in {fixture_dir()}")
    return p


def load(name: str):
    return io.read(path(name))


def build(name: str):
    return builders()[name]()


def write_all(directory: Path | None = None) -> list[Path]:
    directory = Path(directory or Path(__file__).with_name("fixtures"))
    directory.mkdir(parents=True, exist_ok=True)
    return [io.write(make(), directory / f"{name}.json") for name, make in sorted(builders().items())]


if __name__ == "__main__":
    for p in write_all():
        print(p)
