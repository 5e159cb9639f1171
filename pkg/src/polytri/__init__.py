"""Exact regular subdivisions, triangulation extension and combinatorial semistable reduction."""

from .complex import (
    Cell,
    IntegralStructure,
    PolyComplex,
    Subdivision,
    boundary,
    build_complex,
    is_subdivision,
    skeleton,
    trivial_subdivision,
)
from .conical import (
    ConicalComplex,
    ConicalSubdivision,
    Ray,
    SlicingFunction,
    build_conical,
    cone_over,
    extend_conical_triangulation,
    find_slicing_function,
    induced_conical_subdivision,
    is_homogeneous_lifting,
    slice,
)
from .errors import *  # noqa: F401,F403
from .hull import upper_hull
from .lifting import (
    PLLifting,
    VerticialLifting,
    explicit_epsilon,
    induced_subdivision,
    minimal_extension,
    refine_by,
    restrict,
)
from .semistable import (
    ConicalMorphism,
    EdgeData,
    OrthantBase,
    SemistabilityReport,
    base_change,
    check_nearly_semistable,
    cone_index,
    generated_lattice,
    orthant,
    preimage_skeleton,
    weak_to_nearly_semistable,
)
from .triangulation import (
    NonRegularityWitness,
    RegularityCertificate,
    enumerate_triangulations,
    extend_triangulation,
    generic_simplicial_lifting,
    is_regular,
    is_simplicial,
    stability_radius,
)

__version__ = "0.1.0"
