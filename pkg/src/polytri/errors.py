"""Exception hierarchy shared by all modules."""


class PolytriError(Exception):
    """Base class for every error raised by polytri."""


class DimensionMismatch(PolytriError):
    pass


class NotIntersectionClosed(PolytriError):
    def __init__(self, first, second, message=None):
        self.cells = (first, second)
        super().__init__(message or f"cells {sorted(map(str, first))} and {sorted(map(str, second))} "
                         "do not meet in a common face")


class RedundantVertex(PolytriError):
    def __init__(self, vertex, cell):
        self.vertex = vertex
        self.cell = cell
        super().__init__(f"vertex {vertex!r} is not a vertex of the hull of cell {sorted(map(str, cell))}")


class DegenerateInput(PolytriError):
    pass


class NotPure(PolytriError):
    pass


class NotComplete(PolytriError):
    """A candidate does not cover its parent; ``witness`` is an uncovered point if one was found."""

    def __init__(self, cell, missing, witness=None):
        self.cell = cell
        self.missing_volume = missing
        self.witness = witness
        super().__init__(f"cell {sorted(map(str, cell))} is not covered (missing volume {missing}, "
                         f"witness {witness})")


class CellNotContained(PolytriError):
    def __init__(self, cell):
        self.cell = cell
        super().__init__(f"cell {sorted(map(str, cell))} lies in no cell of the parent complex")


class DomainMismatch(PolytriError):
    pass


class NotConvexDown(PolytriError):
    def __init__(self, cell, point=None):
        self.cell = cell
        self.point = point
        super().__init__(f"lifting is not convex-down on cell {sorted(map(str, cell))}"
                         + (f" (at {point!r})" if point is not None else ""))


class UnattainableValue(PolytriError):
    """A prescribed value lies strictly below the upper hull of the other values.

    ``certificate`` is the affine function (coefficients, constant) of an upper
    facet, in the cell's chart, that exceeds the prescribed value at ``point``.
    """

    def __init__(self, point, value, hull_value, cell, certificate=None):
        self.point = point
        self.value = value
        self.hull_value = hull_value
        self.cell = cell
        self.certificate = certificate
        where = f"the hull value {hull_value}" if hull_value is not None else "the upper hull"
        super().__init__(f"value {value} at {point!r} lies below {where}")


class NotSubcomplex(PolytriError):
    pass


class RestrictionMismatch(PolytriError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"restriction of the extension differs from the input at {witness!r}")


class GenericityExhausted(PolytriError):
    pass


class InputNotSimplicial(PolytriError):
    pass


class InputNotInduced(PolytriError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class TooLarge(PolytriError):
    pass


class NotSlicing(PolytriError):
    pass


class NoSlicingFunction(PolytriError):
    pass


class NotSimplicial(PolytriError):
    pass


class NonPositiveMultiplier(PolytriError):
    pass


class IncompatibleSubdivision(PolytriError):
    pass


class BoundaryNotIndexOne(PolytriError):
    def __init__(self, cone, index):
        self.cone = cone
        self.index = index
        super().__init__(f"cone {list(cone)} has index {index}, expected 1")


class BoundaryNotInduced(PolytriError):
    pass


class SearchExhausted(PolytriError):
    pass


class NotPointed(PolytriError):
    pass
