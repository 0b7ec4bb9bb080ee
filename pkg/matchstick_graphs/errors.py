"""
Exception hierarchy for the Matchstick Graphs toolkit.

The CLI maps these onto exit codes, so every error a user can trigger
derives from MatchstickError.
"""


class MatchstickError(Exception):
    """Base class for all toolkit errors."""


# Geometry kernel

class GeometryError(MatchstickError):
    """A plane-geometry primitive received inputs it cannot handle."""


class NoIntersection(GeometryError):
    """Two circles do not meet."""

    def __init__(self, distance, r1, r2):
        self.distance = distance
        self.r1 = r1
        self.r2 = r2
        super().__init__(
            f"circles with radii {r1:g} and {r2:g} at distance {distance:.12g} do not intersect"
        )


class ConcentricDegenerate(GeometryError):
    """Two circles share their center."""

    def __init__(self):
        super().__init__("circles are concentric")


class DegenerateReference(GeometryError):
    """The reference point of an angle coincides with its base."""

    def __init__(self):
        super().__init__("reference point coincides with base point")


class InvalidAngle(GeometryError):
    """An angle outside the open interval (0, 360) degrees."""

    def __init__(self, angle):
        self.angle = angle
        super().__init__(f"angle must lie strictly between 0 and 360 degrees, got {angle!r}")


# Script parsing

class ScriptError(MatchstickError):
    """A construction script is malformed."""


class ScriptSyntaxError(ScriptError):
    """A line of a construction script cannot be parsed."""

    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class UnknownPoint(ScriptError):
    """A point is referenced before it is defined."""

    def __init__(self, point, line=None):
        self.point = point
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown point {point}{where}")


class DuplicatePoint(ScriptError):
    """A point id is defined twice."""

    def __init__(self, point, line=None):
        self.point = point
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"point {point} is already defined{where}")


class UndeclaredParameter(ScriptError):
    """A parameter name is used without a `param` declaration."""

    def __init__(self, name, line=None):
        self.name = name
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"undeclared parameter {name}{where}")


# Execution

class ConstructionError(MatchstickError):
    """A construction cannot be executed with the given parameters."""


class ApexInfeasible(ConstructionError):
    """The base of an isosceles apex step is longer than two units."""

    def __init__(self, step, separation):
        self.step = step
        self.separation = separation
        super().__init__(
            f"step {step}: apex base separation {separation:.12g} exceeds 2"
        )


class CopyAnchorMismatch(ConstructionError):
    """A copied point lands away from the existing point it maps onto."""

    def __init__(self, point, offset):
        self.point = point
        self.offset = offset
        super().__init__(
            f"copied image of {point} misses its existing target by {offset:.3e}"
        )


class ParameterOutOfRange(ConstructionError):
    """A parameter value lies outside its declared range."""

    def __init__(self, name, value, lo, hi):
        self.name = name
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(f"parameter {name}={value!r} outside range [{lo:g}, {hi:g}]")


class UnresolvedOrientation(ConstructionError):
    """A step still carries an undecided turn or side sign."""

    def __init__(self, step):
        self.step = step
        super().__init__(f"step {step} has an unresolved orientation")


class EdgeLengthMismatch(ConstructionError):
    """An explicit unit edge joins points that are not one unit apart."""

    def __init__(self, a, b, length):
        self.a = a
        self.b = b
        self.length = length
        super().__init__(f"edge {a}-{b} has length {length:.12g}, expected 1")


# Solving

class SolveError(MatchstickError):
    """Root finding or orientation calibration failed."""


class NoSignChange(SolveError):
    """The residual has the same sign at both ends of the bracket."""

    def __init__(self, lo, hi, f_lo, f_hi):
        self.lo = lo
        self.hi = hi
        self.f_lo = f_lo
        self.f_hi = f_hi
        super().__init__(
            f"no sign change on [{lo:.12g}, {hi:.12g}]: f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}"
        )


class MaxIterations(SolveError):
    """The root finder did not converge within its iteration cap."""

    def __init__(self, iterations, lo, hi):
        self.iterations = iterations
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"no convergence after {iterations} iterations, bracket [{lo:.15g}, {hi:.15g}]"
        )


class NoAssignmentFound(SolveError):
    """No orientation assignment produced a valid drawing."""

    def __init__(self, explored):
        self.explored = explored
        super().__init__(f"no orientation assignment accepted ({explored} search nodes explored)")


# Analysis and output

class GraphCheckError(MatchstickError):
    """A verification request is inconsistent with the embedding."""


class MappingNotInvolution(GraphCheckError):
    """A symmetry mapping is not an involution on the vertex set."""

    def __init__(self, point, image):
        self.point = point
        self.image = image
        super().__init__(f"symmetry mapping is not an involution at {point} -> {image}")


class RenderError(MatchstickError):
    """An embedding cannot be drawn."""


class EmptyEmbedding(RenderError):
    """There is nothing to draw."""

    def __init__(self):
        super().__init__("embedding has no points")


class InvalidRenderOptions(RenderError, ValueError):
    """Rendering options violate their constraints."""


class EmbeddingFormatError(MatchstickError):
    """An embedding JSON document does not have the expected shape."""
