"""
Plane-geometry kernel.

Lengths are measured in matchsticks (one unit = one edge) and angles in
degrees. Everything here is a pure function on immutable values.
"""

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

from matchstick_graphs.errors import (
    ConcentricDegenerate,
    DegenerateReference,
    InvalidAngle,
    NoIntersection,
)

# Slack for the circle-intersection feasibility test.
INTERSECTION_SLACK = 1e-12

# Geometric coincidence default for segment predicates.
COINCIDENCE = 1e-9

# Unlabeled coordinate pair found in the source of the published drawing of
# the 54-vertex graph. Kept as a cross-check value; which vertex it belongs to
# (and in which frame) is not known.
FIGURE_REFERENCE_COORD = (3.37452506686058084640, 0.62932039104983827915)


@dataclass(frozen=True)
class Coord:
    """A point in the plane."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x!r}, {self.y!r})")

    def __add__(self, other):
        return Coord(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Coord(self.x - other.x, self.y - other.y)

    def scale(self, factor):
        return Coord(self.x * factor, self.y * factor)

    def as_tuple(self):
        return (self.x, self.y)


ORIGIN = Coord(0.0, 0.0)


class Turn(IntEnum):
    """Angle direction / side selector: +1 counterclockwise, -1 clockwise."""

    CCW = 1
    CW = -1

    @property
    def symbol(self):
        return "+" if self is Turn.CCW else "-"

    def flipped(self):
        return Turn(-self.value)

    @classmethod
    def parse(cls, token):
        """Parse '+', '-', '+1', '-1', 'ccw' or 'cw'."""
        normalized = token.strip().lower()
        if normalized in ("+", "+1", "1", "ccw", "left"):
            return cls.CCW
        if normalized in ("-", "-1", "cw", "right"):
            return cls.CW
        raise ValueError(f"not a turn: {token!r}")


class SegmentRelation(Enum):
    """How two closed segments meet."""

    DISJOINT = "disjoint"
    PROPER_CROSSING = "proper_crossing"
    SHARED_ENDPOINT = "shared_endpoint"
    ENDPOINT_ON_INTERIOR = "endpoint_on_interior"
    COLLINEAR_OVERLAP = "collinear_overlap"

    @property
    def is_violation(self):
        """True for relations a matchstick drawing must not contain."""
        return self in (
            SegmentRelation.PROPER_CROSSING,
            SegmentRelation.ENDPOINT_ON_INTERIOR,
            SegmentRelation.COLLINEAR_OVERLAP,
        )


def distance(p, q):
    """Euclidean distance between two points."""
    return math.hypot(q.x - p.x, q.y - p.y)


def midpoint(p, q):
    return Coord((p.x + q.x) / 2.0, (p.y + q.y) / 2.0)


def cross(o, a, b):
    """Cross product (a - o) x (b - o); positive when b is left of o->a."""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def rotate(p, angle, center=ORIGIN):
    """Rotate p counterclockwise by `angle` degrees about `center`."""
    rad = math.radians(angle)
    c, s = math.cos(rad), math.sin(rad)
    dx, dy = p.x - center.x, p.y - center.y
    return Coord(center.x + c * dx - s * dy, center.y + s * dx + c * dy)


def unsigned_angle(p, vertex, q):
    """Angle at `vertex` between rays vertex->p and vertex->q, in [0, 180]."""
    ax, ay = p.x - vertex.x, p.y - vertex.y
    bx, by = q.x - vertex.x, q.y - vertex.y
    return math.degrees(math.atan2(abs(ax * by - ay * bx), ax * bx + ay * by))


def circle_circle_intersection(c1, r1, c2, r2):
    """
    Intersect two circles.

    Returns 1 or 2 points. With two points the first lies on the +1 (left)
    side of the directed line c1->c2, so a Turn selects deterministically.
    """
    if r1 <= 0 or r2 <= 0:
        raise ValueError("radii must be positive")
    dx, dy = c2.x - c1.x, c2.y - c1.y
    d = math.hypot(dx, dy)
    if d == 0.0:
        raise ConcentricDegenerate()
    if d > r1 + r2 + INTERSECTION_SLACK or d < abs(r1 - r2) - INTERSECTION_SLACK:
        raise NoIntersection(d, r1, r2)

    ux, uy = dx / d, dy / d
    a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    h_sq = r1 * r1 - a * a
    # Tangent (or within slack of it): a single touching point.
    if h_sq <= 0.0 or d >= r1 + r2 or d <= abs(r1 - r2):
        a = max(-r1, min(r1, a))
        return [Coord(c1.x + a * ux, c1.y + a * uy)]

    h = math.sqrt(h_sq)
    mx, my = c1.x + a * ux, c1.y + a * uy
    return [
        Coord(mx - h * uy, my + h * ux),
        Coord(mx + h * uy, my - h * ux),
    ]


def place_by_angle(base, ref, angle, turn):
    """
    Place a point at unit distance from `base`.

    The unit vector base->ref is rotated by `angle` degrees, counterclockwise
    for Turn.CCW and clockwise for Turn.CW.
    """
    if not 0.0 < angle < 360.0:
        raise InvalidAngle(angle)
    dx, dy = ref.x - base.x, ref.y - base.y
    length = math.hypot(dx, dy)
    if length == 0.0:
        raise DegenerateReference()
    ux, uy = dx / length, dy / length
    rad = math.radians(angle) * int(turn)
    c, s = math.cos(rad), math.sin(rad)
    return Coord(base.x + c * ux - s * uy, base.y + s * ux + c * uy)


def point_reflect(p, center):
    """Point reflection (half turn) of p about center."""
    return Coord(2.0 * center.x - p.x, 2.0 * center.y - p.y)


def point_segment_distance(p, a, b):
    """Distance from p to the closed segment ab."""
    dx, dy = b.x - a.x, b.y - a.y
    length_sq = dx * dx + dy * dy
    if length_sq == 0.0:
        return distance(p, a)
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / length_sq
    t = max(0.0, min(1.0, t))
    return math.hypot(a.x + t * dx - p.x, a.y + t * dy - p.y)


def _side(a1, a2, p, tol):
    """-1, 0 or +1: side of p relative to the line a1a2, zero within tol."""
    signed = cross(a1, a2, p) / distance(a1, a2)
    if signed > tol:
        return 1
    if signed < -tol:
        return -1
    return 0


def _collinear_relation(a1, a2, b1, b2, shared, tol):
    # Project everything onto the direction of segment a.
    length = distance(a1, a2)
    ux, uy = (a2.x - a1.x) / length, (a2.y - a1.y) / length

    def along(p):
        return (p.x - a1.x) * ux + (p.y - a1.y) * uy

    b_lo, b_hi = sorted((along(b1), along(b2)))
    overlap = min(length, b_hi) - max(0.0, b_lo)
    if overlap > tol:
        return SegmentRelation.COLLINEAR_OVERLAP
    if shared:
        return SegmentRelation.SHARED_ENDPOINT
    return SegmentRelation.DISJOINT


def segment_relation(a1, a2, b1, b2, tol=COINCIDENCE):
    """Classify how segment a1a2 meets segment b1b2."""
    if distance(a1, a2) == 0.0 or distance(b1, b2) == 0.0:
        raise ValueError("segments must have distinct endpoints")

    shared = sum(
        1 for p in (a1, a2) for q in (b1, b2) if distance(p, q) <= tol
    )

    s1 = _side(a1, a2, b1, tol)
    s2 = _side(a1, a2, b2, tol)
    s3 = _side(b1, b2, a1, tol)
    s4 = _side(b1, b2, a2, tol)

    if s1 == 0 and s2 == 0 and s3 == 0 and s4 == 0:
        return _collinear_relation(a1, a2, b1, b2, shared, tol)

    if shared:
        # A shared endpoint plus a non-collinear layout: the only remaining
        # contact is the far endpoint of one lying on the other.
        for p, (q1, q2) in ((a1, (b1, b2)), (a2, (b1, b2)), (b1, (a1, a2)), (b2, (a1, a2))):
            if min(distance(p, q1), distance(p, q2)) > tol and point_segment_distance(p, q1, q2) <= tol:
                return SegmentRelation.ENDPOINT_ON_INTERIOR
        return SegmentRelation.SHARED_ENDPOINT

    if s1 * s2 < 0 and s3 * s4 < 0:
        return SegmentRelation.PROPER_CROSSING

    for p, q1, q2 in ((a1, b1, b2), (a2, b1, b2), (b1, a1, a2), (b2, a1, a2)):
        if point_segment_distance(p, q1, q2) <= tol:
            return SegmentRelation.ENDPOINT_ON_INTERIOR
    return SegmentRelation.DISJOINT
