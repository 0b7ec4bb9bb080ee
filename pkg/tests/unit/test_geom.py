"""
Unit tests for the plane-geometry kernel (matchstick_graphs.geom).
"""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from matchstick_graphs import geom
from matchstick_graphs.errors import (
    ConcentricDegenerate,
    DegenerateReference,
    InvalidAngle,
    NoIntersection,
)
from matchstick_graphs.geom import Coord, SegmentRelation, Turn

RANDOM_CASES = 10_000

coordinates = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)
points = st.builds(Coord, coordinates, coordinates)
grid = st.integers(min_value=-3, max_value=3).map(float)
grid_points = st.builds(Coord, grid, grid)


class TestCoord:
    """Test the Coord value type."""

    def test_arithmetic(self):
        """Test addition, subtraction and scaling."""
        a, b = Coord(1.0, 2.0), Coord(0.5, -1.0)
        assert a + b == Coord(1.5, 1.0)
        assert a - b == Coord(0.5, 3.0)
        assert a.scale(2.0) == Coord(2.0, 4.0)
        assert a.as_tuple() == (1.0, 2.0)

    @pytest.mark.parametrize("x,y", [(math.nan, 0.0), (0.0, math.inf)])
    def test_rejects_non_finite(self, x, y):
        with pytest.raises(ValueError):
            Coord(x, y)


class TestTurn:
    """Test parsing and flipping of turn signs."""

    @pytest.mark.parametrize("token", ["+", "+1", "1", "ccw", "CCW", "left"])
    def test_parse_counterclockwise(self, token):
        assert Turn.parse(token) is Turn.CCW

    @pytest.mark.parametrize("token", ["-", "-1", "cw", "right"])
    def test_parse_clockwise(self, token):
        assert Turn.parse(token) is Turn.CW

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            Turn.parse("up")

    def test_flipped_and_symbol(self):
        assert Turn.CCW.flipped() is Turn.CW
        assert Turn.CW.flipped() is Turn.CCW
        assert Turn.CCW.symbol == "+"
        assert Turn.CW.symbol == "-"


class TestCircleIntersection:
    """Test circle_circle_intersection."""

    def test_unit_circles_one_apart(self):
        """Two points, the first on the left of c1->c2."""
        first, second = geom.circle_circle_intersection(Coord(0, 0), 1.0, Coord(1, 0), 1.0)
        assert first.x == pytest.approx(0.5, abs=1e-15)
        assert first.y == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
        assert second.y == pytest.approx(-math.sqrt(3) / 2, abs=1e-15)

    def test_tangent_returns_single_point(self):
        result = geom.circle_circle_intersection(Coord(0, 0), 1.0, Coord(2, 0), 1.0)
        assert len(result) == 1
        assert result[0].x == pytest.approx(1.0)
        assert result[0].y == pytest.approx(0.0)

    def test_too_far_apart(self):
        with pytest.raises(NoIntersection) as exc_info:
            geom.circle_circle_intersection(Coord(0, 0), 1.0, Coord(3, 0), 1.0)
        assert exc_info.value.distance == pytest.approx(3.0)

    def test_nested_circles(self):
        with pytest.raises(NoIntersection):
            geom.circle_circle_intersection(Coord(0, 0), 3.0, Coord(0.5, 0), 1.0)

    def test_concentric(self):
        with pytest.raises(ConcentricDegenerate):
            geom.circle_circle_intersection(Coord(1, 1), 1.0, Coord(1, 1), 2.0)

    def test_randomized_radius_residuals(self):
        """Both points lie on both circles, first point on the left."""
        rng = np.random.default_rng(20240601)
        worst = 0.0
        for _ in range(RANDOM_CASES):
            c1 = Coord(*rng.uniform(-5.0, 5.0, size=2))
            r1, r2 = rng.uniform(0.2, 2.0, size=2)
            d = rng.uniform(abs(r1 - r2) + 1e-3, r1 + r2 - 1e-3)
            heading = rng.uniform(0.0, 2.0 * math.pi)
            c2 = Coord(c1.x + d * math.cos(heading), c1.y + d * math.sin(heading))
            result = geom.circle_circle_intersection(c1, r1, c2, r2)
            assert len(result) == 2
            assert geom.cross(c1, c2, result[0]) > 0
            for p in result:
                worst = max(worst, abs(geom.distance(p, c1) - r1), abs(geom.distance(p, c2) - r2))
        assert worst <= 1e-12


class TestPlaceByAngle:
    """Test place_by_angle."""

    def test_quarter_turns(self):
        left = geom.place_by_angle(Coord(0, 0), Coord(1, 0), 90.0, Turn.CCW)
        right = geom.place_by_angle(Coord(0, 0), Coord(1, 0), 90.0, Turn.CW)
        assert (left.x, left.y) == pytest.approx((0.0, 1.0), abs=1e-15)
        assert (right.x, right.y) == pytest.approx((0.0, -1.0), abs=1e-15)

    def test_reference_distance_is_irrelevant(self):
        near = geom.place_by_angle(Coord(1, 1), Coord(1.1, 1), 30.0, Turn.CCW)
        far = geom.place_by_angle(Coord(1, 1), Coord(40, 1), 30.0, Turn.CCW)
        assert geom.distance(near, far) < 1e-14

    def test_first_step_of_bundled_construction(self):
        p3 = geom.place_by_angle(Coord(0, 0), Coord(1, 0), 102.0, Turn.CCW)
        assert p3.x == pytest.approx(-0.2079116908, abs=1e-10)
        assert p3.y == pytest.approx(0.9781476007, abs=1e-10)

    @pytest.mark.parametrize("angle", [0.0, 360.0, -10.0, 400.0])
    def test_invalid_angle(self, angle):
        with pytest.raises(InvalidAngle):
            geom.place_by_angle(Coord(0, 0), Coord(1, 0), angle, Turn.CCW)

    def test_degenerate_reference(self):
        with pytest.raises(DegenerateReference):
            geom.place_by_angle(Coord(2, 3), Coord(2, 3), 45.0, Turn.CCW)

    def test_randomized_unit_length_and_angle_recovery(self):
        rng = np.random.default_rng(7)
        worst_length = worst_angle = 0.0
        for _ in range(RANDOM_CASES):
            base = Coord(*rng.uniform(-5.0, 5.0, size=2))
            heading = rng.uniform(0.0, 2.0 * math.pi)
            reach = rng.uniform(0.1, 3.0)
            ref = Coord(base.x + reach * math.cos(heading), base.y + reach * math.sin(heading))
            angle = rng.uniform(0.5, 359.5)
            turn = Turn.CCW if rng.random() < 0.5 else Turn.CW
            new = geom.place_by_angle(base, ref, angle, turn)

            worst_length = max(worst_length, abs(geom.distance(base, new) - 1.0))
            expected = angle if angle <= 180.0 else 360.0 - angle
            measured = geom.unsigned_angle(ref, base, new)
            worst_angle = max(worst_angle, abs(math.radians(measured - expected)))
            if 1.0 < angle < 179.0:
                assert math.copysign(1, geom.cross(base, ref, new)) == int(turn)
        assert worst_length <= 1e-12
        assert worst_angle <= 1e-12

    @given(base=points, angle=st.floats(min_value=0.01, max_value=359.99))
    @settings(max_examples=200, deadline=None)
    def test_opposite_turns_are_mirror_images(self, base, angle):
        ref = Coord(base.x + 1.0, base.y)
        up = geom.place_by_angle(base, ref, angle, Turn.CCW)
        down = geom.place_by_angle(base, ref, angle, Turn.CW)
        assert up.x == pytest.approx(down.x, abs=1e-12)
        assert up.y - base.y == pytest.approx(base.y - down.y, abs=1e-12)


class TestReflectionAndRotation:
    """Test point_reflect and rotate."""

    def test_reflect_example(self):
        assert geom.point_reflect(Coord(1, 2), Coord(0, 0)) == Coord(-1, -2)

    def test_randomized_reflection_involution(self):
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(RANDOM_CASES):
            p = Coord(*rng.uniform(-1.0, 1.0, size=2))
            c = Coord(*rng.uniform(-1.0, 1.0, size=2))
            worst = max(worst, geom.distance(geom.point_reflect(geom.point_reflect(p, c), c), p))
        assert worst <= 1e-15

    @given(p=points, c=points)
    def test_reflection_keeps_center_as_midpoint(self, p, c):
        m = geom.midpoint(p, geom.point_reflect(p, c))
        assert geom.distance(m, c) <= 1e-12

    def test_rotate_quarter_turn(self):
        r = geom.rotate(Coord(1, 0), 90.0)
        assert (r.x, r.y) == pytest.approx((0.0, 1.0), abs=1e-15)

    def test_rotate_about_center(self):
        r = geom.rotate(Coord(2, 1), 180.0, center=Coord(1, 1))
        assert (r.x, r.y) == pytest.approx((0.0, 1.0), abs=1e-15)


class TestSegmentRelation:
    """Test segment_relation classification."""

    @pytest.mark.parametrize("a1,a2,b1,b2,expected", [
        ((0, 0), (1, 1), (0, 1), (1, 0), SegmentRelation.PROPER_CROSSING),
        ((0, 0), (1, 0), (0, 0), (0, 1), SegmentRelation.SHARED_ENDPOINT),
        ((0, 0), (2, 0), (1, 0), (1, 1), SegmentRelation.ENDPOINT_ON_INTERIOR),
        ((0, 0), (2, 0), (1, 0), (3, 0), SegmentRelation.COLLINEAR_OVERLAP),
        ((0, 0), (2, 0), (0, 0), (1, 0), SegmentRelation.COLLINEAR_OVERLAP),
        ((0, 0), (1, 0), (1, 0), (2, 0), SegmentRelation.SHARED_ENDPOINT),
        ((0, 0), (1, 0), (2, 0), (3, 0), SegmentRelation.DISJOINT),
        ((0, 0), (1, 0), (0, 1), (1, 1), SegmentRelation.DISJOINT),
        ((0, 0), (1, 0), (0.5, 0.1), (0.5, 1.0), SegmentRelation.DISJOINT),
    ])
    def test_classification(self, a1, a2, b1, b2, expected):
        result = geom.segment_relation(Coord(*a1), Coord(*a2), Coord(*b1), Coord(*b2))
        assert result is expected

    def test_classification_is_symmetric(self):
        a1, a2, b1, b2 = Coord(0, 0), Coord(2, 0), Coord(1, 0), Coord(1, 1)
        assert geom.segment_relation(a1, a2, b1, b2) is geom.segment_relation(b1, b2, a1, a2)

    def test_violations(self):
        assert SegmentRelation.PROPER_CROSSING.is_violation
        assert SegmentRelation.ENDPOINT_ON_INTERIOR.is_violation
        assert SegmentRelation.COLLINEAR_OVERLAP.is_violation
        assert not SegmentRelation.SHARED_ENDPOINT.is_violation
        assert not SegmentRelation.DISJOINT.is_violation

    def test_degenerate_segment(self):
        with pytest.raises(ValueError):
            geom.segment_relation(Coord(0, 0), Coord(0, 0), Coord(1, 0), Coord(1, 1))

    def test_point_segment_distance(self):
        assert geom.point_segment_distance(Coord(0.5, 2), Coord(0, 0), Coord(1, 0)) == pytest.approx(2.0)
        assert geom.point_segment_distance(Coord(3, 4), Coord(0, 0), Coord(0, 0)) == pytest.approx(5.0)
        assert geom.point_segment_distance(Coord(-3, 4), Coord(0, 0), Coord(1, 0)) == pytest.approx(5.0)

    @given(a1=grid_points, a2=grid_points, b1=grid_points, b2=grid_points)
    @settings(max_examples=500, deadline=None)
    def test_classification_ignores_endpoint_order(self, a1, a2, b1, b2):
        assume(a1 != a2 and b1 != b2)
        expected = geom.segment_relation(a1, a2, b1, b2)
        assert geom.segment_relation(a2, a1, b1, b2) is expected
        assert geom.segment_relation(a1, a2, b2, b1) is expected
        assert geom.segment_relation(b2, b1, a2, a1) is expected

    @given(p=points, a=points, b=points)
    def test_point_segment_distance_bounded_by_endpoints(self, p, a, b):
        nearest_end = min(geom.distance(p, a), geom.distance(p, b))
        assert geom.point_segment_distance(p, a, b) <= nearest_end + 1e-12
