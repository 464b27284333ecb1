import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import EXAMPLE1, states
from tadgame.errors import DegenerateGeometryError
from tadgame.geometry import (GameState, Heading, Point2, apollonius, los_angle,
                              orthogonal_bisector, rigid_motion_point)


def test_apollonius_basic():
    c = apollonius(GameState(0, 0, 1, 0, 5, 5, 0.5))
    assert c.xc == pytest.approx(-1 / 3)
    assert c.yc == pytest.approx(0.0)
    assert c.r == pytest.approx(2 / 3)


def test_apollonius_collapses_for_zero_speed():
    c = apollonius(GameState(0, 0, 1, 0, 5, 5, 0.0))
    assert (c.xc, c.yc, c.r) == (0.0, 0.0, 0.0)


def test_apollonius_tangent_to_bisector_in_example1(example1_snapped):
    s = example1_snapped
    c = apollonius(s)
    line = orthogonal_bisector(s.A, s.D)
    assert abs(abs(line.signed_distance(c.center)) - c.r) < 1e-9
    # the published coordinates are rounded, tangency holds to that precision
    c0 = apollonius(EXAMPLE1)
    assert abs(abs(line.signed_distance(c0.center)) - c0.r) < 5e-3


@given(states(), st.floats(-math.pi, math.pi))
def test_apollonius_points_satisfy_speed_ratio(s, w):
    c = apollonius(s)
    P = c.point_at(w)
    assert abs(s.T.dist(P) - s.alpha * s.A.dist(P)) < 1e-10 * max(1.0, s.A.dist(P))


def test_invalid_states_rejected():
    with pytest.raises(ValueError):
        GameState(0, 0, 1, 0, 2, 0, 1.0)
    with pytest.raises(ValueError):
        GameState(0, 0, 1, 0, 2, 0, -0.1)
    with pytest.raises(ValueError):
        GameState(math.nan, 0, 1, 0, 2, 0, 0.5)


def test_los_angle():
    h = los_angle((0, 0), (3, 4))
    assert h.vector == pytest.approx((0.6, 0.8))
    assert abs(los_angle((1, 0), (-1, 0)).angle) == pytest.approx(math.pi)
    h = los_angle(EXAMPLE1.A, EXAMPLE1.D)
    d = np.array([3 - 7.2, -2 + 4.5])
    assert h.vector == pytest.approx(tuple(d / np.linalg.norm(d)))
    with pytest.raises(DegenerateGeometryError):
        los_angle((1, 1), (1, 1))


@given(st.floats(-10, 10))
def test_heading_unit(a):
    h = Heading.from_angle(a)
    c, s = h.vector
    assert abs(c * c + s * s - 1) < 1e-12
    assert -math.pi <= h.angle <= math.pi


def test_bisector_examples():
    line = orthogonal_bisector((1, 0), (-1, 0))
    assert line.point == pytest.approx((0, 0))
    assert abs(line.direction[0]) < 1e-15
    line = orthogonal_bisector((0, 1), (0, -1))
    assert abs(line.direction[1]) < 1e-15
    line = orthogonal_bisector(EXAMPLE1.A, EXAMPLE1.D)
    assert line.point == pytest.approx((5.1, -3.25))
    assert line.direction[0] * 4.2 - line.direction[1] * 2.5 == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DegenerateGeometryError):
        orthogonal_bisector((1, 1), (1, 1))


@given(states(), st.floats(-50, 50))
def test_bisector_points_equidistant(s, t):
    P = orthogonal_bisector(s.A, s.D).at(t)
    assert abs(P.dist(s.A) - P.dist(s.D)) < 1e-10 * max(1.0, abs(t))


@given(states(), st.floats(-math.pi, math.pi), st.floats(-5, 5), st.floats(-5, 5))
def test_rigid_motion_preserves_distances(s, ang, dx, dy):
    m = s.rigid_motion(ang, shift=(dx, dy))
    assert m.T.dist(m.A) == pytest.approx(s.T.dist(s.A), rel=1e-12, abs=1e-12)
    assert m.A.dist(m.D) == pytest.approx(s.A.dist(s.D), rel=1e-12, abs=1e-12)
    p = rigid_motion_point(s.T, ang, shift=(dx, dy))
    assert p == pytest.approx(m.T)


def test_state_round_trip():
    s = EXAMPLE1
    assert GameState.from_positions(s.positions(), s.alpha) == s
    d = s.to_dict()
    assert GameState.from_points(d["T"], d["A"], d["D"], d["alpha"]) == s
    assert isinstance(s.T, Point2) and s.T.dist(s.A) == pytest.approx(math.hypot(0.3, 1.22))
