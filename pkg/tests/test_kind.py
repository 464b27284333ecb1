import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import EXAMPLE1, EXAMPLE2, states
from tadgame import sampling
from tadgame.errors import DegenerateGeometryError
from tadgame.geometry import GameState
from tadgame.kind import (Region, barrier_coefficients, barrier_cross_section, barrier_frame,
                          barrier_value, classify, ed_margin, project_to_barrier, region_grid,
                          tangency_gap)


def test_frame_axis_aligned():
    f = barrier_frame(GameState(5, 5, 1, 0, -1, 0, 0.5))
    assert (f.cos_sigma, f.sin_sigma, f.x0, f.y0) == pytest.approx((1, 0, 0, 0))
    f = barrier_frame(GameState(5, 5, 0, 2, 0, 0, 0.5))
    assert (f.cos_sigma, f.sin_sigma, f.x0, f.y0) == pytest.approx((0, 1, 0, 1))


def test_frame_example1():
    f = barrier_frame(EXAMPLE1)
    n = math.hypot(4.2, -2.5)
    assert (f.cos_sigma, f.sin_sigma) == pytest.approx((4.2 / n, -2.5 / n))
    assert (f.x0, f.y0) == pytest.approx((5.1, -3.25))
    with pytest.raises(DegenerateGeometryError):
        barrier_frame(GameState(0, 0, 1, 1, 1, 1, 0.5))


@given(states())
def test_coefficient_trace(s):
    c = barrier_coefficients(s)
    assert c.bxx + c.byy == pytest.approx(1 - 2 * s.alpha ** 2, abs=1e-12)


def test_examples_classify():
    assert classify(EXAMPLE2).region == Region.R_C
    assert barrier_value(EXAMPLE2) > 0
    assert classify(GameState(0, 0, 3, 0, 1, 0, 0.5)).region == Region.R_ED
    # published Example 1 coordinates sit within their rounding of the Barrier
    assert abs(barrier_value(EXAMPLE1)) < 2e-3 * EXAMPLE1.A.dist(EXAMPLE1.D) ** 2


def test_example1_snapped_is_on_barrier(example1_snapped):
    rep = classify(example1_snapped)
    assert rep.region == Region.ON_BARRIER
    assert example1_snapped.T.dist(EXAMPLE1.T) < 1e-3


@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_collinear_tangency_construction(alpha):
    s = GameState(alpha, 0.0, 1.0, 0.0, -1.0, 0.0, alpha)
    assert abs(barrier_value(s)) < 1e-14
    assert classify(s).region == Region.ON_BARRIER


def test_tangency_sign_matches_barrier():
    rng = np.random.default_rng(20)
    checked = 0
    while checked < 1000:
        s = sampling.random_state(rng)
        if ed_margin(s) >= 0:
            continue
        B, g = barrier_value(s), tangency_gap(s)
        if abs(g) < 1e-9 * s.A.dist(s.D):
            continue
        # one convention for the whole run: positive B is the capture region
        assert np.sign(B) == np.sign(g), s
        checked += 1


@given(states(), st.floats(-math.pi, math.pi), st.floats(-20, 20), st.floats(-20, 20))
def test_classification_rigid_motion_invariant(s, ang, dx, dy):
    a, b = classify(s), classify(s.rigid_motion(ang, shift=(dx, dy)))
    scale = s.A.dist(s.D) ** 2
    if abs(a.barrier_value) > 1e-8 * scale and abs(a.ed_margin) > 1e-9:
        assert a.region == b.region
    assert b.barrier_value == pytest.approx(a.barrier_value, abs=1e-9 * scale)


@given(states())
def test_ed_rule_applied_first(s):
    rep = classify(s)
    assert (rep.region == Region.R_ED) == (rep.ed_margin >= 0)
    if rep.region == Region.ON_BARRIER:
        assert abs(rep.barrier_value) <= rep.tol


@given(states())
def test_ed_margin_symmetric(s):
    # same arithmetic path regardless of which pair of agents is passed first
    swapped = GameState(s.xT, s.yT, s.xD, s.yD, s.xA, s.yA, s.alpha)
    assert ed_margin(swapped) == -ed_margin(s)


def test_tolerance_must_be_positive():
    with pytest.raises(ValueError):
        classify(EXAMPLE2, on_barrier_tol=0.0)


def test_cross_section_symmetric():
    pts = barrier_cross_section((1, 0), (-1, 0), 0.5, (-2, 2, -2, 2), (81, 81))
    assert min(math.hypot(p.x - 0.5, p.y) for p in pts) < 1e-9
    for p in pts:
        s = GameState(p.x, p.y, 1, 0, -1, 0, 0.5)
        assert abs(barrier_value(s)) < 1e-6
        assert ed_margin(s) < 0


def test_cross_section_example1():
    pts = barrier_cross_section(EXAMPLE1.A, EXAMPLE1.D, 0.7, (0, 12, -10, 5), (121, 151))
    assert len(pts) > 20
    assert min(p.dist(EXAMPLE1.T) for p in pts) < 2e-3
    assert max(abs(barrier_value(EXAMPLE1.with_target(p))) for p in pts) < 1e-6


def test_region_grid_matches_classify():
    A, D, alpha = (7.2, -4.5), (3.0, -2.0), 0.7
    xs, ys, labels = region_grid(A, D, alpha, (0, 12, -10, 5), (25, 31))
    for j in range(0, len(ys), 5):
        for i in range(0, len(xs), 4):
            s = GameState(xs[i], ys[j], *A, *D, alpha)
            assert labels[j, i] == classify(s).region.value


@given(states())
def test_projection_lands_on_barrier(s):
    try:
        b = project_to_barrier(s)
    except DegenerateGeometryError:
        return
    assert abs(barrier_value(b)) < 1e-12 * s.A.dist(s.D) ** 2 + 1e-12


def test_projection_from_symmetry_axis():
    # the gradient line from this start misses the Barrier, so plain Gauss-Newton stalls
    s = GameState(0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.5)
    b = project_to_barrier(s)
    assert abs(barrier_value(b)) < 1e-12
    assert b.A == s.A and b.D == s.D
