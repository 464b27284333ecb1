import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import COLLINEAR, EXAMPLE2, angle_diff, rc_states
from tadgame import cdg, sampling
from tadgame.errors import DegenerateGeometryError, RegionError
from tadgame.geometry import GameState, apollonius, los_angle
from tadgame.kind import Region, classify


def fd_gradient(s, h=1e-6):
    p = s.positions()
    g = np.empty(6)
    for k in range(6):
        e = np.zeros(6)
        e[k] = h
        g[k] = (cdg.value(GameState.from_positions(p + e, s.alpha))
                - cdg.value(GameState.from_positions(p - e, s.alpha))) / (2 * h)
    return g


def test_example1_aimpoint(example1_snapped):
    aim = cdg.solve_aimpoint(example1_snapped)
    assert aim.point.dist((6.305, -1.224)) < 5e-3
    assert abs(aim.value) < 1e-6


def test_collinear_aimpoint():
    aim = cdg.solve_aimpoint(COLLINEAR)
    assert aim.point.dist((0, 0)) < 1e-9
    assert angle_diff(aim.omega_star, math.pi) < 1e-9
    assert abs(aim.value) < 1e-9
    assert cdg.value(COLLINEAR) == pytest.approx(0.0, abs=1e-9)


def test_example2_matches_oracle():
    aim = cdg.solve_aimpoint(EXAMPLE2)
    ref = cdg.oracle_aimpoint(EXAMPLE2)
    assert aim.point.dist(ref.point) < 1e-5
    assert aim.value > 0


def test_oracle_on_barrier_examples(example1_snapped):
    assert cdg.oracle_aimpoint(example1_snapped).point.dist((6.305, -1.224)) < 5e-3
    assert cdg.oracle_aimpoint(COLLINEAR).point.dist((0, 0)) < 1e-9


def test_rejects_escape_region():
    with pytest.raises(RegionError) as exc:
        cdg.solve_aimpoint(GameState(0, 0, 3, 0, 1, 0, 0.5))
    assert exc.value.region == Region.R_ED


@given(rc_states())
def test_polynomial_self_inversive_and_root_pairs(s):
    poly = cdg.cdg_polynomial(s)
    assert poly.self_inversive_error() < 1e-12
    roots = np.array(poly.roots())
    off = roots[np.abs(np.abs(roots) - 1) > 1e-3]
    for v in off:
        mate = 1 / np.conj(v)
        assert np.min(np.abs(roots - mate)) < 1e-8 * max(1.0, abs(mate))


@given(rc_states())
def test_aimpoint_invariants(s):
    aim = cdg.solve_aimpoint(s)
    c = apollonius(s)
    assert abs(aim.point.dist(c.center) - c.r) < 1e-9 * max(1.0, c.r)
    ti, ai = s.T.dist(aim.point), s.A.dist(aim.point)
    assert aim.time_to_go == pytest.approx(ti / s.alpha, rel=1e-12)
    assert abs(aim.time_to_go - ai) < 1e-8 * max(1.0, ai)
    assert abs(aim.residual_eq58) < 1e-8
    assert abs(cdg.eq20_residual(aim.point, s)) < 1e-8
    assert aim.value > 0


@given(rc_states(), st.floats(-math.pi, math.pi))
def test_squared_form_identity(s, w):
    # the squared stationarity form is the difference of squares of the unsquared sides
    P = apollonius(s).point_at(w)
    lhs, rhs, norm = cdg._eq58_terms(P.x, P.y, s)
    assert cdg.eq20_residual(P, s) == pytest.approx((lhs - rhs) * (lhs + rhs) / norm ** 2,
                                                    rel=1e-9, abs=1e-12)
    assert cdg.eq58_residual(P, s) == pytest.approx((lhs - rhs) / norm, rel=1e-9, abs=1e-12)


@given(rc_states())
def test_value_is_smallest_stationary_candidate(s):
    # brute force over the circle: the returned Value is the minimum of D's lead time
    c = apollonius(s)
    w = np.linspace(-math.pi, math.pi, 20001)
    X, Y = c.xc + c.r * np.cos(w), c.yc + c.r * np.sin(w)
    vals = np.hypot(X - s.xD, Y - s.yD) - np.hypot(X - s.xT, Y - s.yT) / s.alpha
    assert cdg.value(s) == pytest.approx(vals.min(), abs=1e-6 * s.A.dist(s.D))


@given(rc_states())
def test_candidates_sorted_and_first_is_solution(s):
    cands = cdg.candidate_solutions(s)
    aim = cdg.solve_aimpoint(s)
    assert cands[0].point.dist(aim.point) < 1e-12 * max(1.0, aim.circle.r)
    assert all(a.value <= b.value for a, b in zip(cands, cands[1:]))
    assert len(cands) == aim.root_count


def test_optimal_headings_point_at_aim():
    aim = cdg.solve_aimpoint(EXAMPLE2)
    h = cdg.optimal_headings(EXAMPLE2, aim)
    assert h.phi == los_angle(EXAMPLE2.T, aim.point)
    assert h.psi == los_angle(EXAMPLE2.D, aim.point)
    assert h.chi == los_angle(EXAMPLE2.A, aim.point)


def test_gradient_example2():
    g = cdg.value_gradient(EXAMPLE2)
    fd = fd_gradient(EXAMPLE2)
    assert np.max(np.abs(g - fd)) / np.max(np.abs(g)) < 1e-5


def test_gradient_kink_at_dispersal():
    # mirror-symmetric layout: two capture points tie and the Value has a kink in y
    s = GameState(0.0, 0.0, -1.0, 0.0, -2.0, 0.0, 0.5)
    assert cdg.dispersal_gap(s) < 1e-9
    assert fd_gradient(s)[1] == pytest.approx(0.0, abs=1e-9)
    assert abs(cdg.value_gradient(s)[1]) > 0.1


@given(rc_states(margin=1e-2))
def test_gradient_matches_finite_differences(s):
    # the gradient exists only where the minimizing capture point is unique
    assume(cdg.dispersal_gap(s) > 1e-4 * s.A.dist(s.D))
    g = cdg.value_gradient(s)
    fd = fd_gradient(s)
    assert np.max(np.abs(g - fd)) / max(1.0, np.max(np.abs(g))) < 1e-5


def test_gradient_rotation_path():
    rng = np.random.default_rng(5)
    for s in sampling.random_rc_states(rng, 10, margin=1e-2):
        h = sampling.horizontal_aim_state(s)
        g, rotated = cdg.value_gradient(h, return_rotated=True)
        assert rotated
        fd = fd_gradient(h)
        assert np.max(np.abs(g - fd)) / max(1.0, np.max(np.abs(g))) < 1e-5


def test_gradient_rejects_barrier(example1_snapped):
    with pytest.raises(RegionError):
        cdg.value_gradient(example1_snapped)
    cdg.value_gradient(example1_snapped, one_sided=True)


@given(rc_states())
def test_costate_reproduces_headings(s):
    aim = cdg.solve_aimpoint(s)
    try:
        lam = cdg.costate(s, aim)
    except DegenerateGeometryError:
        return
    h = cdg.optimal_headings(s, aim)
    assert math.hypot(lam.lxD, lam.lyD) == pytest.approx(1.0, abs=1e-10)
    # each player's heading is aligned (or anti-aligned) with its co-state block
    for (lx, ly), hd in (((lam.lxT, lam.lyT), h.phi), ((lam.lxA, lam.lyA), h.chi),
                         ((lam.lxD, lam.lyD), h.psi)):
        n = math.hypot(lx, ly)
        assert abs(abs(lx * hd.cos + ly * hd.sin) - n) < 1e-8 * max(1.0, n)


def test_costate_collinear_is_degenerate():
    with pytest.raises(DegenerateGeometryError):
        cdg.costate(COLLINEAR)


@given(rc_states())
def test_residuals_vanish(s):
    aim = cdg.solve_aimpoint(s)
    assert abs(cdg.hji_residual(s, aim)) < 1e-9
    try:
        assert abs(cdg.me_residual(s, aim)) < 1e-9
    except DegenerateGeometryError:
        pass


def test_residuals_on_barrier(example1_snapped):
    assert abs(cdg.hji_residual(COLLINEAR)) < 1e-8
    assert abs(cdg.hji_residual(example1_snapped)) < 1e-8
    assert abs(cdg.hji_residual(EXAMPLE2)) < 1e-9
    assert classify(COLLINEAR).region == Region.ON_BARRIER
