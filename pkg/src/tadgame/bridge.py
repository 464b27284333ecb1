"""Escape-region aimpoint and consistency checks on the Barrier.

In the escape region the Defender can intercept the Attacker on the A-D
perpendicular bisector.  The Target/Defender aimpoint is the point on that
line where the Target's advantage ``alpha * AI - TI`` is stationary.  On the
Barrier this point coincides with the capture point of the capture game.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .cdg import solve_aimpoint
from .errors import RegionError, SolverFailure
from .geometry import GameState, Point2, apollonius, los_angle, orthogonal_bisector
from .kind import Region, classify, tangency_gap

ESCAPE_REGIONS = (Region.R_EA, Region.ON_BARRIER)
CONSISTENCY_TOL = 1e-6


@dataclass(frozen=True)
class BisectorAimpoint:
    point: Point2
    param: float  # signed arclength from the A-D midpoint along the bisector
    residual_eq78: float
    root_count: int

    def to_dict(self) -> dict:
        return {"aimpoint": [self.point.x, self.point.y], "param": self.param,
                "residual_eq78": self.residual_eq78, "root_count": self.root_count}


def _args(state: GameState):
    return (state.xT, state.yT, state.xA, state.yA, state.xD, state.yD, state.alpha)


def eq78_residual(point, state: GameState) -> float:
    """Escape aimpoint condition at ``point``, divided by dist(A,D)**3."""
    return kernels.eq78_residual(point[0], point[1], *_args(state))


def atddg_aimpoint(state: GameState, check_region: bool = True) -> BisectorAimpoint:
    """Team aimpoint on the A-D bisector.

    The bisector is scanned in steps of 0.1 * dist(A,D) over +-20 * dist(A,D)
    and each bracket is refined with Brent's method.  When several roots are
    found the one leaving the Target the largest margin is chosen.
    """
    if check_region:
        rep = classify(state)
        if rep.region not in ESCAPE_REGIONS:
            raise RegionError(f"state in {rep.region.value}: escape aimpoint not applicable",
                              rep.region)
    st, x, y, s, count, lo, hi = kernels.atddg_aim(*_args(state))
    if st != kernels.OK:
        raise SolverFailure("no escape aimpoint on the bisector", scan_range=(lo, hi),
                            state=state.to_dict())
    line = orthogonal_bisector(state.A, state.D)
    # place the point exactly on the line so equidistance holds to rounding
    p = line.at(s)
    return BisectorAimpoint(point=p, param=s, residual_eq78=eq78_residual(p, state),
                            root_count=count)


@dataclass(frozen=True)
class ConsistencyReport:
    omega_star_minus_rho: float
    value: float
    tangency_gap: float
    passed: bool

    def to_dict(self) -> dict:
        return {"omega_star_minus_rho": self.omega_star_minus_rho, "value": self.value,
                "tangency_gap": self.tangency_gap, "passed": self.passed}


def barrier_consistency_check(state: GameState, tol: float = CONSISTENCY_TOL) -> ConsistencyReport:
    """On the Barrier the capture point lies on the bisector, V = 0 and the
    Apollonius circle touches the bisector.  Gaps are scaled by dist(A,D)
    where they carry length units."""
    sd = math.hypot(state.xA - state.xD, state.yA - state.yD)
    aim = solve_aimpoint(state, check_region=False)
    rho = los_angle(state.A, state.D).angle
    d = aim.omega_star - rho
    dw = abs(math.atan2(math.sin(d), math.cos(d)))
    gap = abs(tangency_gap(state)) / sd
    v = abs(aim.value) / sd
    return ConsistencyReport(omega_star_minus_rho=dw, value=aim.value, tangency_gap=gap,
                             passed=bool(dw < tol and v < tol and gap < tol))


def bisector_tangent_point(state: GameState) -> Point2:
    """Foot of the perpendicular from the Apollonius center onto the bisector."""
    c = apollonius(state)
    line = orthogonal_bisector(state.A, state.D)
    ux, uy = line.direction
    s = (c.xc - line.point.x) * ux + (c.yc - line.point.y) * uy
    return line.at(s)


def in_scan_range(state: GameState) -> bool:
    """Whether the bisector tangency point lies inside the escape-aimpoint scan.

    Beyond +-20 * dist(A,D) from the A-D midpoint the escape solver reports
    a failure by design, so Barrier checks that involve it skip such states.
    """
    line = orthogonal_bisector(state.A, state.D)
    p = bisector_tangent_point(state)
    ux, uy = line.direction
    s = (p.x - line.point.x) * ux + (p.y - line.point.y) * uy
    return abs(s) < kernels.ATDDG_SCAN_HALF_WIDTH * state.A.dist(state.D)
