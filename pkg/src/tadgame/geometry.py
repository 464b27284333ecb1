"""Planar geometry shared by every part of the solver.

Lengths are normalized so that the Attacker and Defender move at unit
speed and the Target at speed ``alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .errors import DegenerateGeometryError

COINCIDENCE_TOL = 1e-12


class Point2(NamedTuple):
    x: float
    y: float

    def dist(self, other) -> float:
        return math.hypot(self.x - other[0], self.y - other[1])


@dataclass(frozen=True)
class Heading:
    """Direction of motion; ``cos``/``sin`` are cached alongside the angle."""

    angle: float
    cos: float
    sin: float

    @classmethod
    def from_angle(cls, angle: float) -> Heading:
        a = math.atan2(math.sin(angle), math.cos(angle))
        return cls(a, math.cos(a), math.sin(a))

    @classmethod
    def from_vector(cls, dx: float, dy: float) -> Heading:
        n = math.hypot(dx, dy)
        if n < COINCIDENCE_TOL:
            raise DegenerateGeometryError("zero-length direction vector")
        return cls(math.atan2(dy, dx), dx / n, dy / n)

    @property
    def vector(self) -> tuple[float, float]:
        return (self.cos, self.sin)


@dataclass(frozen=True)
class GameState:
    """Positions of Target, Attacker and Defender plus the speed ratio."""

    xT: float
    yT: float
    xA: float
    yA: float
    xD: float
    yD: float
    alpha: float

    def __post_init__(self):
        vals = (self.xT, self.yT, self.xA, self.yA, self.xD, self.yD, self.alpha)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"non-finite state component in {vals}")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"speed ratio must satisfy 0 <= alpha < 1, got {self.alpha}")

    @property
    def T(self) -> Point2:
        return Point2(self.xT, self.yT)

    @property
    def A(self) -> Point2:
        return Point2(self.xA, self.yA)

    @property
    def D(self) -> Point2:
        return Point2(self.xD, self.yD)

    def positions(self) -> np.ndarray:
        """The six coordinates in (xT, yT, xA, yA, xD, yD) order."""
        return np.array([self.xT, self.yT, self.xA, self.yA, self.xD, self.yD])

    @classmethod
    def from_positions(cls, pos, alpha: float) -> GameState:
        return cls(*(float(p) for p in pos), alpha=float(alpha))

    @classmethod
    def from_points(cls, T, A, D, alpha: float) -> GameState:
        return cls(float(T[0]), float(T[1]), float(A[0]), float(A[1]),
                   float(D[0]), float(D[1]), float(alpha))

    def with_target(self, T) -> GameState:
        return replace(self, xT=float(T[0]), yT=float(T[1]))

    def rigid_motion(self, angle: float, shift=(0.0, 0.0), center=(0.0, 0.0)) -> GameState:
        """Rotate all agents by ``angle`` about ``center``, then translate by ``shift``."""
        pts = [rigid_motion_point(p, angle, shift, center) for p in (self.T, self.A, self.D)]
        return GameState.from_points(*pts, alpha=self.alpha)

    def to_dict(self) -> dict:
        return {"T": [self.xT, self.yT], "A": [self.xA, self.yA],
                "D": [self.xD, self.yD], "alpha": self.alpha}


def rigid_motion_point(p, angle: float, shift=(0.0, 0.0), center=(0.0, 0.0)) -> Point2:
    c, s = math.cos(angle), math.sin(angle)
    dx, dy = p[0] - center[0], p[1] - center[1]
    return Point2(center[0] + c * dx - s * dy + shift[0],
                  center[1] + s * dx + c * dy + shift[1])


@dataclass(frozen=True)
class ApolloniusCircle:
    """Locus of points the Target reaches exactly when the Attacker does."""

    xc: float
    yc: float
    r: float

    @property
    def center(self) -> Point2:
        return Point2(self.xc, self.yc)

    def point_at(self, omega: float) -> Point2:
        return Point2(self.xc + self.r * math.cos(omega), self.yc + self.r * math.sin(omega))


@dataclass(frozen=True)
class Line:
    """Infinite line through ``point`` along the unit vector ``direction``."""

    point: Point2
    direction: tuple[float, float]

    def at(self, s: float) -> Point2:
        return Point2(self.point.x + s * self.direction[0], self.point.y + s * self.direction[1])

    def signed_distance(self, p) -> float:
        # positive on the left of the direction of travel
        ux, uy = self.direction
        return ux * (p[1] - self.point.y) - uy * (p[0] - self.point.x)


def apollonius(state: GameState) -> ApolloniusCircle:
    a2 = state.alpha * state.alpha
    k = 1.0 / (1.0 - a2)
    return ApolloniusCircle(
        xc=k * (state.xT - a2 * state.xA),
        yc=k * (state.yT - a2 * state.yA),
        r=state.alpha * k * math.hypot(state.xT - state.xA, state.yT - state.yA),
    )


def los_angle(frm, to) -> Heading:
    """Line-of-sight bearing from ``frm`` toward ``to``."""
    try:
        return Heading.from_vector(to[0] - frm[0], to[1] - frm[1])
    except DegenerateGeometryError:
        raise DegenerateGeometryError(f"LOS undefined: {tuple(frm)} and {tuple(to)} coincide") from None


def orthogonal_bisector(a, d) -> Line:
    """Perpendicular bisector of segment a-d.

    The direction is the a->d unit vector rotated by +90 degrees, so the
    line parameter has a fixed orientation relative to the segment.
    """
    dx, dy = d[0] - a[0], d[1] - a[1]
    n = math.hypot(dx, dy)
    if n < COINCIDENCE_TOL:
        raise DegenerateGeometryError("bisector undefined: endpoints coincide")
    mid = Point2(0.5 * (a[0] + d[0]), 0.5 * (a[1] + d[1]))
    return Line(mid, (-dy / n, dx / n))
