"""Winning-region classification.

The Barrier function ``B`` is a quadratic form in the Target position whose
zero set separates the Attacker's winning region (``B > 0``) from the
Target/Defender escape region (``B < 0``).  States where the Defender is
already at least as close to the Target as the Attacker form the trivial
escape subregion ``R_ed`` and are recognized before ``B`` is consulted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateGeometryError
from .geometry import COINCIDENCE_TOL, GameState, Point2, apollonius, orthogonal_bisector

# relative on-barrier band: |B| <= ON_BARRIER_REL_TOL * dist(A, D)**2
ON_BARRIER_REL_TOL = 1e-9


class Region(str, enum.Enum):
    R_ED = "R_ed"
    R_EA = "R_ea"
    R_C = "R_c"
    ON_BARRIER = "OnBarrier"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BarrierFrame:
    """Unit direction of A - D and the midpoint of the A-D segment."""

    cos_sigma: float
    sin_sigma: float
    x0: float
    y0: float


@dataclass(frozen=True)
class BarrierCoefficients:
    bxx: float
    byy: float
    bxy: float
    bx: float
    by: float
    b: float

    def evaluate(self, x, y):
        """B at Target position (x, y); works elementwise on arrays."""
        return (self.bxx * x * x + self.byy * y * y + 2.0 * self.bxy * x * y
                + 2.0 * self.bx * x + 2.0 * self.by * y + self.b)

    def gradient(self, x, y) -> tuple[float, float]:
        return (2.0 * (self.bxx * x + self.bxy * y + self.bx),
                2.0 * (self.byy * y + self.bxy * x + self.by))


@dataclass(frozen=True)
class RegionReport:
    barrier_value: float
    region: Region
    ed_margin: float
    tol: float

    def to_dict(self) -> dict:
        return {"barrier_value": self.barrier_value, "region": self.region.value,
                "ed_margin": self.ed_margin, "on_barrier_tol": self.tol}


def _ad_distance(state: GameState) -> float:
    s = math.hypot(state.xA - state.xD, state.yA - state.yD)
    if s < COINCIDENCE_TOL:
        raise DegenerateGeometryError("Attacker and Defender coincide")
    return s


def barrier_frame(state: GameState) -> BarrierFrame:
    s = _ad_distance(state)
    return BarrierFrame(
        cos_sigma=(state.xA - state.xD) / s,
        sin_sigma=(state.yA - state.yD) / s,
        x0=0.5 * (state.xA + state.xD),
        y0=0.5 * (state.yA + state.yD),
    )


def barrier_coefficients(state: GameState) -> BarrierCoefficients:
    f = barrier_frame(state)
    cs, sn = f.cos_sigma, f.sin_sigma
    xA, yA = state.xA, state.yA
    a2 = state.alpha * state.alpha
    ma = 1.0 - a2
    gx = a2 * xA + ma * f.x0
    gy = a2 * yA + ma * f.y0
    return BarrierCoefficients(
        bxx=cs * cs - a2,
        byy=sn * sn - a2,
        bxy=sn * cs,
        bx=a2 * xA * sn * sn - ma * f.x0 * cs * cs - gy * sn * cs,
        by=a2 * yA * cs * cs - ma * f.y0 * sn * sn - gx * sn * cs,
        b=(gy * sn + gx * cs) ** 2 - a2 * (xA * xA + yA * yA),
    )


def barrier_value(state: GameState) -> float:
    return float(barrier_coefficients(state).evaluate(state.xT, state.yT))


def ed_margin(state: GameState) -> float:
    """dist(A,T) - dist(D,T); non-negative means the Defender is already closer."""
    return (math.hypot(state.xA - state.xT, state.yA - state.yT)
            - math.hypot(state.xD - state.xT, state.yD - state.yT))


def tangency_gap(state: GameState) -> float:
    """Distance from the Apollonius center to the A-D bisector minus the radius.

    Independent geometric counterpart of ``barrier_value``: positive when the
    Target's dominance disc stays on the Attacker's side of the bisector.
    """
    circ = apollonius(state)
    line = orthogonal_bisector(state.A, state.D)
    return abs(line.signed_distance(circ.center)) - circ.r


def default_on_barrier_tol(state: GameState) -> float:
    s = _ad_distance(state)
    return ON_BARRIER_REL_TOL * s * s


def classify(state: GameState, on_barrier_tol: float | None = None) -> RegionReport:
    tol = default_on_barrier_tol(state) if on_barrier_tol is None else float(on_barrier_tol)
    if not tol > 0.0:
        raise ValueError("on_barrier_tol must be positive")
    B = barrier_value(state)
    m = ed_margin(state)
    if m >= 0.0:
        region = Region.R_ED
    elif B < -tol:
        region = Region.R_EA
    elif B > tol:
        region = Region.R_C
    else:
        region = Region.ON_BARRIER
    return RegionReport(barrier_value=B, region=region, ed_margin=m, tol=tol)


def region_grid(A, D, alpha: float, window, resolution):
    """Region labels on the node grid (rows follow y, columns follow x)."""
    xs, ys = _grid_axes(window, resolution)
    X, Y = np.meshgrid(xs, ys)
    probe = GameState(0.0, 0.0, float(A[0]), float(A[1]), float(D[0]), float(D[1]), alpha)
    coef = barrier_coefficients(probe)
    tol = default_on_barrier_tol(probe)
    Bv = coef.evaluate(X, Y)
    margin = np.hypot(A[0] - X, A[1] - Y) - np.hypot(D[0] - X, D[1] - Y)
    labels = np.where(Bv > tol, Region.R_C.value,
                      np.where(Bv < -tol, Region.R_EA.value, Region.ON_BARRIER.value))
    labels = np.where(margin >= 0.0, Region.R_ED.value, labels)
    return xs, ys, labels


def _grid_axes(window, resolution):
    xmin, xmax, ymin, ymax = (float(v) for v in window)
    if not (xmax > xmin and ymax > ymin):
        raise ValueError(f"empty window {window}")
    nx, ny = (int(n) for n in resolution)
    if nx < 2 or ny < 2:
        raise ValueError("resolution needs at least 2 nodes per axis")
    return np.linspace(xmin, xmax, nx), np.linspace(ymin, ymax, ny)


def barrier_cross_section(A, D, alpha: float, window, resolution=(201, 201),
                          tol: float = 1e-9) -> list[Point2]:
    """Target positions on the Barrier for fixed A, D and alpha.

    Every grid edge across which ``B`` changes sign is refined by bracketing
    root search.  Only points on the Attacker's side of the bisector are kept,
    which removes the irrelevant branch of the hyperbola.  Points come out in
    row-major order: horizontal edges of each row first, then the vertical
    edges leaving that row.
    """
    xs, ys = _grid_axes(window, resolution)
    probe = GameState(0.0, 0.0, float(A[0]), float(A[1]), float(D[0]), float(D[1]), alpha)
    coef = barrier_coefficients(probe)
    scale = _ad_distance(probe) ** 2
    X, Y = np.meshgrid(xs, ys)
    Bv = coef.evaluate(X, Y)
    xtol = 1e-14 * max(1.0, abs(xs).max(), abs(ys).max())

    out: list[Point2] = []

    def keep(x, y):
        if abs(coef.evaluate(x, y)) > tol * scale:
            return
        if math.hypot(A[0] - x, A[1] - y) - math.hypot(D[0] - x, D[1] - y) >= 0.0:
            return
        out.append(Point2(float(x), float(y)))

    for j, y in enumerate(ys):
        row = Bv[j]
        for i in range(len(xs) - 1):
            if row[i] == 0.0:
                keep(xs[i], y)
            elif row[i] * row[i + 1] < 0.0:
                x = brentq(lambda u: coef.evaluate(u, y), xs[i], xs[i + 1], xtol=xtol, rtol=1e-15)
                keep(x, y)
        if row[-1] == 0.0:
            keep(xs[-1], y)
        if j + 1 < len(ys):
            nxt = Bv[j + 1]
            for i, x in enumerate(xs):
                if row[i] * nxt[i] < 0.0:
                    yy = brentq(lambda v: coef.evaluate(x, v), y, ys[j + 1], xtol=xtol, rtol=1e-15)
                    keep(x, yy)
    return out


def _gauss_newton(coef: BarrierCoefficients, x, y, scale, max_iter):
    for _ in range(max_iter):
        B = coef.evaluate(x, y)
        if abs(B) < 1e-15 * scale:
            return x, y, True
        gx, gy = coef.gradient(x, y)
        g2 = gx * gx + gy * gy
        if g2 == 0.0:
            return x, y, False
        x -= B * gx / g2
        y -= B * gy / g2
    return x, y, abs(coef.evaluate(x, y)) < 1e-12 * scale


def _nearest_ray_hit(coef: BarrierCoefficients, x, y, rays=3600):
    """Closest zero of B along rays from (x, y); B is quadratic along each ray."""
    th = np.linspace(0.0, 2.0 * np.pi, rays, endpoint=False)
    ux, uy = np.cos(th), np.sin(th)
    gx, gy = coef.gradient(x, y)
    a = coef.bxx * ux * ux + coef.byy * uy * uy + 2.0 * coef.bxy * ux * uy
    b = gx * ux + gy * uy
    c = coef.evaluate(x, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        disc = b * b - 4.0 * a * c
        sq = np.sqrt(np.where(disc >= 0.0, disc, np.nan))
        lin = np.where(b != 0.0, -c / b, np.nan)
        t1 = np.where(np.abs(a) > 1e-300, (-b - sq) / (2.0 * a), lin)
        t2 = np.where(np.abs(a) > 1e-300, (-b + sq) / (2.0 * a), lin)
    t = np.fmin(np.where(t1 >= 0.0, t1, np.nan), np.where(t2 >= 0.0, t2, np.nan))
    if np.all(np.isnan(t)):
        return None
    k = int(np.nanargmin(t))
    return x + t[k] * ux[k], y + t[k] * uy[k]


def project_to_barrier(state: GameState, max_iter: int = 50) -> GameState:
    """Move the Target the shortest way onto B = 0.

    Gauss-Newton on the quadratic usually converges directly.  When it
    stalls (a start on a symmetry axis of the conic, where the gradient
    line misses the Barrier), the nearest zero along a fan of rays seeds a
    second Gauss-Newton pass.
    """
    coef = barrier_coefficients(state)
    scale = _ad_distance(state) ** 2
    x, y, ok = _gauss_newton(coef, state.xT, state.yT, scale, max_iter)
    if not ok:
        hit = _nearest_ray_hit(coef, state.xT, state.yT)
        if hit is None:
            raise DegenerateGeometryError("no point of the Barrier is reachable; cannot project")
        x, y, ok = _gauss_newton(coef, hit[0], hit[1], scale, max_iter)
        if not ok:
            raise DegenerateGeometryError("projection onto the Barrier did not converge")
    return state.with_target((x, y))
