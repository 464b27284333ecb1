"""Capture game in the Attacker's winning region.

Under optimal play all three agents head in straight lines to a single
capture point ``I*`` on the Apollonius circle.  ``I*`` is found as a unit
modulus root of a degree-6 self-inversive polynomial in ``v = exp(i w)``.
The rest of the module provides the Value, its analytic gradient, the
co-states and residuals used to check the Hamilton-Jacobi-Isaacs equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from scipy.optimize import bisect, minimize_scalar

from ._backend import kernels
from .errors import DegenerateGeometryError, RegionError, SolverFailure
from .geometry import (COINCIDENCE_TOL, ApolloniusCircle, GameState, Heading, Point2,
                       apollonius, los_angle)
from .kind import Region, classify

CDG_REGIONS = (Region.R_C, Region.ON_BARRIER)
# relative size of |y* - yc| (against r) below which derivative formulas are
# evaluated in a frame turned by 90 degrees
ROTATION_TRIGGER = 1e-6


@dataclass(frozen=True)
class CdgPolynomial:
    coeffs: np.ndarray  # coeffs[k] multiplies v**k
    a0: float
    b0: float
    a1: float
    b1: float
    a2: float
    b2: float
    a3: float
    circle: ApolloniusCircle

    @property
    def r(self) -> float:
        return self.circle.r

    def __call__(self, v):
        return np.polyval(self.coeffs[::-1], v)

    def roots(self) -> list[complex]:
        return kernels.polynomial_roots(tuple(complex(c) for c in self.coeffs))

    def self_inversive_error(self) -> float:
        c = self.coeffs
        scale = float(np.max(np.abs(c)))
        if scale == 0.0:
            return 0.0
        err = max(abs(c[k] - np.conj(c[6 - k])) for k in range(3))
        return float(max(err, abs(c[3].imag)) / scale)


@dataclass(frozen=True)
class AimpointSolution:
    point: Point2
    omega_star: float
    time_to_go: float
    value: float
    residual_eq58: float
    root_count: int
    circle: ApolloniusCircle
    raw_roots: tuple = field(default=(), repr=False, compare=False)

    def to_dict(self) -> dict:
        return {"aimpoint": [self.point.x, self.point.y], "omega_star": self.omega_star,
                "time_to_go": self.time_to_go, "value": self.value,
                "residual_eq58": self.residual_eq58, "root_count": self.root_count}


@dataclass(frozen=True)
class Costate:
    lxA: float
    lyA: float
    lxD: float
    lyD: float
    lxT: float
    lyT: float

    def as_array(self) -> np.ndarray:
        """In state order (T, A, D)."""
        return np.array([self.lxT, self.lyT, self.lxA, self.lyA, self.lxD, self.lyD])


class Headings(NamedTuple):
    phi: Heading  # Target
    psi: Heading  # Defender
    chi: Heading  # Attacker


def _args(state: GameState):
    return (state.xT, state.yT, state.xA, state.yA, state.xD, state.yD, state.alpha)


def _require_region(state: GameState, allowed=CDG_REGIONS, what="capture game"):
    rep = classify(state)
    if rep.region not in allowed:
        raise RegionError(f"state in {rep.region.value}: {what} not applicable", rep.region)
    return rep


def cdg_polynomial(state: GameState) -> CdgPolynomial:
    coeffs, ab, (xc, yc, r) = kernels.cdg_coefficients(*_args(state))
    if r <= COINCIDENCE_TOL:
        raise DegenerateGeometryError("Apollonius circle has collapsed to a point")
    return CdgPolynomial(np.array(coeffs, dtype=complex), *ab, circle=ApolloniusCircle(xc, yc, r))


def _solution(state, x, y, w, value, res, count, circle, roots=()) -> AimpointSolution:
    ti = math.hypot(x - state.xT, y - state.yT)
    return AimpointSolution(point=Point2(x, y), omega_star=w, time_to_go=ti / state.alpha,
                            value=value, residual_eq58=res, root_count=count,
                            circle=circle, raw_roots=tuple(roots))


def solve_aimpoint(state: GameState, check_region: bool = True) -> AimpointSolution:
    """Optimal capture point from the unit-circle roots of the capture polynomial.

    Candidates are polished, filtered by the unsquared stationarity residual
    and the one giving the smallest Value (terminal Defender-Target distance)
    is returned.
    """
    if check_region:
        _require_region(state)
    poly = cdg_polynomial(state)
    c = poly.circle
    roots = poly.roots()
    st, x, y, w, value, res, count = kernels.select_aimpoint(
        roots, *_args(state), c.xc, c.yc, c.r)
    if st != kernels.OK:
        raise SolverFailure("no admissible capture point among polynomial roots",
                            roots=roots, state=state.to_dict())
    return _solution(state, x, y, w, value, res, count, c, roots)


def candidate_solutions(state: GameState) -> list[AimpointSolution]:
    """Every admissible stationary capture point, sorted by Value.

    The first entry is the one ``solve_aimpoint`` returns.  When the two
    smallest Values coincide the Value has a kink there (a dispersal
    configuration) and its gradient is undefined.
    """
    poly = cdg_polynomial(state)
    c = poly.circle
    roots = poly.roots()
    args = _args(state)
    out = []
    for v in roots:
        if abs(abs(v) - 1.0) > kernels.CANDIDATE_TOL:
            continue
        w = kernels.polish_angle(math.atan2(v.imag, v.real), c.xc, c.yc, c.r,
                                 state.xA, state.yA, state.xD, state.yD)
        x, y = c.xc + c.r * math.cos(w), c.yc + c.r * math.sin(w)
        res = kernels.eq58_residual(x, y, *args)
        if abs(res) > kernels.EQ58_TOL:
            continue
        w, res = kernels.refine_on_eq58(w, res, *args, c.xc, c.yc, c.r)
        x, y = c.xc + c.r * math.cos(w), c.yc + c.r * math.sin(w)
        if any(abs(math.remainder(w - q.omega_star, 2 * math.pi)) < kernels.DEDUP_TOL for q in out):
            continue
        value = math.hypot(x - state.xD, y - state.yD) - math.hypot(x - state.xT, y - state.yT) / state.alpha
        out.append(_solution(state, x, y, w, value, res, 0, c, roots))
    out.sort(key=lambda q: q.value)
    return [replace(q, root_count=len(out)) for q in out]


def dispersal_gap(state: GameState) -> float:
    """Value difference between the best and second-best capture points (inf if unique)."""
    cands = candidate_solutions(state)
    return cands[1].value - cands[0].value if len(cands) > 1 else math.inf


def _eq58_terms(x, y, state: GameState):
    xT, yT, xA, yA, xD, yD, a = _args(state)
    a2 = a * a
    ti = np.hypot(x - xT, y - yT)
    di = np.hypot(x - xD, y - yD)
    lhs = ti * ((x - xD) * (y - yT) - (x - xT) * (y - yD)
                - a2 * (x - xD) * (y - yA) + a2 * (x - xA) * (y - yD))
    rhs = a * di * ((x - xA) * (y - yT) - (x - xT) * (y - yA))
    r = apollonius(state).r
    norm = r * math.hypot(xA - xD, yA - yD) * (ti + di)
    return lhs, rhs, norm


def eq58_residual(point, state: GameState) -> float:
    """Unsquared stationarity residual, divided by r * dist(A,D) * (TI + DI)."""
    return kernels.eq58_residual(point[0], point[1], *_args(state))


def eq20_residual(point, state: GameState) -> float:
    """Squared form of the stationarity condition, normalized like ``eq58_residual`` squared."""
    lhs, rhs, norm = _eq58_terms(point[0], point[1], state)
    return float((lhs * lhs - rhs * rhs) / (norm * norm))


def oracle_aimpoint(state: GameState, samples: int = 100_000,
                    check_region: bool = True) -> AimpointSolution:
    """Brute-force capture point: sweep the circle angle, bracket and bisect.

    Independent of the polynomial.  Sign changes of the unsquared residual
    are bisected to 1e-12; grid minima of |residual| that touch zero without
    a sign change (tangential roots on the Barrier) are refined by bounded
    minimization.
    """
    if samples < 10:
        raise ValueError("samples must be at least 10")
    if check_region:
        _require_region(state)
    c = apollonius(state)
    if c.r <= COINCIDENCE_TOL:
        raise DegenerateGeometryError("Apollonius circle has collapsed to a point")

    def f(w):
        lhs, rhs, norm = _eq58_terms(c.xc + c.r * np.cos(w), c.yc + c.r * np.sin(w), state)
        return (lhs - rhs) / norm

    h = 2.0 * math.pi / samples
    w = np.arange(samples + 1) * h
    fv = f(w)
    found = []
    for k in np.nonzero(fv[:-1] * fv[1:] <= 0.0)[0]:
        if fv[k] == 0.0:
            found.append(w[k])
        elif fv[k + 1] != 0.0:
            found.append(bisect(f, w[k], w[k + 1], xtol=1e-12))
    af = np.abs(fv)
    for k in np.nonzero((af[1:-1] < af[:-2]) & (af[1:-1] < af[2:]))[0] + 1:
        if fv[k - 1] * fv[k] > 0.0 and fv[k] * fv[k + 1] > 0.0:
            m = minimize_scalar(lambda u: abs(float(f(u))), bounds=(w[k - 1], w[k + 1]),
                                method="bounded", options={"xatol": 1e-12})
            if abs(m.fun) < 1e-10:
                found.append(m.x)
    cands = []
    for wk in found:
        wk = math.atan2(math.sin(wk), math.cos(wk))
        if any(abs(math.atan2(math.sin(wk - q[0]), math.cos(wk - q[0]))) < 1e-9 for q in cands):
            continue
        x, y = c.point_at(wk)
        value = math.hypot(x - state.xD, y - state.yD) - math.hypot(x - state.xT, y - state.yT) / state.alpha
        cands.append((wk, x, y, value))
    if not cands:
        raise SolverFailure("oracle sweep found no stationary point", samples=samples)
    wk, x, y, value = min(cands, key=lambda q: q[3])
    res = eq58_residual((x, y), state)
    return _solution(state, x, y, wk, value, res, len(cands), c)


def optimal_headings(state: GameState, aim: AimpointSolution) -> Headings:
    """Each agent heads straight at the capture point."""
    I = aim.point
    return Headings(phi=los_angle(state.T, I), psi=los_angle(state.D, I), chi=los_angle(state.A, I))


def value(state: GameState) -> float:
    return solve_aimpoint(state).value


def _rotated(state: GameState, aim: AimpointSolution, angle: float):
    center = aim.circle.center
    s = state.rigid_motion(angle, center=center)
    c, sn = math.cos(angle), math.sin(angle)
    dx, dy = aim.point.x - center.x, aim.point.y - center.y
    I = Point2(center.x + c * dx - sn * dy, center.y + sn * dx + c * dy)
    return s, I, center


def _rotate_blocks_back(vec, angle):
    # covector blocks transform with the transpose of the rotation
    c, s = math.cos(angle), math.sin(angle)
    out = np.empty(6)
    for k in range(3):
        gx, gy = vec[2 * k], vec[2 * k + 1]
        out[2 * k] = c * gx + s * gy
        out[2 * k + 1] = -s * gx + c * gy
    return out


def _gradient_formula(state: GameState, I, center) -> np.ndarray:
    xT, yT, xA, yA, xD, yD, a = _args(state)
    x, y = I
    ti = math.hypot(x - xT, y - yT)
    ai = math.hypot(x - xA, y - yA)
    di = math.hypot(x - xD, y - yD)
    k = 1.0 / ((1.0 - a * a) * (y - center[1]))
    qa = a * k * ((y - yT) / ti - a * (y - yD) / di)
    qt = k * ((y - yD) / di - (y - yA) / ai)
    return np.array([(x - xT) * qt, (y - yT) * qt,
                     (x - xA) * qa, (y - yA) * qa,
                     -(x - xD) / di, -(y - yD) / di])


def value_gradient(state: GameState, aim: AimpointSolution | None = None,
                   return_rotated: bool = False, one_sided: bool = False):
    """Analytic gradient of the Value in state order (T, A, D).

    The closed form divides by ``y* - yc``; when that is small relative to the
    radius the formula is applied in a frame turned by 90 degrees about the
    Apollonius center and the result is rotated back.  Barrier states are
    rejected unless ``one_sided`` asks for the limit taken from inside R_c.
    """
    allowed = CDG_REGIONS if one_sided else (Region.R_C,)
    _require_region(state, allowed, "Value gradient")
    aim = solve_aimpoint(state, check_region=False) if aim is None else aim
    c = aim.circle
    rotated = abs(aim.point.y - c.yc) < ROTATION_TRIGGER * c.r
    if rotated:
        s, I, center = _rotated(state, aim, math.pi / 2)
        g = _rotate_blocks_back(_gradient_formula(s, I, center), math.pi / 2)
    else:
        g = _gradient_formula(state, aim.point, c.center)
    return (g, rotated) if return_rotated else g


def _costate_formula(state: GameState, I, tol):
    xT, yT, xA, yA, xD, yD, _ = _args(state)
    x, y = I
    if abs(y - yT) < tol or abs(y - yA) < tol:
        return None
    di = math.hypot(xD - x, yD - y)
    mt = (x - xT) / (y - yT)
    ma = (x - xA) / (y - yA)
    num_a = x - xD - mt * (y - yD)
    den_a = x - xA - mt * (y - yA)
    num_t = x - xD - ma * (y - yD)
    den_t = ma * (y - yT) - (x - xT)
    if abs(den_a) < tol or abs(den_t) < tol:
        return None
    fa = num_a / den_a / di
    ft = num_t / den_t / di
    return np.array([(xT - x) * ft, (yT - y) * ft,
                     (x - xA) * fa, (y - yA) * fa,
                     (xD - x) / di, (yD - y) / di])


def costate(state: GameState, aim: AimpointSolution | None = None) -> Costate:
    """Co-states expressed through the current state and the capture point.

    The closed form divides by ``y - yT`` and ``y - yA``; when either is
    (nearly) zero the evaluation is retried in rotated frames.  If the
    Attacker, Target and capture point are collinear no frame helps and a
    ``DegenerateGeometryError`` is raised.
    """
    aim = solve_aimpoint(state) if aim is None else aim
    scale = max(aim.circle.r, math.hypot(state.xA - state.xD, state.yA - state.yD))
    tol = 1e-9 * scale
    for angle in (0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4):
        if angle == 0.0:
            lam = _costate_formula(state, aim.point, tol)
        else:
            s, I, _ = _rotated(state, aim, angle)
            lam = _costate_formula(s, I, tol)
            if lam is not None:
                lam = _rotate_blocks_back(lam, angle)
        if lam is not None:
            lam = [float(v) for v in lam]
            return Costate(lxA=lam[2], lyA=lam[3], lxD=lam[4], lyD=lam[5], lxT=lam[0], lyT=lam[1])
    raise DegenerateGeometryError("co-states undefined: Attacker, Target and capture point are collinear")


def dynamics(state: GameState, headings: Headings) -> np.ndarray:
    """Velocity of (T, A, D) in state order."""
    a = state.alpha
    return np.array([a * headings.phi.cos, a * headings.phi.sin,
                     headings.chi.cos, headings.chi.sin,
                     headings.psi.cos, headings.psi.sin])


def hamiltonian(lam: Costate, headings: Headings, alpha: float) -> float:
    return (lam.lxA * headings.chi.cos + lam.lyA * headings.chi.sin
            + lam.lxD * headings.psi.cos + lam.lyD * headings.psi.sin
            + alpha * (lam.lxT * headings.phi.cos + lam.lyT * headings.phi.sin))


def me_residual(state: GameState, aim: AimpointSolution | None = None) -> float:
    """Hamiltonian along optimal play; identically zero for the exact solution."""
    aim = solve_aimpoint(state) if aim is None else aim
    return hamiltonian(costate(state, aim), optimal_headings(state, aim), state.alpha)


def hji_residual(state: GameState, aim: AimpointSolution | None = None) -> float:
    """Directional derivative of the Value along the optimal dynamics.

    On the Barrier the gradient is the one-sided limit from R_c.
    """
    aim = solve_aimpoint(state, check_region=False) if aim is None else aim
    g = value_gradient(state, aim, one_sided=True)
    return float(g @ dynamics(state, optimal_headings(state, aim)))
