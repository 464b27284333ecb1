"""Engagement simulator.

Headings are recomputed from the current state at every step and held
constant over the step, so each step is an exact straight-line move.
Termination is detected inside the step from the closest approach of the
Attacker to the Target and to the Defender.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .errors import DegenerateGeometryError
from .geometry import COINCIDENCE_TOL, GameState, Heading, Point2, los_angle
from .kind import ON_BARRIER_REL_TOL, Region


class AttackerStrategy(str, enum.Enum):
    CDG_OPTIMAL = "CdgOptimal"
    PURE_PURSUIT = "PurePursuit"
    FIXED_HEADING = "FixedHeading"


class TeamStrategy(str, enum.Enum):
    CDG_OPTIMAL = "CdgOptimal"
    REGION_SWITCHING = "RegionSwitching"
    FIXED_HEADINGS = "FixedHeadings"


class Verdict(str, enum.Enum):
    ATTACKER_WINS = "AttackerWins"
    TEAM_WINS = "TeamWins"
    TIMEOUT = "Timeout"


@dataclass(frozen=True)
class StrategySpec:
    attacker: AttackerStrategy = AttackerStrategy.CDG_OPTIMAL
    team: TeamStrategy = TeamStrategy.CDG_OPTIMAL
    attacker_heading: float = 0.0  # used by FixedHeading
    target_heading: float = 0.0  # used by FixedHeadings
    defender_heading: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "attacker", AttackerStrategy(self.attacker))
        object.__setattr__(self, "team", TeamStrategy(self.team))


@dataclass(frozen=True)
class SimConfig:
    dt: float = 1e-3
    capture_radius: float = 1e-3
    max_time: float = 50.0
    # absolute band for the Barrier sign; None means 1e-9 * dist(A,D)**2 at t = 0
    on_barrier_tol: float | None = None

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not self.capture_radius > 0:
            raise ValueError(f"capture_radius must be positive, got {self.capture_radius}")
        if not self.max_time > 0:
            raise ValueError(f"max_time must be positive, got {self.max_time}")
        if self.on_barrier_tol is not None and not self.on_barrier_tol > 0:
            raise ValueError("on_barrier_tol must be positive")

    @property
    def max_steps(self) -> int:
        return int(math.ceil(self.max_time / self.dt - 1e-9))


@dataclass
class Sample:
    t: float
    state: GameState
    phi: float
    psi: float
    chi: float
    barrier_value: float
    region: Region
    value: float  # nan outside the capture game's domain
    aim: tuple[float, float]  # capture point, nan outside the capture game's domain
    team_mode: str
    post_ed: bool = False


@dataclass(frozen=True)
class Event:
    t: float
    kind: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"t": self.t, "kind": self.kind, "detail": self.detail}


@dataclass
class Trajectory:
    samples: list[Sample]
    verdict: Verdict
    simultaneous: bool = False
    t_capture: float = math.nan  # closest-approach instants of the terminal step
    t_intercept: float = math.nan
    events: list[Event] = field(default_factory=list)

    @property
    def final(self) -> Sample:
        return self.samples[-1]

    @property
    def terminal_dt_distance(self) -> float:
        s = self.final.state
        return math.hypot(s.xD - s.xT, s.yD - s.yT)

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(s, name) for s in self.samples], dtype=float)

    def positions(self) -> np.ndarray:
        return np.array([s.state.positions() for s in self.samples])

    def events_of(self, kind: str) -> list[Event]:
        return [e for e in self.events if e.kind == kind]


def step(state: GameState, headings, dt: float) -> GameState:
    """Advance all agents along (phi, psi, chi) = (Target, Defender, Attacker) headings."""
    phi, psi, chi = (h.angle if isinstance(h, Heading) else float(h) for h in headings)
    a = state.alpha
    return GameState(state.xT + a * dt * math.cos(phi), state.yT + a * dt * math.sin(phi),
                     state.xA + dt * math.cos(chi), state.yA + dt * math.sin(chi),
                     state.xD + dt * math.cos(psi), state.yD + dt * math.sin(psi), a)


def pure_pursuit_heading(state: GameState) -> Heading:
    """Attacker heads at the Target's current position."""
    return los_angle(state.A, state.T)


def _toward(fx, fy, tx, ty, keep):
    dx, dy = tx - fx, ty - fy
    if math.hypot(dx, dy) < COINCIDENCE_TOL:
        return keep
    return math.atan2(dy, dx)


def _region(B, margin, tol) -> Region:
    if margin >= 0.0:
        return Region.R_ED
    if B < -tol:
        return Region.R_EA
    if B > tol:
        return Region.R_C
    return Region.ON_BARRIER


class _Controller:
    """Turns the current state into headings according to a StrategySpec."""

    def __init__(self, strat: StrategySpec, initial: GameState, tol: float):
        self.strat = strat
        self.tol = tol
        self.phi = self.psi = self.chi = 0.0
        self.mode = {TeamStrategy.CDG_OPTIMAL: "cdg", TeamStrategy.FIXED_HEADINGS: "fixed",
                     TeamStrategy.REGION_SWITCHING: None}[strat.team]
        self.last_aim = None
        self.defender_chasing = False
        self.chi = self._initial_chi(initial)

    def _initial_chi(self, s):
        return _toward(s.xA, s.yA, s.xT, s.yT, 0.0)

    def __call__(self, s: GameState, B: float, region: Region, cdg, events, t):
        strat = self.strat
        a = s.alpha
        # capture-point based headings, when the capture game has a solution
        ok = cdg is not None and cdg[0] == kernels.OK
        if ok:
            ix, iy = cdg[1], cdg[2]

        if strat.attacker == AttackerStrategy.CDG_OPTIMAL:
            if ok:
                self.chi = _toward(s.xA, s.yA, ix, iy, self.chi)
            else:
                self.chi = _toward(s.xA, s.yA, s.xT, s.yT, self.chi)
        elif strat.attacker == AttackerStrategy.PURE_PURSUIT:
            self.chi = _toward(s.xA, s.yA, s.xT, s.yT, self.chi)
        else:
            self.chi = strat.attacker_heading

        if strat.team == TeamStrategy.FIXED_HEADINGS:
            self.phi, self.psi = strat.target_heading, strat.defender_heading
            return
        if strat.team == TeamStrategy.CDG_OPTIMAL:
            if ok:
                self._aim_team(s, ix, iy)
            else:
                self._fallback(s)
            return

        # region switching with a dead band around B = 0
        if self.mode is None:
            self.mode = ("fallback" if region == Region.R_ED
                         else "cdg" if B > self.tol else "atddg")
        new_mode = self.mode
        if region == Region.R_ED:
            new_mode = "fallback"
        elif self.mode == "cdg" and B < -self.tol:
            new_mode = "atddg"
        elif self.mode == "atddg" and B > self.tol:
            new_mode = "cdg"
        elif self.mode == "fallback":
            new_mode = "cdg" if B > self.tol else "atddg"
        if new_mode != self.mode:
            events.append(Event(t, "strategy_switch", f"{self.mode}->{new_mode}"))
            self.mode = new_mode
        if self.mode == "cdg" and ok:
            self._aim_team(s, ix, iy)
            return
        if self.mode == "atddg":
            st, x, y, *_ = kernels.atddg_aim(s.xT, s.yT, s.xA, s.yA, s.xD, s.yD, a)
            if st == kernels.OK:
                self._aim_team(s, x, y)
                return
            events.append(Event(t, "solver_failure", "escape aimpoint"))
        elif self.mode == "cdg":
            events.append(Event(t, "solver_failure", "capture point"))
        self._fallback(s)

    def _aim_team(self, s, x, y):
        self.last_aim = (x, y)
        self.defender_chasing = False
        self.phi = _toward(s.xT, s.yT, x, y, self.phi)
        self.psi = _toward(s.xD, s.yD, x, y, self.psi)

    def _fallback(self, s):
        # Target runs straight away from the Attacker; the Defender keeps
        # heading for the last aimpoint and then chases the Attacker
        self.phi = _toward(s.xA, s.yA, s.xT, s.yT, self.phi)
        if self.last_aim is not None and not self.defender_chasing:
            if math.hypot(self.last_aim[0] - s.xD, self.last_aim[1] - s.yD) > 1e-9:
                self.psi = _toward(s.xD, s.yD, self.last_aim[0], self.last_aim[1], self.psi)
                return
            self.defender_chasing = True
        self.psi = _toward(s.xD, s.yD, s.xA, s.yA, self.psi)


def _crossing_time(t0, f0, t1, f1):
    if f1 == f0:
        return t1
    return t0 + (t1 - t0) * f0 / (f0 - f1)


def simulate(initial: GameState, strat: StrategySpec | None = None,
             cfg: SimConfig | None = None) -> Trajectory:
    strat = StrategySpec() if strat is None else strat
    cfg = SimConfig() if cfg is None else cfg
    sd0 = math.hypot(initial.xA - initial.xD, initial.yA - initial.yD)
    if sd0 < COINCIDENCE_TOL:
        raise DegenerateGeometryError("Attacker and Defender coincide")
    tol = ON_BARRIER_REL_TOL * sd0 * sd0 if cfg.on_barrier_tol is None else cfg.on_barrier_tol
    a = initial.alpha
    ctl = _Controller(strat, initial, tol)
    need_cdg = (strat.attacker == AttackerStrategy.CDG_OPTIMAL
                or strat.team != TeamStrategy.FIXED_HEADINGS)

    samples: list[Sample] = []
    events: list[Event] = []
    s = initial
    prev = None  # (t, B, margin)
    post_ed = False
    b_sign = None
    dt = cfg.dt
    for k in range(cfg.max_steps + 1):
        t = k * dt
        args = (s.xT, s.yT, s.xA, s.yA, s.xD, s.yD, a)
        B = kernels.barrier_value(*args)
        margin = (math.hypot(s.xA - s.xT, s.yA - s.yT) - math.hypot(s.xD - s.xT, s.yD - s.yT))
        region = _region(B, margin, tol)
        if abs(B) > tol:
            # a crossing is logged once B leaves the dead band on the other side
            if b_sign is not None and (B > 0.0) != b_sign and prev is not None:
                events.append(Event(_crossing_time(prev[0], prev[1], t, B), "barrier_crossing",
                                    "into R_c" if B > 0.0 else "out of R_c"))
            b_sign = B > 0.0
        if prev is not None:
            if (prev[2] >= 0.0) != (margin >= 0.0):
                events.append(Event(_crossing_time(prev[0], prev[2], t, margin),
                                    "ed_entry" if margin >= 0.0 else "ed_exit"))
        if margin >= 0.0:
            post_ed = True
        prev = (t, B, margin)

        cdg = kernels.cdg_aim(*args) if need_cdg else None
        if cdg is not None and cdg[0] != kernels.OK and region in (Region.R_C, Region.ON_BARRIER):
            events.append(Event(t, "solver_failure", "capture point"))
        ctl(s, B, region, cdg, events, t)

        if region in (Region.R_C, Region.ON_BARRIER) and cdg is not None and cdg[0] == kernels.OK:
            V, aim = cdg[4], (cdg[1], cdg[2])
        else:
            V, aim = math.nan, (math.nan, math.nan)
        samples.append(Sample(t, s, ctl.phi, ctl.psi, ctl.chi, B, region, V, aim, ctl.mode, post_ed))
        if k == cfg.max_steps:
            break

        vT = (a * math.cos(ctl.phi), a * math.sin(ctl.phi))
        vA = (math.cos(ctl.chi), math.sin(ctl.chi))
        vD = (math.cos(ctl.psi), math.sin(ctl.psi))
        code, tau, tc, ti = kernels.termination(s.xT, s.yT, s.xA, s.yA, s.xD, s.yD,
                                                *vT, *vA, *vD, dt, cfg.capture_radius)
        if code != kernels.RUNNING:
            end = GameState(s.xT + tau * vT[0], s.yT + tau * vT[1], s.xA + tau * vA[0],
                            s.yA + tau * vA[1], s.xD + tau * vD[0], s.yD + tau * vD[1], a)
            B_end = kernels.barrier_value(end.xT, end.yT, end.xA, end.yA, end.xD, end.yD, a) \
                if math.hypot(end.xA - end.xD, end.yA - end.yD) > COINCIDENCE_TOL else math.nan
            m_end = (math.hypot(end.xA - end.xT, end.yA - end.yT)
                     - math.hypot(end.xD - end.xT, end.yD - end.yT))
            last = samples[-1]
            samples.append(Sample(t + tau, end, last.phi, last.psi, last.chi, B_end,
                                  _region(B_end, m_end, tol) if math.isfinite(B_end) else last.region,
                                  last.value, last.aim, last.team_mode, post_ed or m_end >= 0.0))
            verdict = Verdict.TEAM_WINS if code == kernels.TEAM_WINS else Verdict.ATTACKER_WINS
            simultaneous = code == kernels.SIMULTANEOUS
            events.append(Event(t + tau, "termination",
                                verdict.value + (" (simultaneous)" if simultaneous else "")))
            return Trajectory(samples, verdict, simultaneous, t + tc, t + ti, events)
        s = GameState(s.xT + dt * vT[0], s.yT + dt * vT[1], s.xA + dt * vA[0],
                      s.yA + dt * vA[1], s.xD + dt * vD[0], s.yD + dt * vD[1], a)
    return Trajectory(samples, Verdict.TIMEOUT, events=events)


def aim_point(sample: Sample) -> Point2:
    return Point2(*sample.aim)
