"""Unilateral-deviation check of the saddle-point structure.

The payoff is the Defender-Target distance at the moment of capture.  With
the Attacker playing its optimal strategy, no Target/Defender deviation
should push the payoff below the Value; with the Target and Defender playing
optimally, no Attacker deviation that still ends in capture should lift it
above the Value.  Both claims are tested up to a slack of two time steps,
since strategies are sampled once per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._backend import kernels
from .cdg import optimal_headings, solve_aimpoint
from .geometry import GameState, apollonius

TEAM_SIDE = "team"
ATTACKER_SIDE = "attacker"
CAPTURED = (kernels.ATTACKER_WINS, kernels.SIMULTANEOUS)


@dataclass
class DeviationRun:
    state_index: int
    side: str
    kind: str
    params: tuple
    verdict: int
    payoff: float
    value: float

    @property
    def gap(self) -> float:
        """How far the deviation beat the Value (positive means it profited)."""
        if self.side == TEAM_SIDE:
            return self.value - self.payoff
        return self.payoff - self.value


@dataclass
class SaddleReport:
    dt: float
    slack: float
    states: list = field(default_factory=list)
    runs: list = field(default_factory=list)

    def violations(self, side=None) -> list:
        out = []
        for r in self.runs:
            if side is not None and r.side != side:
                continue
            if r.side == TEAM_SIDE and r.verdict not in CAPTURED:
                out.append(r)  # the optimal Attacker must still capture
            elif not math.isnan(r.payoff) and r.gap > self.slack:
                out.append(r)
        return out

    def counted(self, side) -> int:
        """Runs whose payoff was compared against the Value."""
        return sum(1 for r in self.runs if r.side == side and not math.isnan(r.payoff))

    def worst_gap(self, side) -> float:
        gaps = [r.gap for r in self.runs if r.side == side and not math.isnan(r.payoff)]
        return max(gaps) if gaps else -math.inf

    def summary(self) -> dict:
        out = {}
        for side in (TEAM_SIDE, ATTACKER_SIDE):
            bad = self.violations(side)
            out[side] = {"runs": sum(1 for r in self.runs if r.side == side),
                         "counted": self.counted(side),
                         "violations": len(bad),
                         "no_capture": sum(1 for r in bad if r.verdict not in CAPTURED),
                         "states_with_violations": len({r.state_index for r in bad}),
                         "worst_gap": self.worst_gap(side)}
        return out


def _rollout(s: GameState, amode, aparam, tmode, t1, t2, dt, eps, horizon):
    out = kernels.rollout(s.xT, s.yT, s.xA, s.yA, s.xD, s.yD, s.alpha,
                          amode, aparam, tmode, t1, t2, dt, eps, int(math.ceil(horizon / dt)))
    verdict = out[0]
    xT, yT, _, _, xD, yD = out[2:8]
    payoff = math.hypot(xD - xT, yD - yT) if verdict in CAPTURED else math.nan
    return verdict, payoff


def team_deviations(rng: np.random.Generator, phi0: float, psi0: float, n: int):
    """Constant Target/Defender headings: half near the optimal pair, half uniform."""
    out = []
    for k in range(n):
        if k < n // 2:
            d1, d2 = rng.normal(0.0, 0.3, size=2)
            out.append(("perturbed", phi0 + d1, psi0 + d2))
        else:
            a, b = rng.uniform(-math.pi, math.pi, size=2)
            out.append(("uniform", a, b))
    return out


def attacker_deviations(rng: np.random.Generator, chi0: float, n: int):
    """Pure pursuit once, then constant headings and rotated capture-circle aims."""
    out = [("pursuit", kernels.A_PURSUIT, 0.0)]
    rest = n - 1
    for k in range(rest):
        if k < rest // 2:
            out.append(("fixed", kernels.A_FIXED, chi0 + rng.normal(0.0, 0.3)))
        else:
            out.append(("aim_offset", kernels.A_AIM_OFFSET, rng.normal(0.0, 0.5)))
    return out


def team_horizon(s: GameState, dt: float) -> float:
    """Time budget for a team deviation to be captured.

    Aiming at the capture point does not close on a straight-running Target
    at the pure-pursuit rate 1 - alpha, so the pursuit bound is tripled.
    """
    return 3.0 * s.A.dist(s.T) / (1.0 - s.alpha) + 10 * dt


def saddle_check(states, deviations: int = 50, dt: float = 1e-2, eps: float | None = None,
                 seed: int = 0) -> SaddleReport:
    """Run ``deviations`` unilateral deviations per side from every state.

    Attacker deviations are cut at twice the optimal capture time: a run
    that has not captured by then has no payoff to compare, and a late
    capture could only favor the team.  The capture radius ``eps`` defaults
    to ``dt``: a smaller radius lets a unit-speed Attacker overshoot and
    orbit the Target forever.
    """
    if eps is None:
        eps = dt
    rng = np.random.default_rng(seed)
    rep = SaddleReport(dt=dt, slack=2.0 * dt, states=list(states))
    for i, s in enumerate(rep.states):
        aim = solve_aimpoint(s)
        V = aim.value
        h = optimal_headings(s, aim)
        th = team_horizon(s, dt)
        ah = 2.0 * aim.time_to_go + 10 * dt
        for kind, t1, t2 in team_deviations(rng, h.phi.angle, h.psi.angle, deviations):
            v, p = _rollout(s, kernels.A_OPTIMAL, 0.0, kernels.TEAM_FIXED, t1, t2, dt, eps, th)
            rep.runs.append(DeviationRun(i, TEAM_SIDE, kind, (t1, t2), v, p, V))
        for kind, amode, prm in attacker_deviations(rng, h.chi.angle, deviations):
            v, p = _rollout(s, amode, prm, kernels.TEAM_OPTIMAL, 0.0, 0.0, dt, eps, ah)
            rep.runs.append(DeviationRun(i, ATTACKER_SIDE, kind, (prm,), v, p, V))
    return rep


def replay_team_deviation(state: GameState, run: DeviationRun, dt: float = 1e-2) -> dict:
    """Replay a team deviation with the recording simulator and count branch switches.

    A switch is a jump of the optimal capture point by more than the
    Apollonius radius within one step, i.e. the minimizing capture point
    moving to another local minimum of the Value along the circle.
    """
    from .sim import SimConfig, StrategySpec, simulate

    if run.side != TEAM_SIDE:
        raise ValueError("only team deviations can be replayed")
    spec = StrategySpec("CdgOptimal", "FixedHeadings", target_heading=run.params[0],
                        defender_heading=run.params[1])
    traj = simulate(state, spec, SimConfig(dt=dt, max_time=team_horizon(state, dt)))
    switches = 0
    prev = None
    for smp in traj.samples:
        if smp.aim is None or math.isnan(smp.aim[0]):
            prev = None
            continue
        r = apollonius(smp.state).r
        if prev is not None and math.hypot(smp.aim[0] - prev[0], smp.aim[1] - prev[1]) > r:
            switches += 1
        prev = smp.aim
    vals = traj.column("value")
    first = next((k for k in range(1, len(vals)) if vals[k] < vals[0] - 2 * dt), None)
    return {"branch_switches": switches, "verdict": traj.verdict.value,
            "payoff": traj.terminal_dt_distance, "value": run.value,
            "min_value_along_run": float(np.nanmin(vals)),
            "value_first_drops_at": None if first is None else float(traj.samples[first].t)}
