"""Seeded random state generators used by the verification driver and tests."""

from __future__ import annotations

import math

import numpy as np

from .cdg import solve_aimpoint
from .errors import TadError
from .geometry import GameState
from .kind import Region, classify, project_to_barrier

BOX = 10.0
MIN_SEPARATION = 0.5


def _separated(s: GameState, min_sep: float) -> bool:
    T, A, D = s.T, s.A, s.D
    return min(T.dist(A), T.dist(D), A.dist(D)) > min_sep


def random_state(rng: np.random.Generator, alpha_range=(0.05, 0.95), box=BOX) -> GameState:
    pos = rng.uniform(-box, box, size=6)
    return GameState.from_positions(pos, rng.uniform(*alpha_range))


def random_rc_states(rng: np.random.Generator, n: int, margin: float = 1e-3,
                     alpha_range=(0.05, 0.95)) -> list[GameState]:
    """States strictly inside R_c by rejection sampling.

    ``margin`` is the required Barrier value relative to dist(A,D)**2, which
    keeps finite-difference probes from straddling the Barrier.
    """
    out = []
    while len(out) < n:
        s = random_state(rng, alpha_range)
        if not _separated(s, MIN_SEPARATION):
            continue
        rep = classify(s)
        if rep.region != Region.R_C or rep.barrier_value < margin * s.A.dist(s.D) ** 2:
            continue
        out.append(s)
    return out


def random_barrier_states(rng: np.random.Generator, n: int,
                          alpha_range=(0.05, 0.95)) -> list[GameState]:
    """States on the Barrier: random A, D, alpha and a Target projected onto B = 0."""
    out = []
    while len(out) < n:
        s = random_state(rng, alpha_range)
        if not _separated(s, MIN_SEPARATION):
            continue
        try:
            b = project_to_barrier(s)
        except TadError:
            continue
        if not _separated(b, MIN_SEPARATION) or classify(b).region != Region.ON_BARRIER:
            continue
        out.append(b)
    return out


def horizontal_aim_state(state: GameState) -> GameState:
    """Rigidly rotate ``state`` about its Apollonius center so the capture point
    sits level with the center (``y* == yc``), exercising the rotated-frame path
    of the derivative formulas."""
    aim = solve_aimpoint(state)
    c = aim.circle
    ang = math.atan2(aim.point.y - c.yc, aim.point.x - c.xc)
    return state.rigid_motion(-ang, center=c.center)
