"""Solver and simulator for the planar Target-Attacker-Defender game."""

from ._backend import BACKEND
from .bridge import (BisectorAimpoint, ConsistencyReport, atddg_aimpoint,
                     barrier_consistency_check, bisector_tangent_point)
from .cdg import (AimpointSolution, CdgPolynomial, Costate, Headings, cdg_polynomial, costate,
                  eq20_residual, eq58_residual, hamiltonian, hji_residual, me_residual,
                  optimal_headings, oracle_aimpoint, solve_aimpoint, value, value_gradient)
from .errors import DegenerateGeometryError, RegionError, SolverFailure, TadError
from .geometry import (ApolloniusCircle, GameState, Heading, Line, Point2, apollonius,
                       los_angle, orthogonal_bisector)
from .kind import (BarrierCoefficients, BarrierFrame, Region, RegionReport, barrier_coefficients,
                   barrier_cross_section, barrier_frame, barrier_value, classify, ed_margin,
                   project_to_barrier, tangency_gap)
from .sim import (AttackerStrategy, SimConfig, StrategySpec, TeamStrategy, Trajectory, Verdict,
                  pure_pursuit_heading, simulate, step)

__version__ = "0.1.0"
