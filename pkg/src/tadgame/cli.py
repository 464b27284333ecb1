"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 solver failure or a state
outside the solver's region, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import bridge, cdg, kind, sampling
from .errors import RegionError, SolverFailure, TadError
from .scenario import Scenario, ScenarioError, load_scenario
from .sim import Trajectory, simulate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_VERIFY = 3

CSV_COLUMNS = ("t", "xT", "yT", "xA", "yA", "xD", "yD", "phi", "psi", "chi",
               "B", "region", "V_or_nan", "aim_x_or_nan", "aim_y_or_nan")


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _num(x):
    """JSON-safe float: non-finite values become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False)


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as e:
        raise _Fail(EXIT_USAGE, f"{out}: cannot write ({e.strerror})") from None


def _load(args, need_target=True) -> Scenario:
    if args.config is None:
        raise _Fail(EXIT_USAGE, "--config is required")
    try:
        sc = load_scenario(args.config, need_target)
    except ScenarioError as e:
        raise _Fail(EXIT_USAGE, str(e)) from None
    sim = sc.sim
    if getattr(args, "dt", None) is not None:
        sim = replace(sim, dt=args.dt)
    if getattr(args, "eps", None) is not None:
        sim = replace(sim, capture_radius=args.eps)
    sc.sim = sim
    return sc


def _region_dict(sc: Scenario) -> dict:
    rep = kind.classify(sc.state)
    d = rep.to_dict()
    d["state"] = sc.state.to_dict()
    if sc.snap_displacement:
        d["snap_displacement"] = sc.snap_displacement
    return d


def cmd_classify(args) -> int:
    sc = _load(args)
    _emit(dumps(_region_dict(sc)) + "\n", args.out)
    return EXIT_OK


def solve_report(sc: Scenario, use_oracle=False, samples=100_000) -> dict:
    state = sc.state
    rep = kind.classify(state)
    if rep.region not in cdg.CDG_REGIONS:
        raise _Fail(EXIT_SOLVER, f"state in {rep.region.value}: CDG not applicable")
    try:
        aim = cdg.oracle_aimpoint(state, samples) if use_oracle else cdg.solve_aimpoint(state)
        h = cdg.optimal_headings(state, aim)
        hji = cdg.hji_residual(state, aim)
    except (SolverFailure, RegionError) as e:
        raise _Fail(EXIT_SOLVER, str(e)) from None
    out = aim.to_dict()
    out.update(region=rep.region.value, barrier_value=rep.barrier_value,
               method="oracle" if use_oracle else "polynomial",
               headings={"phi": h.phi.angle, "psi": h.psi.angle, "chi": h.chi.angle},
               hji_residual=hji, state=state.to_dict())
    if sc.snap_displacement:
        out["snap_displacement"] = sc.snap_displacement
    return out


def cmd_solve(args) -> int:
    sc = _load(args)
    samples = args.samples if args.samples is not None else (sc.samples or 100_000)
    _emit(dumps(solve_report(sc, args.oracle, samples)) + "\n", args.out)
    return EXIT_OK


def trajectory_rows(traj: Trajectory):
    for s in traj.samples:
        st = s.state
        yield [repr(float(v)) for v in (s.t, st.xT, st.yT, st.xA, st.yA, st.xD, st.yD,
                                        s.phi, s.psi, s.chi, s.barrier_value)] + \
              [s.region.value] + [repr(float(v)) for v in (s.value, s.aim[0], s.aim[1])]


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(trajectory_rows(traj))
    return buf.getvalue()


def trajectory_json(traj: Trajectory) -> str:
    cols = {c: [] for c in CSV_COLUMNS}
    for row in trajectory_rows(traj):
        for c, v in zip(CSV_COLUMNS, row):
            cols[c].append(v if c == "region" else _num(float(v)))
    return dumps({"columns": list(CSV_COLUMNS), "data": cols}) + "\n"


def run_report(sc: Scenario, traj: Trajectory, wall: float) -> dict:
    s0 = sc.state
    v0 = None
    rep0 = kind.classify(s0)
    if rep0.region in cdg.CDG_REGIONS:
        try:
            v0 = cdg.solve_aimpoint(s0).value
        except TadError:
            v0 = None
    fin = traj.final
    return {
        "scenario": sc.name,
        "verdict": traj.verdict.value,
        "simultaneous": traj.simultaneous,
        "t_final": fin.t,
        "t_capture": _num(traj.t_capture),
        "t_intercept": _num(traj.t_intercept),
        "terminal_state": fin.state.to_dict(),
        "terminal_dt_distance": traj.terminal_dt_distance,
        "initial_region": rep0.region.value,
        "initial_value": v0,
        "events": [e.to_dict() for e in traj.events],
        "dt": sc.sim.dt,
        "capture_radius": sc.sim.capture_radius,
        "wall_clock_s": wall,
    }


def cmd_simulate(args) -> int:
    sc = _load(args)
    t0 = time.perf_counter()
    traj = simulate(sc.state, sc.strategy, sc.sim)
    wall = time.perf_counter() - t0
    fmt = args.format or sc.format or "csv"
    out = args.out or sc.out
    if out is not None:
        _emit(trajectory_csv(traj) if fmt == "csv" else trajectory_json(traj), out)
    sys.stdout.write(dumps(run_report(sc, traj, wall)) + "\n")
    return EXIT_OK


def sweep_outputs(sc: Scenario):
    if sc.window is None:
        raise _Fail(EXIT_USAGE, f"{sc.name or 'scenario'}: field 'window' is required for sweep")
    A, D, a = sc.state.A, sc.state.D, sc.state.alpha
    pts = kind.barrier_cross_section(A, D, a, sc.window, sc.resolution)
    xs, ys, labels = kind.region_grid(A, D, a, sc.window, sc.resolution)
    scale = A.dist(D) ** 2
    probe = sc.state
    worst = 0.0
    for p in pts:
        worst = max(worst, abs(kind.barrier_value(probe.with_target(p))) / scale)
    return pts, (xs, ys, labels), worst


def cmd_sweep(args) -> int:
    sc = _load(args, need_target=False)
    if args.samples is not None:
        sc.resolution = (args.samples, args.samples)
    pts, (xs, ys, labels), worst = sweep_outputs(sc)
    fmt = args.format or sc.format or "csv"
    out = args.out or sc.out
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("x", "y"))
        w.writerows((repr(p.x), repr(p.y)) for p in pts)
        rbuf = io.StringIO()
        w = csv.writer(rbuf, lineterminator="\n")
        w.writerow(("x", "y", "region"))
        for j, y in enumerate(ys):
            for i, x in enumerate(xs):
                w.writerow((repr(float(x)), repr(float(y)), labels[j, i]))
        if out is None:
            sys.stdout.write(buf.getvalue())
        else:
            _emit(buf.getvalue(), out)
            p = Path(out)
            _emit(rbuf.getvalue(), str(p.with_name(p.stem + "_regions" + p.suffix)))
    else:
        doc = {"points": [[p.x, p.y] for p in pts],
               "raster": {"x": [float(x) for x in xs], "y": [float(y) for y in ys],
                          "labels": labels.tolist()}}
        _emit(dumps(doc) + "\n", out)
    ok = worst < 1e-6
    sys.stderr.write(f"sweep: {len(pts)} barrier points, max |B|/|AD|^2 = {worst:.3e}\n")
    return EXIT_OK if ok else EXIT_VERIFY


def verification_report(samples: int, seed: int, tolerance: float = 1e-9,
                        grad_tolerance: float = 1e-5) -> dict:
    """Residual checks over seeded random states.  Deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    states = sampling.random_rc_states(rng, samples)
    hji = me = 0.0
    for s in states:
        aim = cdg.solve_aimpoint(s)
        hji = max(hji, abs(cdg.hji_residual(s, aim)))
        me = max(me, abs(cdg.me_residual(s, aim)))
    n_fd = min(samples, 200)
    grad = 0.0
    h = 1e-6
    for s in states[:n_fd]:
        g = cdg.value_gradient(s)
        p = s.positions()
        fd = np.empty(6)
        for k in range(6):
            e = np.zeros(6)
            e[k] = h
            fd[k] = (cdg.value(type(s).from_positions(p + e, s.alpha))
                     - cdg.value(type(s).from_positions(p - e, s.alpha))) / (2 * h)
        grad = max(grad, float(np.max(np.abs(g - fd)) / max(1.0, np.max(np.abs(g)))))
    n_b = min(samples, 200)
    thm3 = 0.0
    skipped = 0
    for s in sampling.random_barrier_states(rng, n_b):
        if not bridge.in_scan_range(s):
            skipped += 1
            continue
        r = bridge.barrier_consistency_check(s)
        e = bridge.atddg_aimpoint(s, check_region=False)
        a = cdg.solve_aimpoint(s, check_region=False)
        sd = s.A.dist(s.D)
        thm3 = max(thm3, r.omega_star_minus_rho, r.tangency_gap, abs(r.value) / sd,
                   e.point.dist(a.point) / sd)
    checks = {
        "hji_residual": {"max": hji, "tolerance": tolerance, "count": len(states)},
        "main_equation_residual": {"max": me, "tolerance": tolerance, "count": len(states)},
        "gradient_relative_error": {"max": grad, "tolerance": grad_tolerance, "count": n_fd},
        "barrier_consistency": {"max": thm3, "tolerance": 1e-6, "count": n_b - skipped,
                                "outside_scan_range": skipped},
    }
    for c in checks.values():
        c["passed"] = bool(c["max"] < c["tolerance"])
    return {"seed": seed, "samples": samples, "checks": checks,
            "passed": all(c["passed"] for c in checks.values())}


def cmd_verify(args) -> int:
    samples, seed, tol = 1000, 0, 1e-9
    if args.config is not None:
        sc = _load(args, need_target=False)
        samples = sc.samples or samples
        seed = sc.seed if sc.seed is not None else seed
        tol = sc.tolerance if sc.tolerance is not None else tol
    samples = args.samples if args.samples is not None else samples
    seed = args.seed if args.seed is not None else seed
    tol = args.tolerance if args.tolerance is not None else tol
    if samples < 1:
        raise _Fail(EXIT_USAGE, "--samples must be positive")
    rep = verification_report(samples, seed, tol)
    _emit(dumps(rep) + "\n", args.out)
    return EXIT_OK if rep["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tadgame",
                                description="Target-Attacker-Defender game solver and simulator")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=False):
        sp.add_argument("--config", help="scenario JSON file")
        sp.add_argument("--out", help="output path (default: stdout)")
        if fmt:
            sp.add_argument("--format", choices=("csv", "json"))

    sp = sub.add_parser("classify", help="Barrier value and winning region")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("solve", help="optimal capture point, headings and Value")
    common(sp)
    sp.add_argument("--oracle", action="store_true", help="use the angle-sweep oracle")
    sp.add_argument("--samples", type=int, help="oracle sweep resolution")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("simulate", help="run an engagement")
    common(sp, fmt=True)
    sp.add_argument("--dt", type=float)
    sp.add_argument("--eps", type=float, help="capture radius")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep", help="Barrier cross-section for fixed A, D")
    common(sp, fmt=True)
    sp.add_argument("--samples", type=int, help="grid nodes per axis")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="batch residual checks on random states")
    common(sp)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--tolerance", type=float, help="HJI and Main Equation tolerance")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except _Fail as e:
        sys.stderr.write(f"tadgame {args.command}: {e}\n")
        return e.code
    except (SolverFailure, RegionError) as e:
        sys.stderr.write(f"tadgame {args.command}: {e}\n")
        return EXIT_SOLVER
    except (TadError, ValueError) as e:
        sys.stderr.write(f"tadgame {args.command}: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
