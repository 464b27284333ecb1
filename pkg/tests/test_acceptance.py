"""End-to-end acceptance checks.  Each test prints one PASS/FAIL line."""

import json
import math
import time

import numpy as np
import pytest

from tadgame import bridge, cdg, cli, kind, saddle, sampling
from tadgame.geometry import GameState
from tadgame.kind import Region
from tadgame.scenario import bundled_path, load_scenario
from tadgame.sim import Verdict, simulate

from conftest import record_acceptance


def fd_gradient(s, h=1e-6):
    p = s.positions()
    out = np.empty(6)
    for k in range(6):
        e = np.zeros(6)
        e[k] = h
        out[k] = (cdg.value(GameState.from_positions(p + e, s.alpha))
                  - cdg.value(GameState.from_positions(p - e, s.alpha))) / (2 * h)
    return out


def cli_json(capsys, *argv):
    code = cli.main(list(argv))
    out, _ = capsys.readouterr()
    return code, json.loads(out)


def test_criterion_1_example1(capsys):
    t0 = time.perf_counter()
    path = str(bundled_path("example1"))
    code, cls = cli_json(capsys, "classify", "--config", path)
    code2, sol = cli_json(capsys, "solve", "--config", path)
    sc = load_scenario(path)
    traj = simulate(sc.state, sc.strategy, sc.sim)
    elapsed = time.perf_counter() - t0
    aim_err = math.hypot(sol["aimpoint"][0] - 6.305, sol["aimpoint"][1] + 1.224)
    # the terminal sample has coincident agents, where the Barrier is undefined
    max_b = float(np.max(np.abs(traj.column("barrier_value")[:-1])))
    sim_gap = abs(traj.t_capture - traj.t_intercept)
    ok = (code == code2 == 0 and cls["region"] == "OnBarrier" and aim_err < 5e-3
          and abs(sol["value"]) < 1e-6 and max_b < 1e-4 and traj.simultaneous
          and sim_gap <= sc.sim.dt and elapsed < 1.0)
    record_acceptance(1, ok, f"aim error {aim_err:.2e}, |V| {abs(sol['value']):.1e}, "
                             f"max|B| {max_b:.1e}, arrival gap {sim_gap:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_2_example2():
    t0 = time.perf_counter()
    sc = load_scenario(bundled_path("example2"))
    s = sc.state
    region = kind.classify(s).region
    V0 = cdg.value(s)
    traj = simulate(s, sc.strategy, sc.sim)
    elapsed = time.perf_counter() - t0
    aims = np.array([smp.aim for smp in traj.samples])
    drift = float(np.max(np.hypot(aims[:, 0] - aims[0, 0], aims[:, 1] - aims[0, 1])))
    err = abs(traj.terminal_dt_distance - V0)
    ok = (region == Region.R_C and traj.verdict == Verdict.ATTACKER_WINS
          and bool(np.all(traj.column("barrier_value") > 0)) and err <= 2 * sc.sim.dt
          and drift < 1e-4 and elapsed < 2.0)
    record_acceptance(2, ok, f"terminal error {err:.2e}, aim drift {drift:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_3_example3():
    t0 = time.perf_counter()
    sc = load_scenario(bundled_path("example3"))
    traj = simulate(sc.state, sc.strategy, sc.sim)
    elapsed = time.perf_counter() - t0
    cross = traj.events_of("barrier_crossing")
    entry = traj.events_of("ed_entry")
    tc = cross[0].t if cross else math.nan
    te = entry[0].t if entry else math.nan
    ok = (traj.verdict == Verdict.TEAM_WINS and abs(tc - 0.243) <= 0.02
          and abs(te - 4.523) <= 0.05 and elapsed < 5.0)
    record_acceptance(3, ok, f"crossing t={tc:.3f}, R_ed entry t={te:.3f}, {elapsed:.2f}s")
    assert ok


def test_criterion_4_hji_identity():
    t0 = time.perf_counter()
    states = sampling.random_rc_states(np.random.default_rng(2024), 1000)
    hji = me = 0.0
    for s in states:
        aim = cdg.solve_aimpoint(s)
        hji = max(hji, abs(cdg.hji_residual(s, aim)))
        me = max(me, abs(cdg.me_residual(s, aim)))
    elapsed = time.perf_counter() - t0
    ok = hji < 1e-9 and me < 1e-9 and elapsed < 10.0
    record_acceptance(4, ok, f"max HJI {hji:.1e}, max main-equation {me:.1e}, {elapsed:.2f}s")
    assert ok


def test_criterion_5_gradient():
    rng = np.random.default_rng(55)
    states = sampling.random_rc_states(rng, 190)
    rotated_states = [sampling.horizontal_aim_state(s)
                      for s in sampling.random_rc_states(rng, 10)]
    worst = 0.0
    n_rot = 0
    for s in states + rotated_states:
        g, rot = cdg.value_gradient(s, return_rotated=True)
        n_rot += bool(rot)
        fd = fd_gradient(s)
        worst = max(worst, float(np.max(np.abs(g - fd)) / max(1.0, np.max(np.abs(g)))))
    ok = worst < 1e-5 and n_rot >= 10
    record_acceptance(5, ok, f"max relative error {worst:.1e} over 200 states, "
                             f"{n_rot} through the rotation path")
    assert ok


def test_criterion_6_oracle_equivalence():
    states = sampling.random_rc_states(np.random.default_rng(606), 1000)
    worst = 0.0
    inv = 0.0
    for s in states:
        a = cdg.solve_aimpoint(s)
        o = cdg.oracle_aimpoint(s, 100_000)
        worst = max(worst, abs(math.remainder(a.omega_star - o.omega_star, 2 * math.pi)))
        inv = max(inv, cdg.cdg_polynomial(s).self_inversive_error())
    ok = worst < 1e-6 and inv < 1e-12
    record_acceptance(6, ok, f"max |omega gap| {worst:.1e}, self-inversive error {inv:.1e}")
    assert ok


def test_criterion_7_barrier_agreement():
    rng = np.random.default_rng(707)
    states, skipped = [], 0
    while len(states) < 200:
        s = sampling.random_barrier_states(rng, 1)[0]
        if bridge.in_scan_range(s):
            states.append(s)
        else:
            skipped += 1
    agree = val = dw = 0.0
    for s in states:
        sd = s.A.dist(s.D)
        c = cdg.solve_aimpoint(s, check_region=False).point
        e = bridge.atddg_aimpoint(s, check_region=False).point
        b = bridge.bisector_tangent_point(s)
        agree = max(agree, c.dist(e) / sd, c.dist(b) / sd, e.dist(b) / sd)
        r = bridge.barrier_consistency_check(s)
        val = max(val, abs(r.value))
        dw = max(dw, r.omega_star_minus_rho)
    ok = agree < 1e-6 and val < 1e-8 and dw < 1e-6
    record_acceptance(7, ok, f"max aimpoint disagreement {agree:.1e}, max |V| {val:.1e}, "
                             f"max |omega - rho| {dw:.1e} ({skipped} draws outside the "
                             f"bisector scan range redrawn)")
    assert ok


@pytest.mark.slow
def test_criterion_8_saddle_suite():
    states = sampling.random_rc_states(np.random.default_rng(8), 200)
    rep = saddle.saddle_check(states, deviations=50, dt=1e-2, seed=8)
    summ = rep.summary()
    print(json.dumps(summ, indent=1))
    ok = all(summ[side]["violations"] == 0 for side in (saddle.TEAM_SIDE, saddle.ATTACKER_SIDE))
    detail = "; ".join(
        f"{side}: {summ[side]['violations']} violations in {summ[side]['runs']} runs "
        f"({summ[side]['no_capture']} without capture, {summ[side]['states_with_violations']} "
        f"states), worst gap {summ[side]['worst_gap']:.2e}"
        for side in (saddle.TEAM_SIDE, saddle.ATTACKER_SIDE))
    record_acceptance(8, ok, detail)
    assert ok
