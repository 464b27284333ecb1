"""Pure-Python numeric kernels.

Reference implementation of the hot paths; ``_kernels.pyx`` mirrors every
function here with the same signature and return layout.  Arguments are
plain floats in (xT, yT, xA, yA, xD, yD, alpha) order.
"""

import math

import numpy as np
from scipy.optimize import brentq

BACKEND = "python"

# status codes shared with the compiled kernels
OK = 0
NO_ROOT = 1
DEGENERATE = 2

# verdict codes for termination / rollout
RUNNING = 0
ATTACKER_WINS = 1
TEAM_WINS = 2
SIMULTANEOUS = 3
TIMEOUT = 4

UNIT_CIRCLE_TOL = 1e-6
# near-double roots (states on or close to the barrier) split off the unit
# circle by ~sqrt(perturbation); such candidates are still polished and then
# judged by the unsquared residual
CANDIDATE_TOL = 1e-3
EQ58_TOL = 1e-6
DEDUP_TOL = 1e-9
ATDDG_SCAN_STEP = 0.1
ATDDG_SCAN_HALF_WIDTH = 20.0

# attacker / team strategy modes for rollout()
A_OPTIMAL, A_PURSUIT, A_FIXED, A_AIM_OFFSET = 0, 1, 2, 3
TEAM_OPTIMAL, TEAM_FIXED = 0, 1


def barrier_value(xT, yT, xA, yA, xD, yD, alpha):
    s = math.hypot(xA - xD, yA - yD)
    cs = (xA - xD) / s
    sn = (yA - yD) / s
    x0 = 0.5 * (xA + xD)
    y0 = 0.5 * (yA + yD)
    a2 = alpha * alpha
    ma = 1.0 - a2
    bxx = cs * cs - a2
    byy = sn * sn - a2
    bxy = sn * cs
    gy = a2 * yA + ma * y0
    gx = a2 * xA + ma * x0
    bx = a2 * xA * sn * sn - ma * x0 * cs * cs - gy * sn * cs
    by = a2 * yA * cs * cs - ma * y0 * sn * sn - gx * sn * cs
    b = (gy * sn + gx * cs) ** 2 - a2 * (xA * xA + yA * yA)
    return (bxx * xT * xT + byy * yT * yT + 2.0 * bxy * xT * yT
            + 2.0 * bx * xT + 2.0 * by * yT + b)


def _circle(xT, yT, xA, yA, alpha):
    a2 = alpha * alpha
    k = 1.0 / (1.0 - a2)
    return (k * (xT - a2 * xA), k * (yT - a2 * yA),
            alpha * k * math.hypot(xT - xA, yT - yA))


def cdg_coefficients(xT, yT, xA, yA, xD, yD, alpha):
    """Coefficients c[0..6] of the capture-angle polynomial, c[k] multiplying v**k."""
    xc, yc, r = _circle(xT, yT, xA, yA, alpha)
    pa, pb = xc - xA, yc - yA
    qa, qb = xc - xD, yc - yD
    r2 = r * r
    a0 = (qb * qb - qa * qa) * pa + (pa * pa - pb * pb) * qa + 2.0 * qb * pb * (xA - xD)
    b0 = (qb * qb - qa * qa) * pb + (pa * pa - pb * pb) * qb - 2.0 * qa * pa * (yA - yD)
    a1 = (2.0 * (pa * pa * qb * qb - qa * qa * pb * pb)
          + r2 * (pa * pa - qa * qa + qb * qb - pb * pb))
    b1 = (2.0 * (qa * qa + qb * qb + r2) * pa * pb
          - 2.0 * (pa * pa + pb * pb + r2) * qa * qb)
    a2 = (((qa * qa + 3.0 * qb * qb) * pa - (pa * pa + 3.0 * pb * pb) * qa) / 4.0
          + qb * pb * (xD - xA) / 2.0)
    b2 = (((3.0 * qa * qa + qb * qb) * pb - (3.0 * pa * pa + pb * pb) * qb) / 4.0
          + qa * pa * (yD - yA) / 2.0)
    a3 = qa * qa + qb * qb - pa * pa - pb * pb
    coeffs = (
        r * complex(a0, b0) / 4.0,
        complex(a1, b1) / 4.0,
        r * complex(a2, b2),
        complex(r2 * a3 / 2.0, 0.0),
        r * complex(a2, -b2),
        complex(a1, -b1) / 4.0,
        r * complex(a0, -b0) / 4.0,
    )
    return coeffs, (a0, b0, a1, b1, a2, b2, a3), (xc, yc, r)


def polynomial_roots(coeffs):
    """All roots of sum(c[k] v**k) via companion-matrix eigenvalues."""
    desc = np.array(coeffs[::-1], dtype=complex)
    scale = np.max(np.abs(desc))
    if scale == 0.0:
        return []
    return [complex(v) for v in np.roots(desc / scale)]


def eq58_residual(x, y, xT, yT, xA, yA, xD, yD, alpha):
    """Unsquared stationarity condition at (x, y), normalized to be scale-free."""
    a2 = alpha * alpha
    ti = math.hypot(x - xT, y - yT)
    di = math.hypot(x - xD, y - yD)
    lhs = ti * ((x - xD) * (y - yT) - (x - xT) * (y - yD)
                - a2 * (x - xD) * (y - yA) + a2 * (x - xA) * (y - yD))
    rhs = alpha * di * ((x - xA) * (y - yT) - (x - xT) * (y - yA))
    _, _, r = _circle(xT, yT, xA, yA, alpha)
    norm = r * math.hypot(xA - xD, yA - yD) * (ti + di)
    if norm == 0.0:
        return lhs - rhs
    return (lhs - rhs) / norm


def _slope_and_curvature(w, xc, yc, r, xA, yA, xD, yD):
    # derivative (and second derivative) in w of dist(D, I) - dist(A, I)
    # for I = C + r (cos w, sin w)
    c, s = math.cos(w), math.sin(w)
    ix, iy = xc + r * c, yc + r * s
    tx, ty = -r * s, r * c
    g = 0.0
    h = 0.0
    for px, py, sign in ((xD, yD, 1.0), (xA, yA, -1.0)):
        dx, dy = ix - px, iy - py
        n = math.hypot(dx, dy)
        dt = dx * tx + dy * ty
        g += sign * dt / n
        h += sign * ((r * r - (dx * r * c + dy * r * s)) / n - dt * dt / (n * n * n))
    return g, h


def polish_angle(w, xc, yc, r, xA, yA, xD, yD, iters=12):
    """Newton refinement of a stationary angle of dist(D,I) - dist(A,I)."""
    for _ in range(iters):
        g, h = _slope_and_curvature(w, xc, yc, r, xA, yA, xD, yD)
        if h == 0.0:
            break
        step = g / h
        if abs(step) > 0.1:
            step = math.copysign(0.1, step)
        w -= step
        if abs(step) < 1e-15:
            break
    return math.atan2(math.sin(w), math.cos(w))


def refine_on_eq58(w, res, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r):
    """Secant steps on the unsquared stationarity residual after Newton polishing.

    The slope used by ``polish_angle`` loses a few digits to cancellation;
    the residual itself is evaluated cleanly near a simple root.  Steps are
    kept only while they shrink the residual and stay within 1e-6 rad.
    """
    w0 = w
    wp, fp = w + 1e-7, None
    x, y = xc + r * math.cos(wp), yc + r * math.sin(wp)
    fp = eq58_residual(x, y, xT, yT, xA, yA, xD, yD, alpha)
    for _ in range(6):
        if res == 0.0 or fp == res:
            break
        wn = w - res * (w - wp) / (res - fp)
        if abs(wn - w0) > 1e-6:
            break
        x, y = xc + r * math.cos(wn), yc + r * math.sin(wn)
        fn = eq58_residual(x, y, xT, yT, xA, yA, xD, yD, alpha)
        if abs(fn) >= abs(res):
            break
        wp, fp = w, res
        w, res = wn, fn
    return w, res


def select_aimpoint(roots, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r):
    """Filter raw polynomial roots and pick the Value-minimizing capture point.

    Returns (status, x, y, omega, value, residual, root_count).
    """
    picked = []
    for v in roots:
        m = abs(v)
        if abs(m - 1.0) > CANDIDATE_TOL:
            continue
        w = polish_angle(math.atan2(v.imag, v.real), xc, yc, r, xA, yA, xD, yD)
        x, y = xc + r * math.cos(w), yc + r * math.sin(w)
        res = eq58_residual(x, y, xT, yT, xA, yA, xD, yD, alpha)
        if abs(res) > EQ58_TOL:
            continue
        w, res = refine_on_eq58(w, res, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r)
        x, y = xc + r * math.cos(w), yc + r * math.sin(w)
        if any(abs(math.atan2(math.sin(w - q[0]), math.cos(w - q[0]))) < DEDUP_TOL for q in picked):
            continue
        value = math.hypot(x - xD, y - yD) - math.hypot(x - xT, y - yT) / alpha
        picked.append((w, x, y, value, res))
    if not picked:
        return (NO_ROOT, math.nan, math.nan, math.nan, math.nan, math.nan, 0)
    w, x, y, value, res = min(picked, key=lambda q: q[3])
    return (OK, x, y, w, value, res, len(picked))


def cdg_aim(xT, yT, xA, yA, xD, yD, alpha):
    """Optimal capture point.  Returns (status, x, y, omega, value, residual, root_count)."""
    coeffs, _, (xc, yc, r) = cdg_coefficients(xT, yT, xA, yA, xD, yD, alpha)
    if r <= 1e-12 or alpha <= 0.0:
        return (DEGENERATE, math.nan, math.nan, math.nan, math.nan, math.nan, 0)
    roots = polynomial_roots(coeffs)
    return select_aimpoint(roots, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r)


def eq78_lhs(x, y, xT, yT, xA, yA, xD, yD, alpha):
    """Escape-region aimpoint condition with its common denominator cleared."""
    ti = math.hypot(x - xT, y - yT)
    ai = math.hypot(x - xA, y - yA)
    di = math.hypot(x - xD, y - yD)
    den = (x - xA) * (y - yD) - (x - xD) * (y - yA)
    n_td = (x - xT) * (y - yD) - (x - xD) * (y - yT)
    n_ta = (x - xT) * (y - yA) - (x - xA) * (y - yT)
    return alpha * ti * den - n_td * ai + n_ta * di


def eq78_residual(x, y, xT, yT, xA, yA, xD, yD, alpha):
    """``eq78_lhs`` scaled by dist(A,D)**3 so that tolerances are scale-free."""
    sd = math.hypot(xA - xD, yA - yD)
    return eq78_lhs(x, y, xT, yT, xA, yA, xD, yD, alpha) / (sd * sd * sd)


def _bisector_slope(s, mx, my, ux, uy, xT, yT, xA, yA, alpha):
    # d/ds [dist(T,I) - alpha dist(A,I)] for I = M + s u.  Same zero set as
    # the escape condition away from the midpoint, where that condition has a
    # removable 0/0 (its denominator is the u-component of I - A).
    x, y = mx + s * ux, my + s * uy
    ti = math.hypot(x - xT, y - yT)
    ai = math.hypot(x - xA, y - yA)
    if ti == 0.0 or ai == 0.0:
        return 0.0
    return ((x - xT) * ux + (y - yT) * uy) / ti - alpha * ((x - xA) * ux + (y - yA) * uy) / ai


def atddg_aim(xT, yT, xA, yA, xD, yD, alpha):
    """Escape-region aimpoint on the A-D bisector.

    Returns (status, x, y, s, root_count, lo, hi) where s is the signed
    arclength from the A-D midpoint along the bisector direction and
    (lo, hi) is the scanned range.  Among several roots the one with the
    largest Target slack alpha*dist(A,I) - dist(T,I) is returned.
    """
    dx, dy = xD - xA, yD - yA
    sd = math.hypot(dx, dy)
    lo, hi = -ATDDG_SCAN_HALF_WIDTH * sd, ATDDG_SCAN_HALF_WIDTH * sd
    if sd < 1e-12:
        return (DEGENERATE, math.nan, math.nan, math.nan, 0, lo, hi)
    mx, my = 0.5 * (xA + xD), 0.5 * (yA + yD)
    ux, uy = -dy / sd, dx / sd
    args = (mx, my, ux, uy, xT, yT, xA, yA, alpha)
    n = int(round(2 * ATDDG_SCAN_HALF_WIDTH / ATDDG_SCAN_STEP))
    step = ATDDG_SCAN_STEP * sd
    best = None
    count = 0
    s0 = lo
    f0 = _bisector_slope(s0, *args)
    for i in range(1, n + 1):
        s1 = lo + i * step
        f1 = _bisector_slope(s1, *args)
        root = None
        if f0 == 0.0:
            root = s0
        elif f0 * f1 < 0.0:
            root = brentq(_bisector_slope, s0, s1, args=args, xtol=1e-13 * sd, rtol=1e-15)
        if root is not None:
            x, y = mx + root * ux, my + root * uy
            count += 1
            slack = alpha * math.hypot(x - xA, y - yA) - math.hypot(x - xT, y - yT)
            if best is None or slack > best[0]:
                best = (slack, x, y, root)
        s0, f0 = s1, f1
    if best is None:
        return (NO_ROOT, math.nan, math.nan, math.nan, 0, lo, hi)
    return (OK, best[1], best[2], best[3], count, lo, hi)


def _first_hit(wx, wy, vx, vy, eps, dt):
    # earliest tau in [0, dt] with |w + tau v| <= eps, or -1
    c = wx * wx + wy * wy - eps * eps
    if c <= 0.0:
        return 0.0
    a = vx * vx + vy * vy
    if a == 0.0:
        return -1.0
    b = wx * vx + wy * vy
    disc = b * b - a * c
    if disc < 0.0 or b >= 0.0:
        return -1.0
    tau = (-b - math.sqrt(disc)) / a
    return tau if tau <= dt else -1.0


def _closest(wx, wy, vx, vy):
    a = vx * vx + vy * vy
    tau = 0.0 if a == 0.0 else max(0.0, -(wx * vx + wy * vy) / a)
    return tau, math.hypot(wx + tau * vx, wy + tau * vy)


def termination(xT, yT, xA, yA, xD, yD, vTx, vTy, vAx, vAy, vDx, vDy, dt, eps):
    """Check whether a constant-velocity step of length dt reaches a terminal set.

    Returns (code, tau_end, tau_capture, tau_intercept): the code is one of
    RUNNING / ATTACKER_WINS / TEAM_WINS / SIMULTANEOUS; tau_end is the
    closest-approach instant of the terminating pair, measured from the
    step start; the last two are closest-approach instants of both pairs.
    """
    wcx, wcy = xT - xA, yT - yA
    vcx, vcy = vTx - vAx, vTy - vAy
    wix, wiy = xD - xA, yD - yA
    vix, viy = vDx - vAx, vDy - vAy
    hc = _first_hit(wcx, wcy, vcx, vcy, eps, dt)
    hi = _first_hit(wix, wiy, vix, viy, eps, dt)
    if hc < 0.0 and hi < 0.0:
        return (RUNNING, dt, math.nan, math.nan)
    tc, dc = _closest(wcx, wcy, vcx, vcy)
    ti, di = _closest(wix, wiy, vix, viy)
    if dc <= eps and di <= eps and abs(tc - ti) <= dt:
        return (SIMULTANEOUS, tc, tc, ti)
    if hc >= 0.0 and (hi < 0.0 or hc <= hi):
        return (ATTACKER_WINS, tc, tc, ti)
    return (TEAM_WINS, ti, tc, ti)


def _unit(dx, dy):
    n = math.hypot(dx, dy)
    if n < 1e-12:
        return 0.0, 0.0
    return dx / n, dy / n


def rollout(xT, yT, xA, yA, xD, yD, alpha, amode, aparam, tmode, tparam1, tparam2,
            dt, eps, max_steps):
    """Lean engagement loop with no recording.

    Attacker modes: A_OPTIMAL, A_PURSUIT, A_FIXED (heading aparam),
    A_AIM_OFFSET (aims at the capture-circle point rotated by aparam from
    the optimal one).  Team modes: TEAM_OPTIMAL, TEAM_FIXED (Target heading
    tparam1, Defender heading tparam2).  Whenever the optimal aimpoint
    cannot be computed the affected players keep their previous headings.

    Returns (verdict, t, xT, yT, xA, yA, xD, yD, t_capture, t_intercept).
    """
    hT = (math.cos(tparam1), math.sin(tparam1))
    hD = (math.cos(tparam2), math.sin(tparam2))
    hA = (math.cos(aparam), math.sin(aparam))
    t = 0.0
    for k in range(max_steps):
        t = k * dt
        need_aim = amode in (A_OPTIMAL, A_AIM_OFFSET) or tmode == TEAM_OPTIMAL
        if need_aim:
            st, ix, iy, w, _, _, _ = cdg_aim(xT, yT, xA, yA, xD, yD, alpha)
            if st == OK:
                if tmode == TEAM_OPTIMAL:
                    u = _unit(ix - xT, iy - yT)
                    if u != (0.0, 0.0):
                        hT = u
                    u = _unit(ix - xD, iy - yD)
                    if u != (0.0, 0.0):
                        hD = u
                if amode == A_OPTIMAL:
                    u = _unit(ix - xA, iy - yA)
                    if u != (0.0, 0.0):
                        hA = u
                elif amode == A_AIM_OFFSET:
                    xc, yc, r = _circle(xT, yT, xA, yA, alpha)
                    u = _unit(xc + r * math.cos(w + aparam) - xA, yc + r * math.sin(w + aparam) - yA)
                    if u != (0.0, 0.0):
                        hA = u
        if amode == A_PURSUIT:
            u = _unit(xT - xA, yT - yA)
            if u != (0.0, 0.0):
                hA = u
        if tmode == TEAM_FIXED:
            hT = (math.cos(tparam1), math.sin(tparam1))
            hD = (math.cos(tparam2), math.sin(tparam2))
        vTx, vTy = alpha * hT[0], alpha * hT[1]
        vAx, vAy = hA
        vDx, vDy = hD
        code, tau, tc, ti = termination(xT, yT, xA, yA, xD, yD,
                                        vTx, vTy, vAx, vAy, vDx, vDy, dt, eps)
        if code != RUNNING:
            return (code, t + tau,
                    xT + tau * vTx, yT + tau * vTy, xA + tau * vAx, yA + tau * vAy,
                    xD + tau * vDx, yD + tau * vDy, t + tc, t + ti)
        xT += dt * vTx
        yT += dt * vTy
        xA += dt * vAx
        yA += dt * vAy
        xD += dt * vDx
        yD += dt * vDy
    return (TIMEOUT, max_steps * dt, xT, yT, xA, yA, xD, yD, math.nan, math.nan)
