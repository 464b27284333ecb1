# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels.

Same functions, signatures and return tuples as ``_kernels_py``; the
polynomial roots come from an Aberth-Ehrlich simultaneous iteration
instead of companion-matrix eigenvalues.
"""

from libc.math cimport sqrt, hypot, fabs, cos, sin, atan2, copysign, NAN, M_PI

BACKEND = "cython"

OK = 0
NO_ROOT = 1
DEGENERATE = 2

RUNNING = 0
ATTACKER_WINS = 1
TEAM_WINS = 2
SIMULTANEOUS = 3
TIMEOUT = 4

UNIT_CIRCLE_TOL = 1e-6
CANDIDATE_TOL = 1e-3
EQ58_TOL = 1e-6
DEDUP_TOL = 1e-9
ATDDG_SCAN_STEP = 0.1
ATDDG_SCAN_HALF_WIDTH = 20.0

A_OPTIMAL, A_PURSUIT, A_FIXED, A_AIM_OFFSET = 0, 1, 2, 3
TEAM_OPTIMAL, TEAM_FIXED = 0, 1

cdef enum:
    C_OK = 0
    C_NO_ROOT = 1
    C_DEGENERATE = 2
    C_RUNNING = 0
    C_ATTACKER_WINS = 1
    C_TEAM_WINS = 2
    C_SIMULTANEOUS = 3
    C_TIMEOUT = 4
    C_A_OPTIMAL = 0
    C_A_PURSUIT = 1
    C_A_FIXED = 2
    C_A_AIM_OFFSET = 3
    C_TEAM_OPTIMAL = 0
    C_TEAM_FIXED = 1

cdef double _CANDIDATE_TOL = 1e-3
cdef double _EQ58_TOL = 1e-6
cdef double _DEDUP_TOL = 1e-9
cdef double _SCAN_STEP = 0.1
cdef double _SCAN_HALF = 20.0


ctypedef struct Aim:
    int status
    double x, y, omega, value, resid
    int count


cdef inline double _barrier(double xT, double yT, double xA, double yA,
                            double xD, double yD, double alpha) noexcept nogil:
    cdef double s = hypot(xA - xD, yA - yD)
    cdef double cs = (xA - xD) / s, sn = (yA - yD) / s
    cdef double x0 = 0.5 * (xA + xD), y0 = 0.5 * (yA + yD)
    cdef double a2 = alpha * alpha, ma = 1.0 - a2
    cdef double gy = a2 * yA + ma * y0, gx = a2 * xA + ma * x0
    cdef double bxx = cs * cs - a2, byy = sn * sn - a2, bxy = sn * cs
    cdef double bx = a2 * xA * sn * sn - ma * x0 * cs * cs - gy * sn * cs
    cdef double by = a2 * yA * cs * cs - ma * y0 * sn * sn - gx * sn * cs
    cdef double t = gy * sn + gx * cs
    cdef double b = t * t - a2 * (xA * xA + yA * yA)
    return (bxx * xT * xT + byy * yT * yT + 2.0 * bxy * xT * yT
            + 2.0 * bx * xT + 2.0 * by * yT + b)


def barrier_value(double xT, double yT, double xA, double yA,
                  double xD, double yD, double alpha):
    return _barrier(xT, yT, xA, yA, xD, yD, alpha)


cdef inline void _circle(double xT, double yT, double xA, double yA, double alpha,
                         double *xc, double *yc, double *r) noexcept nogil:
    cdef double a2 = alpha * alpha
    cdef double k = 1.0 / (1.0 - a2)
    xc[0] = k * (xT - a2 * xA)
    yc[0] = k * (yT - a2 * yA)
    r[0] = alpha * k * hypot(xT - xA, yT - yA)


cdef void _coeffs(double xT, double yT, double xA, double yA, double xD, double yD,
                  double alpha, double complex *c, double *ab,
                  double *xc, double *yc, double *r) noexcept nogil:
    _circle(xT, yT, xA, yA, alpha, xc, yc, r)
    cdef double pa = xc[0] - xA, pb = yc[0] - yA
    cdef double qa = xc[0] - xD, qb = yc[0] - yD
    cdef double rr = r[0], r2 = rr * rr
    cdef double a0, b0, a1, b1, a2, b2, a3
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
    c[0] = rr * (a0 + 1j * b0) / 4.0
    c[1] = (a1 + 1j * b1) / 4.0
    c[2] = rr * (a2 + 1j * b2)
    c[3] = r2 * a3 / 2.0
    c[4] = rr * (a2 - 1j * b2)
    c[5] = (a1 - 1j * b1) / 4.0
    c[6] = rr * (a0 - 1j * b0) / 4.0
    ab[0] = a0; ab[1] = b0; ab[2] = a1; ab[3] = b1
    ab[4] = a2; ab[5] = b2; ab[6] = a3


def cdg_coefficients(double xT, double yT, double xA, double yA,
                     double xD, double yD, double alpha):
    cdef double complex c[7]
    cdef double ab[7]
    cdef double xc, yc, r
    _coeffs(xT, yT, xA, yA, xD, yD, alpha, c, ab, &xc, &yc, &r)
    return (tuple(complex(c[k]) for k in range(7)),
            tuple(ab[k] for k in range(7)), (xc, yc, r))


cdef double _cabs(double complex z) noexcept nogil:
    return hypot(z.real, z.imag)


cdef int _aberth(double complex *c, double complex *roots) noexcept nogil:
    # roots of sum c[k] v^k; returns the number of roots written
    cdef int lo = 0, hi = 6, n, i, j, k, it
    cdef double big = 0.0, m
    cdef double complex a[7]
    cdef double complex p, dp, ratio, s, w
    for k in range(7):
        m = _cabs(c[k])
        if m > big:
            big = m
    if big == 0.0:
        return 0
    while hi > 0 and _cabs(c[hi]) <= 1e-14 * big:
        hi -= 1
    while lo < hi and _cabs(c[lo]) <= 1e-14 * big:
        lo += 1
    n = hi - lo
    for k in range(lo):
        roots[k] = 0.0
    if n == 0:
        return lo
    for k in range(n + 1):
        a[k] = c[lo + k] / c[hi]
    # self-inversive polynomials keep roots near the unit circle
    cdef double rad = 1.0
    for k in range(n):
        roots[lo + k] = rad * (cos(2.0 * M_PI * k / n + 0.4) + 1j * sin(2.0 * M_PI * k / n + 0.4))
    cdef double maxcorr
    cdef int done[6]
    for k in range(n):
        done[k] = 0
    for it in range(100):
        maxcorr = 0.0
        for i in range(n):
            if done[i]:
                continue
            w = roots[lo + i]
            p = a[n]
            dp = 0.0
            for k in range(n - 1, -1, -1):
                dp = dp * w + p
                p = p * w + a[k]
            if p == 0.0:
                done[i] = 1
                continue
            ratio = p / dp if dp != 0.0 else 1e-3
            s = 0.0
            for j in range(n):
                if j != i:
                    s = s + 1.0 / (w - roots[lo + j])
            w = ratio / (1.0 - ratio * s)
            roots[lo + i] = roots[lo + i] - w
            m = _cabs(w) / (1.0 + _cabs(roots[lo + i]))
            if m < 1e-14:
                done[i] = 1
            if m > maxcorr:
                maxcorr = m
        if maxcorr < 1e-14:
            break
    return lo + n


def polynomial_roots(coeffs):
    cdef double complex c[7]
    cdef double complex roots[6]
    cdef int k, n
    for k in range(7):
        c[k] = coeffs[k]
    n = _aberth(c, roots)
    return [complex(roots[k]) for k in range(n)]


cdef inline double _eq58(double x, double y, double xT, double yT, double xA, double yA,
                         double xD, double yD, double alpha, double r) noexcept nogil:
    cdef double a2 = alpha * alpha
    cdef double ti = hypot(x - xT, y - yT), di = hypot(x - xD, y - yD)
    cdef double lhs = ti * ((x - xD) * (y - yT) - (x - xT) * (y - yD)
                            - a2 * (x - xD) * (y - yA) + a2 * (x - xA) * (y - yD))
    cdef double rhs = alpha * di * ((x - xA) * (y - yT) - (x - xT) * (y - yA))
    cdef double norm = r * hypot(xA - xD, yA - yD) * (ti + di)
    if norm == 0.0:
        return lhs - rhs
    return (lhs - rhs) / norm


def eq58_residual(double x, double y, double xT, double yT, double xA, double yA,
                  double xD, double yD, double alpha):
    cdef double xc, yc, r
    _circle(xT, yT, xA, yA, alpha, &xc, &yc, &r)
    return _eq58(x, y, xT, yT, xA, yA, xD, yD, alpha, r)


cdef double _polish(double w, double xc, double yc, double r, double xA, double yA,
                    double xD, double yD) noexcept nogil:
    cdef int it, k
    cdef double c, s, ix, iy, tx, ty, g, h, dx, dy, n, dt, sign, px, py, step
    for it in range(12):
        c = cos(w); s = sin(w)
        ix = xc + r * c; iy = yc + r * s
        tx = -r * s; ty = r * c
        g = 0.0; h = 0.0
        for k in range(2):
            if k == 0:
                px = xD; py = yD; sign = 1.0
            else:
                px = xA; py = yA; sign = -1.0
            dx = ix - px; dy = iy - py
            n = hypot(dx, dy)
            dt = dx * tx + dy * ty
            g += sign * dt / n
            h += sign * ((r * r - (dx * r * c + dy * r * s)) / n - dt * dt / (n * n * n))
        if h == 0.0:
            break
        step = g / h
        if fabs(step) > 0.1:
            step = copysign(0.1, step)
        w -= step
        if fabs(step) < 1e-15:
            break
    return atan2(sin(w), cos(w))


cdef double _refine58(double w, double *res, double xT, double yT, double xA, double yA,
                      double xD, double yD, double alpha, double xc, double yc,
                      double r) noexcept nogil:
    cdef double w0 = w, f = res[0], wp = w + 1e-7, fp, wn, fn
    cdef int it
    fp = _eq58(xc + r * cos(wp), yc + r * sin(wp), xT, yT, xA, yA, xD, yD, alpha, r)
    for it in range(6):
        if f == 0.0 or fp == f:
            break
        wn = w - f * (w - wp) / (f - fp)
        if fabs(wn - w0) > 1e-6:
            break
        fn = _eq58(xc + r * cos(wn), yc + r * sin(wn), xT, yT, xA, yA, xD, yD, alpha, r)
        if fabs(fn) >= fabs(f):
            break
        wp = w; fp = f
        w = wn; f = fn
    res[0] = f
    return w


def refine_on_eq58(double w, double res, double xT, double yT, double xA, double yA,
                   double xD, double yD, double alpha, double xc, double yc, double r):
    w = _refine58(w, &res, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r)
    return w, res


def polish_angle(double w, double xc, double yc, double r, double xA, double yA,
                 double xD, double yD, int iters=12):
    return _polish(w, xc, yc, r, xA, yA, xD, yD)


cdef Aim _select(double complex *roots, int n, double xT, double yT, double xA, double yA,
                 double xD, double yD, double alpha, double xc, double yc, double r) noexcept nogil:
    cdef Aim out
    cdef double ws[6]
    cdef int count = 0, i, j, dup
    cdef double w, x, y, res, value, d
    out.status = C_NO_ROOT
    out.count = 0
    out.x = NAN; out.y = NAN; out.omega = NAN; out.value = NAN; out.resid = NAN
    for i in range(n):
        if fabs(_cabs(roots[i]) - 1.0) > _CANDIDATE_TOL:
            continue
        w = _polish(atan2(roots[i].imag, roots[i].real), xc, yc, r, xA, yA, xD, yD)
        x = xc + r * cos(w); y = yc + r * sin(w)
        res = _eq58(x, y, xT, yT, xA, yA, xD, yD, alpha, r)
        if fabs(res) > _EQ58_TOL:
            continue
        w = _refine58(w, &res, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r)
        x = xc + r * cos(w); y = yc + r * sin(w)
        dup = 0
        for j in range(count):
            d = w - ws[j]
            if fabs(atan2(sin(d), cos(d))) < _DEDUP_TOL:
                dup = 1
                break
        if dup:
            continue
        ws[count] = w
        count += 1
        value = hypot(x - xD, y - yD) - hypot(x - xT, y - yT) / alpha
        if out.status != C_OK or value < out.value:
            out.status = C_OK
            out.x = x; out.y = y; out.omega = w; out.value = value; out.resid = res
    out.count = count
    return out


cdef Aim _cdg_aim(double xT, double yT, double xA, double yA, double xD, double yD,
                  double alpha) noexcept nogil:
    cdef double complex c[7]
    cdef double complex roots[6]
    cdef double ab[7]
    cdef double xc, yc, r
    cdef Aim out
    _coeffs(xT, yT, xA, yA, xD, yD, alpha, c, ab, &xc, &yc, &r)
    if r <= 1e-12 or alpha <= 0.0:
        out.status = C_DEGENERATE
        out.count = 0
        out.x = NAN; out.y = NAN; out.omega = NAN; out.value = NAN; out.resid = NAN
        return out
    cdef int n = _aberth(c, roots)
    return _select(roots, n, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r)


def select_aimpoint(roots, double xT, double yT, double xA, double yA, double xD, double yD,
                    double alpha, double xc, double yc, double r):
    cdef double complex buf[6]
    cdef int n = len(roots), k
    for k in range(n):
        buf[k] = roots[k]
    cdef Aim a = _select(buf, n, xT, yT, xA, yA, xD, yD, alpha, xc, yc, r)
    return (a.status, a.x, a.y, a.omega, a.value, a.resid, a.count)


def cdg_aim(double xT, double yT, double xA, double yA, double xD, double yD, double alpha):
    cdef Aim a = _cdg_aim(xT, yT, xA, yA, xD, yD, alpha)
    return (a.status, a.x, a.y, a.omega, a.value, a.resid, a.count)


cdef inline double _eq78(double x, double y, double xT, double yT, double xA, double yA,
                         double xD, double yD, double alpha) noexcept nogil:
    cdef double ti = hypot(x - xT, y - yT)
    cdef double ai = hypot(x - xA, y - yA)
    cdef double di = hypot(x - xD, y - yD)
    cdef double den = (x - xA) * (y - yD) - (x - xD) * (y - yA)
    cdef double n_td = (x - xT) * (y - yD) - (x - xD) * (y - yT)
    cdef double n_ta = (x - xT) * (y - yA) - (x - xA) * (y - yT)
    return alpha * ti * den - n_td * ai + n_ta * di


def eq78_lhs(double x, double y, double xT, double yT, double xA, double yA,
             double xD, double yD, double alpha):
    return _eq78(x, y, xT, yT, xA, yA, xD, yD, alpha)


def eq78_residual(double x, double y, double xT, double yT, double xA, double yA,
                  double xD, double yD, double alpha):
    cdef double sd = hypot(xA - xD, yA - yD)
    return _eq78(x, y, xT, yT, xA, yA, xD, yD, alpha) / (sd * sd * sd)


cdef inline double _slope(double s, double mx, double my, double ux, double uy,
                          double xT, double yT, double xA, double yA, double alpha) noexcept nogil:
    cdef double x = mx + s * ux, y = my + s * uy
    cdef double ti = hypot(x - xT, y - yT), ai = hypot(x - xA, y - yA)
    if ti == 0.0 or ai == 0.0:
        return 0.0
    return ((x - xT) * ux + (y - yT) * uy) / ti - alpha * ((x - xA) * ux + (y - yA) * uy) / ai


cdef double _brent(double a, double b, double fa, double fb, double xtol,
                   double mx, double my, double ux, double uy,
                   double xT, double yT, double xA, double yA, double alpha) noexcept nogil:
    # classic Brent-Dekker on a sign-changing bracket
    cdef double c = a, fc = fa, d = b - a, e = d, tol, m, p, q, r, s
    cdef int it
    for it in range(200):
        if (fb > 0.0) == (fc > 0.0):
            c = a; fc = fa; d = b - a; e = d
        if fabs(fc) < fabs(fb):
            a = b; b = c; c = a
            fa = fb; fb = fc; fc = fa
        tol = 2.0 * 2.2e-16 * fabs(b) + 0.5 * xtol
        m = 0.5 * (c - b)
        if fabs(m) <= tol or fb == 0.0:
            return b
        if fabs(e) >= tol and fabs(fa) > fabs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            else:
                p = -p
            if 2.0 * p < 3.0 * m * q - fabs(tol * q) and p < fabs(0.5 * e * q):
                e = d
                d = p / q
            else:
                d = m
                e = m
        else:
            d = m
            e = m
        a = b
        fa = fb
        if fabs(d) > tol:
            b += d
        else:
            b += copysign(tol, m)
        fb = _slope(b, mx, my, ux, uy, xT, yT, xA, yA, alpha)
    return b


def atddg_aim(double xT, double yT, double xA, double yA, double xD, double yD, double alpha):
    cdef double dx = xD - xA, dy = yD - yA
    cdef double sd = hypot(dx, dy)
    cdef double lo = -_SCAN_HALF * sd, hi = _SCAN_HALF * sd
    if sd < 1e-12:
        return (C_DEGENERATE, NAN, NAN, NAN, 0, lo, hi)
    cdef double mx = 0.5 * (xA + xD), my = 0.5 * (yA + yD)
    cdef double ux = -dy / sd, uy = dx / sd
    cdef int n = <int>(2.0 * _SCAN_HALF / _SCAN_STEP + 0.5), i, count = 0, found = 0
    cdef double step = _SCAN_STEP * sd
    cdef double s0 = lo, s1, f0, f1, root, x, y, slack, best_slack = 0.0
    cdef double bx = NAN, by = NAN, bs = NAN
    f0 = _slope(s0, mx, my, ux, uy, xT, yT, xA, yA, alpha)
    for i in range(1, n + 1):
        s1 = lo + i * step
        f1 = _slope(s1, mx, my, ux, uy, xT, yT, xA, yA, alpha)
        found = 0
        if f0 == 0.0:
            root = s0
            found = 1
        elif f0 * f1 < 0.0:
            root = _brent(s0, s1, f0, f1, 1e-13 * sd, mx, my, ux, uy, xT, yT, xA, yA, alpha)
            found = 1
        if found:
            x = mx + root * ux
            y = my + root * uy
            slack = alpha * hypot(x - xA, y - yA) - hypot(x - xT, y - yT)
            if count == 0 or slack > best_slack:
                best_slack = slack
                bx = x; by = y; bs = root
            count += 1
        s0 = s1
        f0 = f1
    if count == 0:
        return (C_NO_ROOT, NAN, NAN, NAN, 0, lo, hi)
    return (C_OK, bx, by, bs, count, lo, hi)


cdef inline double _first_hit(double wx, double wy, double vx, double vy,
                              double eps, double dt) noexcept nogil:
    cdef double c = wx * wx + wy * wy - eps * eps
    if c <= 0.0:
        return 0.0
    cdef double a = vx * vx + vy * vy
    if a == 0.0:
        return -1.0
    cdef double b = wx * vx + wy * vy
    cdef double disc = b * b - a * c
    if disc < 0.0 or b >= 0.0:
        return -1.0
    cdef double tau = (-b - sqrt(disc)) / a
    return tau if tau <= dt else -1.0


cdef inline void _closest(double wx, double wy, double vx, double vy,
                          double *tau, double *dist) noexcept nogil:
    cdef double a = vx * vx + vy * vy
    cdef double t = 0.0
    if a != 0.0:
        t = -(wx * vx + wy * vy) / a
        if t < 0.0:
            t = 0.0
    tau[0] = t
    dist[0] = hypot(wx + t * vx, wy + t * vy)


cdef int _termination(double xT, double yT, double xA, double yA, double xD, double yD,
                      double vTx, double vTy, double vAx, double vAy, double vDx, double vDy,
                      double dt, double eps, double *tau_end, double *tc, double *ti) noexcept nogil:
    cdef double wcx = xT - xA, wcy = yT - yA, vcx = vTx - vAx, vcy = vTy - vAy
    cdef double wix = xD - xA, wiy = yD - yA, vix = vDx - vAx, viy = vDy - vAy
    cdef double hc = _first_hit(wcx, wcy, vcx, vcy, eps, dt)
    cdef double hi = _first_hit(wix, wiy, vix, viy, eps, dt)
    cdef double dc, di
    if hc < 0.0 and hi < 0.0:
        tau_end[0] = dt
        tc[0] = NAN
        ti[0] = NAN
        return C_RUNNING
    _closest(wcx, wcy, vcx, vcy, tc, &dc)
    _closest(wix, wiy, vix, viy, ti, &di)
    if dc <= eps and di <= eps and fabs(tc[0] - ti[0]) <= dt:
        tau_end[0] = tc[0]
        return C_SIMULTANEOUS
    if hc >= 0.0 and (hi < 0.0 or hc <= hi):
        tau_end[0] = tc[0]
        return C_ATTACKER_WINS
    tau_end[0] = ti[0]
    return C_TEAM_WINS


def termination(double xT, double yT, double xA, double yA, double xD, double yD,
                double vTx, double vTy, double vAx, double vAy, double vDx, double vDy,
                double dt, double eps):
    cdef double tau, tc, ti
    cdef int code = _termination(xT, yT, xA, yA, xD, yD, vTx, vTy, vAx, vAy, vDx, vDy,
                                 dt, eps, &tau, &tc, &ti)
    return (code, tau, tc, ti)


cdef inline int _unit(double dx, double dy, double *ux, double *uy) noexcept nogil:
    cdef double n = hypot(dx, dy)
    if n < 1e-12:
        return 0
    ux[0] = dx / n
    uy[0] = dy / n
    return 1


def rollout(double xT, double yT, double xA, double yA, double xD, double yD, double alpha,
            int amode, double aparam, int tmode, double tparam1, double tparam2,
            double dt, double eps, long max_steps):
    cdef double hTx = cos(tparam1), hTy = sin(tparam1)
    cdef double hDx = cos(tparam2), hDy = sin(tparam2)
    cdef double hAx = cos(aparam), hAy = sin(aparam)
    cdef double t = 0.0, tau, tc, ti, xc, yc, r, vTx, vTy
    cdef long k
    cdef int code = C_RUNNING
    cdef Aim aim
    with nogil:
        for k in range(max_steps):
            t = k * dt
            if amode == C_A_OPTIMAL or amode == C_A_AIM_OFFSET or tmode == C_TEAM_OPTIMAL:
                aim = _cdg_aim(xT, yT, xA, yA, xD, yD, alpha)
                if aim.status == C_OK:
                    if tmode == C_TEAM_OPTIMAL:
                        _unit(aim.x - xT, aim.y - yT, &hTx, &hTy)
                        _unit(aim.x - xD, aim.y - yD, &hDx, &hDy)
                    if amode == C_A_OPTIMAL:
                        _unit(aim.x - xA, aim.y - yA, &hAx, &hAy)
                    elif amode == C_A_AIM_OFFSET:
                        _circle(xT, yT, xA, yA, alpha, &xc, &yc, &r)
                        _unit(xc + r * cos(aim.omega + aparam) - xA,
                              yc + r * sin(aim.omega + aparam) - yA, &hAx, &hAy)
            if amode == C_A_PURSUIT:
                _unit(xT - xA, yT - yA, &hAx, &hAy)
            if tmode == C_TEAM_FIXED:
                hTx = cos(tparam1); hTy = sin(tparam1)
                hDx = cos(tparam2); hDy = sin(tparam2)
            vTx = alpha * hTx
            vTy = alpha * hTy
            code = _termination(xT, yT, xA, yA, xD, yD, vTx, vTy, hAx, hAy, hDx, hDy,
                                dt, eps, &tau, &tc, &ti)
            if code != C_RUNNING:
                break
            xT += dt * vTx
            yT += dt * vTy
            xA += dt * hAx
            yA += dt * hAy
            xD += dt * hDx
            yD += dt * hDy
    if code != C_RUNNING:
        return (code, t + tau,
                xT + tau * vTx, yT + tau * vTy, xA + tau * hAx, yA + tau * hAy,
                xD + tau * hDx, yD + tau * hDy, t + tc, t + ti)
    return (C_TIMEOUT, max_steps * dt, xT, yT, xA, yA, xD, yD, NAN, NAN)
