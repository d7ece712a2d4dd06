"""Shared oracle helpers for the test suite.

Everything here evaluates defining integrals directly (adaptive quadrature,
Legendre recurrences, closed antiderivatives from first principles) and
stays independent of the recursion/expansion code paths it validates.
"""

from __future__ import annotations

import math

import numpy as np

from helmpanel.numquad import quad_adaptive


def delta(alpha_p: float, th):
    return np.hypot(np.cos(th), alpha_p * np.sin(th))


def _adaptive_scaled(f, lo: float, hi: float, rel: float = 1e-13) -> float:
    """Adaptive quadrature with tolerance scaled to the integral size."""
    rough, _, _ = quad_adaptive(f, lo, hi, 1e-6)
    tol = rel * (1.0 + float(np.max(np.abs(rough))))
    v, _, ok = quad_adaptive(f, lo, hi, tol)
    assert ok
    return float(v[0].real)


def oracle_pow_plain(alpha: float, lo: float, hi: float, n: int) -> float:
    ap = math.sqrt((1 - alpha) * (1 + alpha))

    def f(th):
        th = np.asarray(th)
        return ((delta(ap, th) / np.cos(th)) ** n)[:, None]

    return _adaptive_scaled(f, lo, hi)


def oracle_pow_tan(alpha: float, lo: float, hi: float, n: int) -> float:
    ap = math.sqrt((1 - alpha) * (1 + alpha))

    def f(th):
        th = np.asarray(th)
        return (((delta(ap, th) / np.cos(th)) ** n) * np.tan(th))[:, None]

    return _adaptive_scaled(f, lo, hi)


def legendre_p(q: int, x: float) -> float:
    """P_q(x) by the three-term recurrence."""
    p0, p1 = 1.0, x
    if q == 0:
        return p0
    for m in range(2, q + 1):
        p0, p1 = p1, ((2 * m - 1) * x * p1 - (m - 1) * p0) / m
    return p1


def legendre_remainder(t: float, z: float, r_mid: float, q_trunc: int) -> float:
    """1/R minus the order-q_trunc truncated Legendre expansion (float64)."""
    r_all = math.hypot(r_mid, z)
    cphi = r_mid / r_all
    r = r_mid * (1.0 - t)
    big_r = math.hypot(r, z)
    x = t * cphi
    total = 0.0
    xq = 1.0
    p0, p1 = 1.0, cphi
    for m in range(q_trunc + 1):
        if m == 0:
            pm = p0
        elif m == 1:
            pm = p1
        else:
            p0, p1 = p1, ((2 * m - 1) * cphi * p1 - (m - 1) * p0) / m
            pm = p1
        total += xq * pm
        xq *= x
    return 1.0 / big_r - total / r_all


def mp_remainder(t, z, r_mid, q_trunc, dps: int = 70):
    """Extended-precision truncation remainder (mpmath); exact to ~10^-dps."""
    from mpmath import mp, mpf, sqrt as msqrt

    mp.dps = dps
    r_all = msqrt(mpf(r_mid) ** 2 + mpf(z) ** 2)
    cphi = mpf(r_mid) / r_all
    t = mpf(t)
    r = mpf(r_mid) * (1 - t)
    big_r = msqrt(r * r + mpf(z) ** 2)
    x = t * cphi
    p0, p1 = mpf(1), cphi
    total = p0
    xq = mpf(1)
    if q_trunc >= 1:
        xq = x
        total += xq * p1
    for m in range(2, q_trunc + 1):
        p0, p1 = p1, ((2 * m - 1) * cphi * p1 - (m - 1) * p0) / m
        xq *= x
        total += xq * p1
    return float(1 / big_r - total / r_all)


def remainder_amplitude(t, z, r_mid, q_trunc) -> float:
    """Brute-force amplitude of the oscillatory truncation remainder.

    The remainder oscillates with the truncation order (it is the
    imaginary part of a phased complex series), so its pointwise value can
    sit near a null; the amplitude that the magnitude bound estimates is
    recovered as the max |remainder| over the adjacent truncation orders,
    rescaled to the common (t cos phi)^(Q+1) scale.
    """
    x = abs(t) * r_mid / math.hypot(r_mid, z)
    r0 = abs(mp_remainder(t, z, r_mid, q_trunc))
    rm = abs(mp_remainder(t, z, r_mid, q_trunc - 1)) * x
    rp = abs(mp_remainder(t, z, r_mid, q_trunc + 1)) / x if x > 0 else 0.0
    return max(r0, rm, rp)


def rigid_motion(rng) -> tuple[np.ndarray, np.ndarray]:
    """Random proper rotation and translation."""
    a = rng.normal(size=(3, 3))
    q, _ = np.linalg.qr(a)
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q, rng.normal(size=3) * 2.0


def random_planar_triangle(rng, scale: float = 1.0) -> np.ndarray:
    """Random well-conditioned planar triangle (3, 2)."""
    while True:
        v = rng.uniform(-1.0, 1.0, size=(3, 2)) * scale
        e = [np.linalg.norm(v[(i + 1) % 3] - v[i]) for i in range(3)]
        area = 0.5 * abs(
            (v[1, 0] - v[0, 0]) * (v[2, 1] - v[0, 1])
            - (v[1, 1] - v[0, 1]) * (v[2, 0] - v[0, 0])
        )
        if area > 0.08 * scale * scale and min(e) > 0.25 * scale:
            if area * 2.0 < 0:  # unreachable; keep orientation arbitrary
                v = v[::-1]
            return v
