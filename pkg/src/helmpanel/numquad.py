"""Numerical quadrature for panel integrals, plus the validation oracle.

``polar_integrate`` is the production numeric path: the planar triangle is
split about the origin and an n x n Gauss-Legendre tensor rule applied in
(theta, r) on each subtriangle, with the polar Jacobian absorbing one
power of the 1/R singularity.

``adaptive_oracle`` is the independent reference: globally adaptive
Gauss-Kronrod integration of the defining integrals, sharing nothing with
the expansion/recursion machinery.  For the 1-weighted integrals the
radial integral has a closed form, so only the angle direction is
integrated numerically; the x/y moments use an adaptive inner integral in
the substitution t^2 = R - |z|, which removes the square-root behaviour
at r = 0.

``tri_rule`` supplies a symmetric positive-weight rule on the triangle
(exact to polynomial degree 2n-2) for regular integrands.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .analytic import PanelIntegrals
from .geometry import ref_params, subdivide

# Gauss-Kronrod 7-15 pair on [-1, 1]: (node, Gauss weight, Kronrod weight).
_GK15 = (
    (+0.949107912342759, 0.129484966168870, 0.063092092629979),
    (-0.949107912342759, 0.129484966168870, 0.063092092629979),
    (+0.741531185599394, 0.279705391489277, 0.140653259715525),
    (-0.741531185599394, 0.279705391489277, 0.140653259715525),
    (+0.405845151377397, 0.381830050505119, 0.190350578064785),
    (-0.405845151377397, 0.381830050505119, 0.190350578064785),
    (0.000000000000000, 0.417959183673469, 0.209482141084728),
    (+0.991455371120813, 0.000000000000000, 0.022935322010529),
    (-0.991455371120813, 0.000000000000000, 0.022935322010529),
    (+0.864864423359769, 0.000000000000000, 0.104790010322250),
    (-0.864864423359769, 0.000000000000000, 0.104790010322250),
    (+0.586087235467691, 0.000000000000000, 0.169004726639267),
    (-0.586087235467691, 0.000000000000000, 0.169004726639267),
    (+0.207784955007898, 0.000000000000000, 0.204432940075298),
    (-0.207784955007898, 0.000000000000000, 0.204432940075298),
)
_GK_X = np.array([row[0] for row in _GK15])
_GK_WG = np.array([row[1] for row in _GK15])
_GK_WK = np.array([row[2] for row in _GK15])


@lru_cache(maxsize=None)
def gauss_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def quad_adaptive(f, a: float, b: float, tol: float, max_intervals: int = 4000):
    """Globally adaptive Gauss-Kronrod quadrature of a vector integrand.

    ``f`` maps an array of abscissae to an array (npts, ncomp); complex
    components are fine.  Returns (values, error_estimate, converged);
    the estimate is the summed per-interval |K15 - G7|, a conservative
    bound for smooth integrands.
    """

    def panel(lo: float, hi: float):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        y = np.atleast_2d(np.asarray(f(mid + half * _GK_X)))
        k15 = half * (_GK_WK @ y)
        g7 = half * (_GK_WG @ y)
        # QUADPACK-style estimate: scale |K15 - G7| by the panel's
        # deviation-from-mean integral so smooth panels are not held at
        # the raw difference's roundoff floor
        resasc = half * (_GK_WK @ np.abs(y - k15 / (2.0 * half)))
        e = np.abs(k15 - g7)
        with np.errstate(divide="ignore", invalid="ignore"):
            scaled = np.where(
                resasc > 0.0,
                resasc * np.minimum(1.0, (200.0 * e / np.where(resasc > 0, resasc, 1.0)) ** 1.5),
                e,
            )
        err = float(np.max(scaled))
        return k15, err

    val, err = panel(a, b)
    heap = [(-err, a, b, val, err)]
    total = val.copy()
    total_err = err
    count = 1
    while total_err > tol and count < max_intervals:
        _, lo, hi, v, e = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = panel(lo, mid)
        v2, e2 = panel(mid, hi)
        total = total - v + v1 + v2
        total_err = total_err - e + e1 + e2
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
        count += 1
    return total, total_err, total_err <= tol


def polar_nodes(verts2d, n: int):
    """Quadrature nodes for the polar transformation on a planar triangle.

    Returns (x, y, w): plane coordinates and signed weights including the
    polar Jacobian, so that sum(w * f(x, y)) approximates the area
    integral of f.  With f = 1 the weights sum to the triangle area.
    """
    xg, wg = gauss_rule(n)
    xs, ys, ws = [], [], []
    for sub in subdivide(verts2d):
        geom = ref_params(sub, 0.0)
        half = 0.5 * (geom.theta_hi - geom.theta_lo)
        mid = 0.5 * (geom.theta_hi + geom.theta_lo)
        th = mid + half * xg
        wth = half * wg
        rbar = geom.s / np.cos(th)
        r = 0.5 * rbar[:, None] * (xg[None, :] + 1.0)
        wr = 0.5 * rbar[:, None] * wg[None, :]
        w = sub.sign * wth[:, None] * wr * r
        psi = sub.psi1 + geom.phi + th
        xs.append((r * np.cos(psi)[:, None]).ravel())
        ys.append((r * np.sin(psi)[:, None]).ravel())
        ws.append(w.ravel())
    if not xs:
        return np.zeros(0), np.zeros(0), np.zeros(0)
    return np.concatenate(xs), np.concatenate(ys), np.concatenate(ws)


def _kernel_sums(x, y, w, z: float, k: float, want_hyper: bool) -> PanelIntegrals:
    r2 = x * x + y * y
    R = np.sqrt(r2 + z * z)
    G = np.exp(1j * k * R) / R
    jk = 1j * k
    i0 = np.sum(w * G)
    ix = np.sum(w * x * G)
    iy = np.sum(w * y * G)
    dG = (jk - 1.0 / R) * G * (z / R)
    di0 = np.sum(w * dG)
    dix = np.sum(w * x * dG)
    diy = np.sum(w * y * dG)
    d2 = None
    if want_hyper:
        gp = jk - 1.0 / R
        d2G = G * ((gp * gp + 1.0 / R**2) * (z / R) ** 2 + gp * r2 / R**3)
        d2 = complex(np.sum(w * d2G))
    return PanelIntegrals(
        i0=complex(i0),
        ix=complex(ix),
        iy=complex(iy),
        di0_dn=-complex(di0),
        dix_dn=-complex(dix),
        diy_dn=-complex(diy),
        d2i0_dn2=d2,
    )


def polar_integrate(verts2d, z: float, k: float, n: int, want_hyper: bool = False) -> PanelIntegrals:
    """n x n Gauss quadrature of the panel integrals in polar coordinates.

    The z-derivatives integrate the differentiated kernel; at z = 0 they
    vanish identically (symmetric value), unlike the one-sided analytic
    limits.
    """
    x, y, w = polar_nodes(verts2d, n)
    return _kernel_sums(x, y, w, z, k, want_hyper)


def adaptive_oracle(
    verts2d,
    z: float,
    k: float,
    tol: float = 1e-13,
    want_hyper: bool = False,
    components: tuple[str, ...] = ("i0", "ixy", "di0", "dixy"),
    return_status: bool = False,
):
    """Adaptive reference evaluation of the panel integrals.

    Independent of the expansion machinery: adaptive Gauss-Kronrod in the
    angle with exact (1-weight) or adaptively integrated (x/y-weight)
    radial integrals.  ``components`` limits the work; omitted components
    are returned as 0.  Derivatives at z = 0 are one-sided limits from
    z > 0, matching the analytic convention.

    With ``return_status`` the achieved error estimate and convergence
    flag are returned alongside the values instead of being discarded.
    """
    az = abs(z)
    sigma = 1.0 if z >= 0.0 else -1.0
    jk = 1j * k
    ez = cmath.exp(1j * k * az)
    subs = subdivide(verts2d)
    total = PanelIntegrals.zero(want_hyper)
    achieved = 0.0
    converged = True
    if not subs:
        return (total, {"error": 0.0, "converged": True}) if return_status else total
    tol_sub = tol / len(subs)
    want_xy = "ixy" in components or "dixy" in components

    for sub in subs:
        geom = ref_params(sub, z)
        psi_f = sub.psi1 + geom.phi

        def moment_inner(theta: float, need_dm: bool):
            rbar = geom.s / math.cos(theta)
            Rbar = math.hypot(rbar, z)
            tau = math.sqrt(max(Rbar - az, 0.0))
            if tau == 0.0:
                return 0j, 0j

            def f_in(t):
                t = np.asarray(t)
                root = np.sqrt(t * t + 2.0 * az)
                R = az + t * t
                e = np.exp(1j * k * R)
                m = 2.0 * e * t * t * root
                if need_dm:
                    dm = z * (jk - 1.0 / R) * e * 2.0 * t * t * root / R
                else:
                    dm = np.zeros_like(m)
                return np.stack([m, dm], axis=-1)

            v, _, _ = quad_adaptive(f_in, 0.0, tau, tol_sub * 0.02, max_intervals=600)
            return complex(v[0]), complex(v[1])

        def f_theta(th):
            th = np.asarray(th)
            rbar = geom.s / np.cos(th)
            Rbar = np.sqrt(rbar * rbar + z * z)
            eR = np.exp(1j * k * Rbar)
            cols = []
            if k == 0.0:
                inner0 = Rbar - az
            else:
                inner0 = (eR - ez) / jk
            cols.append(inner0)
            d0 = (z / Rbar) * eR - sigma * ez
            cols.append(d0)
            hyp = (rbar**2 / Rbar**3 + jk * z * z / Rbar**2) * eR - jk * ez
            cols.append(hyp)
            if want_xy:
                ms = np.empty(len(th), dtype=complex)
                dms = np.empty(len(th), dtype=complex)
                for i, t in enumerate(th):
                    ms[i], dms[i] = moment_inner(float(t), "dixy" in components)
                cpsi = np.cos(psi_f + th)
                spsi = np.sin(psi_f + th)
                cols.extend([cpsi * ms, spsi * ms, cpsi * dms, spsi * dms])
            return np.stack(cols, axis=-1)

        v, err, ok = quad_adaptive(f_theta, geom.theta_lo, geom.theta_hi, tol_sub)
        achieved += err
        converged = converged and ok
        part = PanelIntegrals(
            i0=complex(v[0]),
            ix=complex(v[3]) if want_xy else 0j,
            iy=complex(v[4]) if want_xy else 0j,
            di0_dn=-complex(v[1]),
            dix_dn=-complex(v[5]) if want_xy else 0j,
            diy_dn=-complex(v[6]) if want_xy else 0j,
            d2i0_dn2=complex(v[2]) if want_hyper else None,
        )
        total = total + sub.sign * part
    if return_status:
        return total, {"error": achieved, "converged": converged}
    return total


@dataclass
class TriRule:
    """Symmetric quadrature rule on the unit triangle.

    ``bary`` holds barycentric node coordinates; weights are normalized to
    sum to 1, so the rule integrates as area * sum(w_i * f(node_i)).
    """

    bary: np.ndarray
    weights: np.ndarray
    degree: int


@lru_cache(maxsize=8)
def tri_rule(n: int = 16) -> TriRule:
    """Symmetrized collapsed-Gauss rule, exact to degree 2n - 2.

    Built from the n x n product Gauss rule on the square mapped by
    (a, b) -> (a, b(1-a)) and averaged over all six vertex permutations,
    which makes it fully symmetric with positive weights.
    """
    xg, wg = gauss_rule(n)
    a = 0.5 * (xg + 1.0)
    wa = 0.5 * wg
    A, B = np.meshgrid(a, a, indexing="ij")
    WA, WB = np.meshgrid(wa, wa, indexing="ij")
    x = A.ravel()
    y = (B * (1.0 - A)).ravel()
    w = (WA * WB * (1.0 - A)).ravel()
    w = w / w.sum()
    lam = np.column_stack([1.0 - x - y, x, y])
    barys = []
    weights = []
    for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)):
        barys.append(lam[:, perm])
        weights.append(w / 6.0)
    return TriRule(
        bary=np.vstack(barys), weights=np.concatenate(weights), degree=2 * n - 2
    )


def symmetric_rule_integrate(
    verts2d, z: float, k: float, rule: TriRule, want_hyper: bool = False
) -> PanelIntegrals:
    """Panel integrals by a symmetric triangle rule (regular integrands only).

    Accurate when the field-point projection lies outside the element;
    near-singular integrands defeat any fixed polynomial rule.
    """
    verts2d = np.asarray(verts2d, dtype=float)
    nodes = rule.bary @ verts2d
    x, y = nodes[:, 0], nodes[:, 1]
    area = abs(
        0.5
        * (
            (verts2d[1, 0] - verts2d[0, 0]) * (verts2d[2, 1] - verts2d[0, 1])
            - (verts2d[1, 1] - verts2d[0, 1]) * (verts2d[2, 0] - verts2d[0, 0])
        )
    )
    return _kernel_sums(x, y, rule.weights * area, z, k, want_hyper)
