"""A-priori error estimate for polar Gaussian quadrature of 1/R.

The radial integrand 1/R over a triangle viewed from the projected field
point is expanded in Legendre polynomials through the generating function,

    1/R = (1/R_mid) sum_q (t cos(phi))^q P_q(cos(phi)),

with r = r_mid (1 - t), r_mid = r_max / 2, R_mid^2 = r_mid^2 + z^2 and
cos(phi) = r_mid / R_mid.  Truncating at order Q leaves a remainder whose
large-order asymptotics give a signed estimate epsilon_Q and a magnitude
bound E_Q computable from (r_min, r_max, z) alone.  The smallest Q with
E_Q below tolerance sets the Gaussian quadrature order; when no Q up to
Q_CAP suffices the analytic evaluation is required instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import RadialExtents

# Largest polynomial order handled by quadrature before switching to the
# analytic path; 32 corresponds to the 16-point-rule regime studied in the
# error-analysis test cases.
Q_CAP = 32


@dataclass
class EstimatorGeom:
    """Reduced geometry feeding the 1/R error estimate."""

    r_mid: float
    R_mid: float
    cos_phi: float
    sin_phi: float
    t: float

    @classmethod
    def from_extents(cls, extents: RadialExtents, z: float) -> "EstimatorGeom":
        r_mid = 0.5 * extents.r_max
        R_mid = math.hypot(r_mid, z)
        # t = 1 when the projection lies on the element, negative when the
        # nearest point is beyond the radial midpoint (r_min > r_mid); the
        # magnitude bound uses |t|, so the sign only feeds the denominator.
        # Clamping covers rounding: r_min <= r_max keeps t >= -1 anyway.
        t = (r_mid - extents.r_min) / r_mid if r_mid > 0.0 else 0.0
        t = min(1.0, max(-1.0, t))
        return cls(
            r_mid=r_mid,
            R_mid=R_mid,
            cos_phi=r_mid / R_mid,
            sin_phi=abs(z) / R_mid,
            t=t,
        )


def _check_phi(geom: EstimatorGeom) -> None:
    if geom.sin_phi == 0.0:
        raise ValueError(
            "phi = 0 (field point in the element plane): 1/R is constant "
            "along r and the estimate does not apply"
        )


def epsilon_q(geom: EstimatorGeom, q: int) -> float:
    """Signed remainder estimate for the order-q truncation.

    Oscillatory in q; tracks the sign and magnitude of the true remainder
    of the Legendre expansion of 1/R evaluated at the given t.
    """
    _check_phi(geom)
    phi = math.atan2(geom.sin_phi, geom.cos_phi)
    w = geom.t * geom.cos_phi * complex(math.cos(phi), math.sin(phi))
    val = (
        (1.0 + 1.0j)
        / geom.R_mid
        * complex(math.cos(phi / 2.0), math.sin(phi / 2.0))
        / math.sqrt(math.pi * (q + 1) * geom.sin_phi)
        * w ** (q + 1)
        / (1.0 - w)
    )
    return val.imag


def e_q_bound(geom: EstimatorGeom, q: int) -> float:
    """Magnitude bound E_Q on the truncation remainder of 1/R."""
    _check_phi(geom)
    t = geom.t
    denom = math.sqrt((1.0 - t) ** 2 * geom.cos_phi**2 + geom.sin_phi**2)
    return (
        (1.0 / geom.R_mid)
        * math.sqrt(2.0 / (math.pi * geom.sin_phi))
        * abs(t) ** (q + 1)
        / math.sqrt(q + 1)
        * geom.cos_phi ** (q + 1)
        / denom
    )


def e_q_bound_enclosed(geom: EstimatorGeom, q: int) -> float:
    """E_Q specialised to t = 1 (projection on the element)."""
    _check_phi(geom)
    return (
        (1.0 / geom.R_mid)
        * math.sqrt(2.0 / (math.pi * geom.sin_phi**3))
        * geom.cos_phi ** (q + 1)
        / math.sqrt(q + 1)
    )


def q_required(extents: RadialExtents, z: float, tol: float, q_max: int = 512) -> int | None:
    """Smallest Q with E_Q <= tol, or None if none exists up to q_max.

    z = 0 is special: with r_min > 0 the radial integrand r/R is constant
    so Q = 1; with r_min = 0 the integral is singular and no finite order
    works.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if z == 0.0:
        return 1 if extents.r_min > 0.0 else None
    geom = EstimatorGeom.from_extents(extents, z)
    for q in range(1, q_max + 1):
        if e_q_bound(geom, q) <= tol:
            return q
    return None


@dataclass
class OrderSelection:
    """Outcome of the quadrature-order criterion."""

    analytic_required: bool
    q: int | None = None
    e_q: float | None = None
    n_gauss: int | None = None


def select_order(extents: RadialExtents, z: float, tol: float, q_cap: int = Q_CAP) -> OrderSelection:
    """Pick the Gaussian order for 1/R or demand the analytic path.

    Returns the smallest Q with E_Q <= tol together with the per-direction
    Gauss point count ceil((Q+1)/2); when Q would exceed q_cap the analytic
    evaluation is required.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if z == 0.0 and extents.r_min == 0.0:
        return OrderSelection(analytic_required=True)
    q = q_required(extents, z, tol, q_max=q_cap)
    if q is None:
        return OrderSelection(analytic_required=True)
    geom = EstimatorGeom.from_extents(extents, z) if z != 0.0 else None
    return OrderSelection(
        analytic_required=False,
        q=q,
        e_q=e_q_bound(geom, q) if geom is not None else 0.0,
        n_gauss=(q + 2) // 2,
    )
