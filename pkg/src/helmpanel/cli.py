"""Command-line front end.

Subcommands:
  integrate   evaluate one triangle / field point and print the result
  sweep       error-vs-z curves (analytic vs oracle, numeric orders, Q) as CSV
  estimate    quadrature-order criterion for given radial extents
  economize   dump economized sin/cos coefficient tables as CSV

All numbers print with 17 significant digits; CSV output is deterministic,
comma-separated with '.' decimals, LF line endings, and '#'-prefixed header
comments recording the full invocation.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .engine import (
    EvalRequest,
    SAMPLE_PROJECTIONS,
    evaluate,
    sample_triangle,
)
from .estimator import Q_CAP, EstimatorGeom, e_q_bound, q_required, select_order
from .expapprox import DELTA_X_LABELS, DELTA_X_TIERS, EPS_TIERS, economize
from .geometry import RadialExtents, Triangle3, radial_extents, to_local_frame


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _parse_floats(text: str, n: int, what: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad {what}: {exc}") from None
    if len(vals) != n:
        raise argparse.ArgumentTypeError(f"{what} needs {n} comma-separated values")
    return vals


def _parse_dx(text: str) -> float:
    """Accept 'pi/16' style labels or a plain float."""
    t = text.strip().lower().replace(" ", "")
    for label, dx in zip(DELTA_X_LABELS, DELTA_X_TIERS):
        if t == label:
            return dx
    if t == "pi":
        return math.pi
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad delta-x {text!r}") from None


def _world_point(tri: Triangle3, px: float, py: float, z: float) -> np.ndarray:
    """Point at in-plane coordinates (px, py) and height z above the element.

    The in-plane frame has origin v1, x-axis along (v2 - v1) and y-axis
    completing a right-handed system with the element normal.
    """
    n = tri.normal
    e1 = tri.v2 - tri.v1
    e1 = e1 / np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    return tri.v1 + px * e1 + py * e2 + z * n


def cmd_integrate(args) -> int:
    tri = Triangle3.from_flat(_parse_floats(args.tri, 9, "--tri"))
    point = np.array(_parse_floats(args.point, 3, "--point"))
    req = EvalRequest(
        triangle=tri,
        field_point=point,
        k=args.k,
        tol=args.tol,
        want_hypersingular=args.hyper,
    )
    rep = evaluate(req, method=args.method)
    res = rep.result
    est = rep.estimator
    print(f"method: {rep.method.kind}")
    if rep.method.kind == "numeric":
        print(f"n_gauss: {rep.method.n_gauss}")
    else:
        print(f"q_expansion: {rep.method.q_expansion}  delta_x: {_fmt(rep.method.delta_x)}")
    if rep.method.note:
        print(f"note: {rep.method.note}")
    if est is not None:
        if est.analytic_required:
            print("estimator: analytic required (no Q <= cap meets tolerance)")
        else:
            print(f"estimator: Q = {est.q}  E_Q = {_fmt(est.e_q)}")
    print(f"z: {_fmt(rep.z)}")
    rows = [
        ("I0", res.i0),
        ("Ix", res.ix),
        ("Iy", res.iy),
        ("dI0/dn", res.di0_dn),
        ("dIx/dn", res.dix_dn),
        ("dIy/dn", res.diy_dn),
    ]
    if res.d2i0_dn2 is not None:
        rows.append(("d2I0/dn2", res.d2i0_dn2))
    for name, v in rows:
        print(f"{name}: {_fmt(v.real)} {'+' if v.imag >= 0 else '-'} {_fmt(abs(v.imag))}j")
    machine = ",".join(
        ["RESULT", rep.method.kind]
        + [_fmt(v) for pair in ((c.real, c.imag) for _, c in rows) for v in pair]
    )
    print(machine)
    return 0


def cmd_sweep(args) -> int:
    from .numquad import adaptive_oracle

    if args.tri is not None:
        tri = Triangle3.from_flat(_parse_floats(args.tri, 9, "--tri"))
    else:
        tri = sample_triangle()
    if args.proj is not None:
        px, py = _parse_floats(args.proj, 2, "--proj")
    else:
        px, py = SAMPLE_PROJECTIONS[args.sample_point]
    tols = [float(t) for t in args.tols.split(",")]
    orders = [int(n) for n in args.orders.split(",")]
    if args.steps < 2:
        print("error: --steps must be >= 2", file=sys.stderr)
        return 2
    if args.log:
        if args.zmin <= 0.0:
            print("error: --zmin must be > 0 for log spacing", file=sys.stderr)
            return 2
        zs = np.geomspace(args.zmin, args.zmax, args.steps)
    else:
        zs = np.linspace(args.zmin, args.zmax, args.steps)

    out = sys.stdout
    out.write("# helmpanel sweep\n")
    out.write(
        "# tri=" + ",".join(_fmt(v) for v in tri.vertices.ravel())
        + f" proj={_fmt(px)},{_fmt(py)} k={_fmt(args.k)}\n"
    )
    out.write(
        f"# zmin={_fmt(args.zmin)} zmax={_fmt(args.zmax)} steps={args.steps} "
        f"log={int(args.log)} tols={args.tols} orders={args.orders}\n"
    )
    out.write("# err_* columns: |value - adaptive oracle (tol 1e-13)|;\n")
    out.write(f"# errn_* columns: |numeric(n) - analytic(1e-12)|; Q: order with E_Q <= tol (-1: none <= {args.qmax})\n")
    cols = ["z"]
    cols += [f"err_I0_tol{t:g}" for t in tols]
    cols += [f"err_dI0_tol{t:g}" for t in tols]
    cols += [f"errn_I0_n{n}" for n in orders]
    cols += [f"errn_dI0_n{n}" for n in orders]
    cols += [f"Q_tol{t:g}" for t in tols]
    cols += ["oracle_ok"]
    out.write(",".join(cols) + "\n")

    for z in zs:
        point = _world_point(tri, px, py, float(z))
        _, verts2d, zloc = to_local_frame(tri, point)
        ext = radial_extents(verts2d)
        oracle, status = adaptive_oracle(
            verts2d, zloc, args.k, tol=1e-13, components=("i0", "di0"),
            return_status=True,
        )
        row = [_fmt(z)]
        refs = []
        for t in tols:
            rep = evaluate(
                EvalRequest(triangle=tri, field_point=point, k=args.k, tol=t),
                method="analytic",
            )
            refs.append(rep.result)
        rep12 = evaluate(
            EvalRequest(triangle=tri, field_point=point, k=args.k, tol=1e-12),
            method="analytic",
        ).result
        row += [_fmt(abs(r.i0 - oracle.i0)) for r in refs]
        row += [_fmt(abs(r.di0_dn - oracle.di0_dn)) for r in refs]
        nums = [
            evaluate(
                EvalRequest(triangle=tri, field_point=point, k=args.k, tol=1e-12),
                method="numeric",
                n_gauss=n,
            ).result
            for n in orders
        ]
        row += [_fmt(abs(r.i0 - rep12.i0)) for r in nums]
        row += [_fmt(abs(r.di0_dn - rep12.di0_dn)) for r in nums]
        for t in tols:
            q = q_required(ext, zloc, t, q_max=args.qmax)
            row.append(str(q if q is not None else -1))
        row.append("1" if status["converged"] else "0")
        out.write(",".join(row) + "\n")
    return 0


def cmd_estimate(args) -> int:
    if args.rmax <= 0.0 or args.rmin < 0.0 or args.rmin > args.rmax:
        print("error: need 0 <= rmin <= rmax, rmax > 0", file=sys.stderr)
        return 2
    ext = RadialExtents(r_min=args.rmin, r_max=args.rmax)
    if args.z == 0.0:
        if ext.r_min > 0.0:
            print("phi = 0 (z = 0, projection outside): r/R is constant, Q = 1")
            return 0
        print("z = 0 with r_min = 0: singular integral, analytic evaluation required")
        return 0
    sel = select_order(ext, args.z, args.tol)
    geom = EstimatorGeom.from_extents(ext, args.z)
    print(
        f"r_mid={_fmt(geom.r_mid)} R_mid={_fmt(geom.R_mid)} "
        f"cos_phi={_fmt(geom.cos_phi)} t={_fmt(geom.t)}"
    )
    q_hi = sel.q if not sel.analytic_required else Q_CAP
    print("Q,E_Q")
    for q in range(1, q_hi + 1):
        print(f"{q},{_fmt(e_q_bound(geom, q))}")
    if sel.analytic_required:
        print(f"selection: analytic required (E_Q > {_fmt(args.tol)} for all Q <= {Q_CAP})")
    else:
        print(f"selection: Q = {sel.q}, n_gauss = {sel.n_gauss}, E_Q = {_fmt(sel.e_q)}")
    return 0


def cmd_economize(args) -> int:
    out = sys.stdout
    out.write("# helmpanel economize: e_q = c_q + j s_q with max|cos-p_c|,max|sin-p_s| <= eps on [0, delta_x)\n")
    out.write("delta_x,eps,Q,q,c_q,s_q\n")
    if args.all:
        pairs = [(dx, e) for dx in DELTA_X_TIERS for e in EPS_TIERS]
    else:
        pairs = [(args.dx, args.eps)]
    for dx, eps in pairs:
        ap = economize(dx, eps)
        for q in range(ap.q + 1):
            out.write(
                f"{_fmt(dx)},{_fmt(eps)},{ap.q},{q},"
                f"{_fmt(ap.cos_coeffs[q])},{_fmt(ap.sin_coeffs[q])}\n"
            )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="helmpanel",
        description="Helmholtz layer-potential integrals over plane triangles "
        "(values exclude the 1/4pi of the Green's function)",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("integrate", help="evaluate one triangle / field point")
    pi.add_argument("--tri", required=True, help="x1,y1,z1,x2,y2,z2,x3,y3,z3")
    pi.add_argument("--point", required=True, help="px,py,pz")
    pi.add_argument("--k", type=float, required=True, help="wavenumber")
    pi.add_argument("--tol", type=float, default=1e-9, help="requested tolerance")
    pi.add_argument("--hyper", action="store_true", help="also compute d2I0/dn2")
    pi.add_argument(
        "--method", choices=("auto", "analytic", "numeric"), default="auto"
    )
    pi.set_defaults(func=cmd_integrate)

    ps = sub.add_parser("sweep", help="error-vs-z sweep as CSV on stdout")
    ps.add_argument("--tri", default=None, help="triangle coords (default: sample)")
    ps.add_argument("--proj", default=None, help="in-plane projection px,py")
    ps.add_argument(
        "--sample-point", type=int, choices=(1, 2, 3, 4), default=2,
        help="sample projection when --proj omitted: 1 vertex, 2 interior, 3 edge, 4 exterior",
    )
    ps.add_argument("--k", type=float, default=1.0)
    ps.add_argument("--zmin", type=float, required=True)
    ps.add_argument("--zmax", type=float, required=True)
    ps.add_argument("--steps", type=int, required=True)
    ps.add_argument("--log", action="store_true", help="log-spaced z values")
    ps.add_argument("--tols", default="1e-3,1e-6,1e-9,1e-12")
    ps.add_argument("--orders", default="4,8,16,32")
    ps.add_argument("--qmax", type=int, default=512)
    ps.set_defaults(func=cmd_sweep)

    pe = sub.add_parser("estimate", help="quadrature-order criterion")
    pe.add_argument("--rmax", type=float, required=True)
    pe.add_argument("--rmin", type=float, required=True)
    pe.add_argument("--z", type=float, required=True)
    pe.add_argument("--tol", type=float, required=True)
    pe.set_defaults(func=cmd_estimate)

    pc = sub.add_parser("economize", help="dump sin/cos coefficient table as CSV")
    pc.add_argument("--dx", type=_parse_dx, default=math.pi / 2, help="pi/16, pi/8, pi/4, pi/2 or float")
    pc.add_argument("--eps", type=float, default=1e-9)
    pc.add_argument("--all", action="store_true", help="emit the full table")
    pc.set_defaults(func=cmd_economize)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
