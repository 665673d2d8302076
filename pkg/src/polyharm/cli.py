"""Command-line front end: ``polyharm <subcommand> ...``.

Exit codes: 0 pass, 1 fail, 2 usage or configuration error. Reports are JSON
on stdout (or ``--report PATH``); fields go to CSV.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import config as cfgmod
from .config import ConfigError, dumps, version_string, write_csv
from .evolution import spacetime_residual
from .expansion import InvalidDimensionError, terms_as_dict
from .grid import GridSpecError, parse_grid
from .halfspace import (DomainError, IntegrabilityError, QuadConfig, ToleranceNotMetError,
                        convolve_halfplane, cross_validate, parse_boundary, solve_halfspace)
from .oracle import ORDER_BAND, ROUNDOFF_FLOOR, convergence_study, default_h_ladder
from .separable import eval_grid, residual_report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_XV_POINTS = "-1,0.5;-1,1;-1,2;0,0.5;0,1;0,2;1,0.5;1,1;1,2"


class UsageError(Exception):
    pass


def _verdict(status, metrics, thresholds, args, config=None):
    prov = {"tool": "polyharm", "version": version_string(), "command": args.command_path}
    if config is not None:
        prov["config"] = config
    return {"status": status, "metrics": metrics, "thresholds": thresholds, "provenance": prov}


def _emit(args, payload):
    text = dumps(payload) + "\n"
    if getattr(args, "report", None):
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_for(status):
    return EXIT_FAIL if status == "fail" else EXIT_PASS


def _rng(args):
    return np.random.default_rng(args.seed)


def _parse_floats(text, what):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None


# --------------------------------------------------------------------------
# subcommands


def cmd_expand(args):
    data = terms_as_dict(args.n, args.m)
    if args.format == "json":
        _emit(args, data)
    elif args.format == "csv":
        lines = ["coeff," + ",".join(f"h{i + 1}" for i in range(args.m))
                 + "," + ",".join(f"order{i + 1}" for i in range(args.m))]
        for t in data["terms"]:
            lines.append(",".join(str(v) for v in [t["coeff"], *t["h"], *t["orders"]]))
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        for t in data["terms"]:
            ops = " ".join(f"D{i + 1}^{o}" for i, o in enumerate(t["orders"]) if o)
            sys.stdout.write(f"{t['coeff']:>8d}  {ops}\n")
    return EXIT_PASS


def cmd_build(args):
    raw = cfgmod.load_json(args.config)
    sol = cfgmod.parse_solution(raw)
    payload = _verdict("pass", {"m": sol.m, "n": sol.n, "K": sol.last.K,
                                "lambdas": [md.lam for md in sol.modes],
                                "basis_terms": sol.last.n_terms,
                                "overcount": sol.last.overcount},
                       {}, args, sol.to_dict())
    _emit(args, payload)
    return EXIT_PASS


def cmd_verify(args):
    raw = cfgmod.load_json(args.config)
    sol = cfgmod.parse_solution(raw)
    pts = _rng(args).uniform(-args.box, args.box, size=(args.points, sol.m))
    rep = residual_report(sol, pts)
    status = "pass" if rep.max_rel <= args.tol else "fail"
    _emit(args, _verdict(status, rep.to_dict(per_point=args.per_point),
                         {"max_rel": args.tol}, args, {**raw, "seed": args.seed}))
    return _exit_for(status)


def cmd_fd_verify(args):
    raw = cfgmod.load_json(args.config)
    sol = cfgmod.parse_solution(raw)
    n = args.n if args.n is not None else sol.n
    point = _parse_floats(args.point, "--point")
    if len(point) != sol.m:
        raise UsageError(f"--point needs {sol.m} coordinates, got {len(point)}")
    ladder = default_h_ladder(n) if args.h_ladder == "default" else _parse_floats(args.h_ladder,
                                                                             "--h-ladder")
    try:
        res = convergence_study(sol, point, n, ladder, floor=args.floor)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    exact = sol.apply_polyharmonic_exact(np.asarray(point), n)
    out = {"residuals": res.values.tolist(), "h": res.h.tolist(),
           "observed_order": res.order, "verdict": res.status,
           "exact_residual": exact, "order_band": list(ORDER_BAND), "floor": args.floor,
           "provenance": {"tool": "polyharm", "version": version_string(),
                          "command": args.command_path, "config": raw}}
    _emit(args, out)
    return _exit_for(res.status)


def _write_field(path, grid, values, value_names, provenance):
    cols = [grid.points()[:, i] for i in range(grid.ndim)]
    write_csv(path, list(grid.names) + list(value_names), cols + list(values))
    with open(str(path) + ".json", "w") as fh:
        fh.write(dumps({"grid": grid.to_dict(), "columns": list(grid.names) + list(value_names),
                        "order": "row-major, last axis fastest", **provenance}) + "\n")


def cmd_sample(args):
    raw = cfgmod.load_json(args.config)
    sol = cfgmod.parse_solution(raw)
    grid = parse_grid(args.grid)
    if grid.ndim != sol.m:
        raise UsageError(f"--grid has {grid.ndim} axes, solution is {sol.m}-dimensional")
    field = eval_grid(sol, grid)
    prov = {"provenance": {"tool": "polyharm", "version": version_string(), "config": raw}}
    _write_field(args.out, grid, [field.values], ["u"], prov)
    _emit(args, _verdict("pass", {"n_samples": grid.size, "out": str(args.out)}, {}, args, raw))
    return EXIT_PASS


def _quad_cfg(args):
    return QuadConfig(abs_tol=args.abs_tol, wmax_factor=args.wmax_factor,
                      panels=args.panels, order=args.order)


def cmd_halfspace_solve(args):
    grid = parse_grid(args.grid)
    if grid.ndim != args.m:
        raise UsageError(f"--grid has {grid.ndim} axes, expected m={args.m}")
    f = parse_boundary(args.f, dim=args.m - 1)
    pts = grid.points()
    if np.any(pts[:, -1] <= args.L):
        raise UsageError(f"every grid height must exceed L={args.L}")
    qcfg = _quad_cfg(args)
    values, names, diag = [], [], {}
    if args.route in ("fourier", "both"):
        hs = solve_halfspace(f, m=args.m, n=args.n, L=args.L,
                             x_m_min=float(pts[:, -1].min()), cfg=qcfg)
        values.append(hs.reconstruct(pts[:, :-1], pts[:, -1]))
        names.append("u_fourier" if args.route == "both" else "u")
        diag["fourier"] = hs.diagnostics(float(pts[:, -1].min()))
    if args.route in ("convolution", "both"):
        if args.m != 2 or args.n != 1:
            raise UsageError("convolution route needs m=2 and n=1")
        values.append(convolve_halfplane(f, pts[:, 0], pts[:, 1], qcfg, L=args.L))
        names.append("u_convolution" if args.route == "both" else "u")
        diag["convolution"] = {"route": "convolution", "abs_tol": qcfg.abs_tol,
                               "limit": qcfg.limit, "n_points": int(len(pts))}
    metrics = {"n_points": int(len(pts))}
    thresholds = {}
    status = "pass"
    if args.route == "both":
        diff = float(np.max(np.abs(values[0] - values[1])))
        metrics["max_route_diff"] = diff
        thresholds["max_route_diff"] = args.tol
        status = "pass" if diff <= args.tol else "fail"
    config = {"f": f.to_dict(), "m": args.m, "n": args.n, "L": args.L, "route": args.route,
              "grid": grid.to_dict()}
    if args.out:
        _write_field(args.out, grid, values, names,
                     {"diagnostics": diag, "provenance": {"tool": "polyharm",
                                                          "version": version_string(),
                                                          "config": config}})
    else:
        metrics["values"] = {nm: v.tolist() for nm, v in zip(names, values)}
    metrics["diagnostics"] = diag
    _emit(args, _verdict(status, metrics, thresholds, args, config))
    return _exit_for(status)


def _parse_points(text):
    pts = []
    for chunk in text.split(";"):
        if chunk.strip():
            vals = _parse_floats(chunk, "--points")
            if len(vals) != 2:
                raise UsageError(f"--points entries need two coordinates, got {chunk!r}")
            pts.append(vals)
    if not pts:
        raise UsageError("--points is empty")
    return np.array(pts)


def cmd_halfspace_xv(args):
    f = parse_boundary(args.f, dim=1)
    pts = _parse_points(args.points)
    rep = cross_validate(f, pts, args.tol, _quad_cfg(args), L=args.L)
    status = "pass" if rep.passed else "fail"
    metrics = rep.to_dict()
    metrics.pop("passed")
    metrics.pop("tol")
    thresholds = {"max_diff": args.tol}
    if rep.closed_form is not None:
        thresholds["max_closed_form_diff"] = args.tol
    config = {"f": f.to_dict(), "L": args.L}
    _emit(args, _verdict(status, metrics, thresholds, args, config))
    return _exit_for(status)


def cmd_evolve_verify(args):
    raw = cfgmod.load_json(args.config)
    sol = cfgmod.parse_spacetime(raw, args.type)
    rng = _rng(args)
    pts = np.column_stack([rng.uniform(-args.box, args.box, size=(args.points, sol.m)),
                           rng.uniform(-args.tmax, args.tmax, size=args.points)])
    rep = spacetime_residual(sol, pts, args.tol)
    status = "pass" if rep.passed else "fail"
    metrics = rep.to_dict()
    metrics.pop("passed")
    metrics.pop("tol")
    metrics["k"] = sol.time.k
    metrics["expected_k"] = sol.expected_k
    _emit(args, _verdict(status, metrics, {"max_rel": args.tol}, args,
                         {**raw, "type": args.type, "seed": args.seed}))
    return _exit_for(status)


def cmd_evolve_sample(args):
    raw = cfgmod.load_json(args.config)
    sol = cfgmod.parse_spacetime(raw, args.type)
    grid = parse_grid(args.grid)
    if grid.ndim != sol.m + 1:
        raise UsageError(f"--grid needs {sol.m} spatial axes plus time")
    values = sol(grid.points())
    prov = {"provenance": {"tool": "polyharm", "version": version_string(),
                           "config": {**raw, "type": args.type}}}
    _write_field(args.out, grid, [values], ["u"], prov)
    _emit(args, _verdict("pass", {"n_samples": grid.size, "out": str(args.out)}, {}, args,
                         {**raw, "type": args.type}))
    return EXIT_PASS


# --------------------------------------------------------------------------
# parser


def _add_common(p):
    p.add_argument("--seed", type=int, default=0, help="seed for random test points")
    p.add_argument("--report", help="write the JSON report here instead of stdout")


def _add_quad(p):
    p.add_argument("--abs-tol", type=float, default=1e-10)
    p.add_argument("--wmax-factor", type=float, default=40.0)
    p.add_argument("--panels", type=int, default=50)
    p.add_argument("--order", type=int, default=8)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyharm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"polyharm {version_string()}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="list the multinomial terms of the n-th power Laplacian")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    _add_common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("build", help="validate a separable-solution config")
    p.add_argument("--config", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="exact residual report at random points")
    p.add_argument("--config", required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--box", type=float, default=2.0, help="points drawn from [-box, box]^m")
    p.add_argument("--per-point", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fd-verify", help="finite-difference convergence study")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--point", required=True)
    p.add_argument("--h-ladder", default="default")
    p.add_argument("--floor", type=float, default=ROUNDOFF_FLOOR)
    _add_common(p)
    p.set_defaults(func=cmd_fd_verify)

    p = sub.add_parser("sample", help="tabulate a solution on a grid")
    p.add_argument("--config", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_sample)

    hs = sub.add_parser("halfspace", help="half-space Dirichlet problem")
    hsub = hs.add_subparsers(dest="hs_command", required=True)
    p = hsub.add_parser("solve")
    p.add_argument("--f", required=True, help="heaviside | gaussian:w | box:a,b | file.csv")
    p.add_argument("--L", type=float, default=0.0)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--grid", required=True)
    p.add_argument("--route", choices=["fourier", "convolution", "both"], default="fourier")
    p.add_argument("--out")
    p.add_argument("--tol", type=float, default=1e-4, help="route agreement threshold")
    _add_quad(p)
    _add_common(p)
    p.set_defaults(func=cmd_halfspace_solve)
    p = hsub.add_parser("cross-validate")
    p.add_argument("--f", required=True)
    p.add_argument("--L", type=float, default=0.0)
    p.add_argument("--points", default=DEFAULT_XV_POINTS, help='"x,y;x,y;..."')
    p.add_argument("--tol", type=float, default=1e-4)
    _add_quad(p)
    _add_common(p)
    p.set_defaults(func=cmd_halfspace_xv)

    ev = sub.add_parser("evolve", help="parabolic / hyperbolic space-time solutions")
    esub = ev.add_subparsers(dest="ev_command", required=True)
    p = esub.add_parser("verify")
    p.add_argument("--type", choices=["parabolic", "hyperbolic"], required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--box", type=float, default=2.0)
    p.add_argument("--tmax", type=float, default=2.0)
    _add_common(p)
    p.set_defaults(func=cmd_evolve_verify)
    p = esub.add_parser("sample")
    p.add_argument("--type", choices=["parabolic", "hyperbolic"], required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_evolve_sample)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    args.command_path = " ".join(v for v in (args.command, getattr(args, "hs_command", None),
                                             getattr(args, "ev_command", None)) if v)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"polyharm: config error: {exc}", file=sys.stderr)
    except (UsageError, GridSpecError, InvalidDimensionError, DomainError) as exc:
        print(f"polyharm: {exc}", file=sys.stderr)
    except (IntegrabilityError, ToleranceNotMetError, OverflowError, ValueError, OSError) as exc:
        print(f"polyharm: error: {exc}", file=sys.stderr)
    return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
