"""Command-line front end: evolve flows, check inequalities, verify
linearized rates, and plot traces."""

import argparse
import json
import os
import sys
import time

import numpy as np

from . import asymptotics, curve_model, flow, inequalities, oracles, plots, quantities
from .errors import (
    CurveFlowError,
    InsufficientPositiveData,
    MissingTrace,
    NotConverged,
    PerturbationTooLarge,
)

SLACK_TOL = 1e-9


class _Parser(argparse.ArgumentParser):
    # the CLI contract reserves exit code 2 for flow breakdown; usage errors exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _fmt(x):
    return format(float(x), ".17g")


def _load_curve_arg(spec_str, n, seed):
    if spec_str.startswith("preset:"):
        descriptor = spec_str[len("preset:"):]
        if descriptor.strip() == "random_bandlimited":
            descriptor = f"random_bandlimited({seed})"
        return curve_model.make_preset(descriptor, n)
    if os.path.exists(spec_str):
        return curve_model.load_curve(spec_str)
    raise MissingTrace(f"curve file not found: {spec_str}")


def _decay_fits(trace):
    fits = {}
    series = {"I_m1": [(rec.t, rec.I_m1) for rec in trace]}
    for ell in range(len(trace[0].I)):
        series[f"I_{ell}"] = [(rec.t, rec.I[ell]) for rec in trace]
    for name, data in series.items():
        try:
            fit = asymptotics.fit_decay(data, window_fraction=0.5)
            fits[name] = {
                "lambda": fit.lam,
                "logC": fit.logC,
                "window": list(fit.window),
                "r_squared": fit.r_squared,
            }
        except InsufficientPositiveData:
            fits[name] = None
    return fits


def cmd_evolve(args):
    config = flow.FlowConfig(
        m=args.m,
        N=args.modes,
        dt_init=args.dt,
        t_max=args.t_max,
        stop_I0=args.stop_I0,
        record_every=args.record_every,
        ell_max=args.ell_max,
    )
    curve = _load_curve_arg(args.curve, args.modes, args.seed)
    t0 = time.perf_counter()
    trace, final_state, termination = flow.evolve(curve, config)
    wall = time.perf_counter() - t0

    os.makedirs(args.out, exist_ok=True)
    if args.format == "csv":
        with open(os.path.join(args.out, "trace.csv"), "w") as fh:
            fh.write(flow.trace_to_csv(trace, config.ell_max))
    else:
        rows = [
            {
                "t": rec.t,
                "L": rec.L,
                "A": rec.A,
                "I_m1": rec.I_m1,
                "I": list(rec.I),
                "kappa_min": rec.kappa_min,
                "kappa_max": rec.kappa_max,
                "convex": rec.convex,
                "cx": rec.cx,
                "cy": rec.cy,
                "r": rec.r,
                "sigma": rec.sigma,
                "simple": rec.simple,
            }
            for rec in trace
        ]
        with open(os.path.join(args.out, "trace.json"), "w") as fh:
            json.dump(rows, fh, sort_keys=True)
            fh.write("\n")

    snapshots = []
    if args.snapshots > 0:
        idx = np.unique(
            np.linspace(0, len(trace) - 1, min(args.snapshots, len(trace))).astype(int)
        )
        for j, i in enumerate(idx):
            rec = trace[i]
            path = os.path.join(args.out, f"snapshot_{j:04d}.json")
            payload = {
                "version": 1,
                "kind": "samples",
                "t": rec.t,
                "points": [[float(x), float(y)] for x, y in rec.curve.points],
            }
            with open(path, "w") as fh:
                json.dump(payload, fh)
                fh.write("\n")
            snapshots.append((rec.t, rec.curve.points))

    try:
        limit = asymptotics.limit_circle(trace)
        limit_payload = {
            "c_inf": list(limit.c_inf),
            "r_inf": limit.r_inf,
            "sigma_inf": limit.sigma_inf,
            "L_inf": limit.L_inf,
        }
    except NotConverged:
        limit = None
        limit_payload = None

    final = trace[-1]
    report = {
        "config": {
            "m": args.m,
            "curve": args.curve,
            "modes": args.modes,
            "dt": args.dt,
            "t_max": args.t_max,
            "stop_I0": args.stop_I0,
            "ell_max": args.ell_max,
            "record_every": args.record_every,
            "format": args.format,
            "snapshots": args.snapshots,
            "seed": args.seed,
        },
        "termination": {"kind": termination.kind, "detail": termination.detail},
        "final": {
            "t": final.t,
            "L": final.L,
            "A": final.A,
            "I_m1": final.I_m1,
            "I": list(final.I),
            "kappa_min": final.kappa_min,
            "kappa_max": final.kappa_max,
        },
        "decay_fits": _decay_fits(trace),
        "circle_limit": limit_payload,
        "T_star": asymptotics.convexity_time(trace),
    }
    with open(os.path.join(args.out, "report.json"), "w") as fh:
        json.dump(report, fh, sort_keys=True, indent=2)
        fh.write("\n")

    plots.plot_run(trace, snapshots, limit, os.path.join(args.out, "run.svg"))
    print(f"wall clock: {wall:.3f} s", file=sys.stderr)
    print(f"termination: {termination}", file=sys.stderr)
    return 0 if termination.kind in ("Converged", "TimeOut") else 2


def cmd_check(args):
    if args.curve is not None:
        curves = [_load_curve_arg(args.curve, 128, args.seed)]
    else:
        curves = inequalities.random_ensemble(
            args.ensemble, args.seed, args.max_mode, args.amplitude
        )
    reports = []
    for curve in curves:
        ac = curve if curve.is_arclength else curve_model.resample_arclength(curve)
        lower, upper = inequalities.check_theorem1(ac)
        reports.extend([lower, upper])
        reports.append(inequalities.check_gn(ac, args.ell, args.m))
        reports.append(inequalities.check_theorem2(ac, args.ell, args.m))

    out = open(args.out, "w") if args.out else sys.stdout
    try:
        ok = True
        for rep in reports:
            slack = rep.slack + args.inject_slack
            if slack < -SLACK_TOL * max(1.0, rep.rhs):
                ok = False
            out.write(rep.to_json() + "\n")
    finally:
        if args.out:
            out.close()
    return 0 if ok else 2


def cmd_rates(args):
    if args.eps > 1e-3 * args.radius:
        print(
            "error: PerturbationTooLarge: --eps must be <= 1e-3 * radius "
            "(linear regime)",
            file=sys.stderr,
        )
        return 1
    lines = ["k,predicted,measured,rel_error,note"]
    for k in range(1, args.k_max + 1):
        predicted = flow.linearized_rate(args.m, k, args.radius)
        if k == 1:
            lines.append("1,0,0,0,neutral")
            continue
        measured = oracles.linearization_rate_check(args.m, k, args.radius, args.eps)
        rel = abs(measured - predicted) / predicted
        lines.append(f"{k},{_fmt(predicted)},{_fmt(measured)},{_fmt(rel)},")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_plot(args):
    try:
        with open(args.trace) as fh:
            trace = flow.trace_from_csv(fh.read())
    except (OSError, CurveFlowError) as exc:
        print(f"error: MissingTrace: {exc}", file=sys.stderr)
        return 1
    snapshots = []
    if args.snapshots:
        for name in sorted(os.listdir(args.snapshots)):
            if not name.endswith(".json") or not name.startswith("snapshot_"):
                continue
            with open(os.path.join(args.snapshots, name)) as fh:
                payload = json.load(fh)
            snapshots.append(
                (payload.get("t", 0.0), np.asarray(payload["points"], dtype=float))
            )
    try:
        limit = asymptotics.limit_circle(trace)
    except NotConverged:
        limit = None
    plots.plot_run(trace, snapshots, limit, args.out)
    return 0


def build_parser():
    parser = _Parser(prog="curveflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="run one flow and write trace/report/plot")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--curve", required=True, help="curve file or preset:NAME(args)")
    p.add_argument("--modes", type=int, default=256)
    p.add_argument("--dt", type=float, default=2e-4)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--stop-I0", dest="stop_I0", type=float, default=0.0)
    p.add_argument("--ell-max", dest="ell_max", type=int, default=2)
    p.add_argument("--record-every", dest="record_every", type=float, default=1e-2)
    p.add_argument("--out", default="run_out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--snapshots", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("check", help="evaluate the inequality reports")
    p.add_argument("--curve", default=None)
    p.add_argument("--ensemble", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-mode", dest="max_mode", type=int, default=8)
    p.add_argument("--amplitude", type=float, default=0.2)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--out", default=None)
    p.add_argument("--inject-slack", dest="inject_slack", type=float, default=0.0,
                   help=argparse.SUPPRESS)  # test hook
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("rates", help="predicted vs measured linearized decay rates")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k-max", dest="k_max", type=int, default=4)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=1e-4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("plot", help="render an SVG from a trace CSV")
    p.add_argument("--trace", required=True)
    p.add_argument("--snapshots", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "m", 0) is not None and getattr(args, "m", 0) < 0:
        parser.error("--m must be >= 0")
    if args.func is cmd_check and args.curve is None and args.ensemble <= 0:
        parser.error("check needs --curve or --ensemble > 0")
    try:
        return args.func(args)
    except PerturbationTooLarge as exc:
        print(f"error: PerturbationTooLarge: {exc}", file=sys.stderr)
        return 1
    except CurveFlowError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
