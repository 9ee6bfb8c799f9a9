"""Command-line front end.

Subcommands: ``margin``, ``sweep``, ``upper``, ``weight-dump``, ``outer-dump``.
Exit codes: 0 ok, 2 input error, 3 numerical/accuracy error, 4 infeasible
at every tested delay.  Failures print a JSON error record on stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import DelayMarginError, InvalidInputError, StablePlantSignal
from .margin import (
    MarginQuery,
    bisect_margin,
    middleton_upper_bound,
    plant_upper_bound,
    run_queries,
    select_best,
)
from .outer import QuadratureConfig, outer_trace
from .pick import DEFAULT_PD_TOL
from .plant import load_plant
from .sweep import load_experiment, parse_complex, parse_grid, rows_to_csv, rows_to_json, sweep
from .weight import Shift, WeightSpec, phi_shifted

EXIT_INFEASIBLE = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInputError(f"{self.prog}: {message}")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _quad(args) -> QuadratureConfig:
    base = QuadratureConfig()
    return QuadratureConfig(
        panels=args.quad_panels if args.quad_panels is not None else base.panels,
        nodes_per_panel=args.quad_nodes if args.quad_nodes is not None else base.nodes_per_panel,
        kink_refinement=base.kink_refinement,
        tolerance=args.quad_tol if args.quad_tol is not None else base.tolerance,
    )


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")


def _omega_range(text: str) -> np.ndarray:
    try:
        lo, hi, num = text.split(":")
        return np.linspace(float(lo), float(hi), int(num))
    except ValueError:
        raise InvalidInputError(f"omega range must be 'lo:hi:num', got {text!r}") from None


def cmd_margin(args) -> int:
    try:
        plant = load_plant(args.plant)
    except StablePlantSignal as exc:
        _emit(json.dumps({"stable": True, "tau_lower_bound": None, "message": str(exc)}), args.out)
        return 0
    if args.w0 is not None and args.w0_grid is not None:
        raise InvalidInputError("give either --w0 or --w0-grid, not both")
    if args.w0_grid is not None:
        shifts = [Shift(w) for w in parse_grid(args.w0_grid)]
    else:
        shifts = [Shift(parse_complex(args.w0) if args.w0 is not None else 0)]
    queries = [
        MarginQuery(plant, s, args.tol, args.tau_upper, _quad(args), args.pd_tol, args.epsilon_floor)
        for s in shifts
    ]
    if len(queries) == 1:
        best = bisect_margin(queries[0])
        payload = best.to_dict()
    else:
        results = run_queries(queries, args.jobs)
        best = select_best(results)
        payload = {"best": best.to_dict(), "all": [r.to_dict() for r in results]}
    payload["upper_bound"] = plant_upper_bound(plant)
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_INFEASIBLE if best.tau_lower_bound == 0.0 else 0


def cmd_sweep(args) -> int:
    exp = load_experiment(args.experiment)
    overrides = {}
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.pd_tol is not None:
        overrides["pd_tol"] = args.pd_tol
    if args.w0_grid is not None:
        overrides["shifts"] = tuple(Shift(w) for w in parse_grid(args.w0_grid))
    if any(v is not None for v in (args.quad_panels, args.quad_nodes, args.quad_tol)):
        q = exp.quad
        overrides["quad"] = QuadratureConfig(
            args.quad_panels or q.panels, args.quad_nodes or q.nodes_per_panel,
            q.kink_refinement, args.quad_tol or q.tolerance,
        )
    if overrides:
        exp = type(exp)(**{**exp.__dict__, **overrides})
    rows = sweep(exp, jobs=args.jobs)
    fmt = args.format or ("json" if str(args.out).endswith(".json") else "csv")
    _emit(rows_to_json(rows) if fmt == "json" else rows_to_csv(rows), args.out)
    return 0


def cmd_upper(args) -> int:
    if args.plant is not None:
        if args.r is not None or args.theta is not None:
            raise InvalidInputError("give either --plant or --r/--theta")
        value = plant_upper_bound(load_plant(args.plant))
        if value is None:
            raise InvalidInputError(
                "upper bound applies only to one real unstable pole or one conjugate pair"
            )
    else:
        if args.r is None:
            raise InvalidInputError("--r is required without --plant")
        value = middleton_upper_bound(args.r, args.theta or 0.0)
    _emit(_fmt(value), args.out)
    return 0


def _spec(args) -> WeightSpec:
    return WeightSpec(args.tau_bar, Shift(parse_complex(args.w0 or 0)), args.epsilon_floor)


def cmd_weight_dump(args) -> int:
    spec = _spec(args)
    om = _omega_range(args.omega) if args.omega else np.linspace(-10 / spec.tau_bar, 10 / spec.tau_bar, 2001)
    phi = np.atleast_1d(phi_shifted(om, spec))
    lines = ["omega,phi"] + [f"{_fmt(w)},{_fmt(p)}" for w, p in zip(om, phi)]
    _emit("\n".join(lines), args.out)
    return 0


def cmd_outer_dump(args) -> int:
    spec = _spec(args)
    om = _omega_range(args.omega) if args.omega else np.linspace(-10 / spec.tau_bar, 10 / spec.tau_bar, 401)
    mag = outer_trace(spec, args.sigma, om, _quad(args))
    phi = np.atleast_1d(phi_shifted(om, spec))
    lines = ["omega,abs_W,phi"] + [f"{_fmt(w)},{_fmt(m)},{_fmt(p)}" for w, m, p in zip(om, mag, phi)]
    _emit("\n".join(lines), args.out)
    return 0


def _add_common(p, *, shift=True, quad=True):
    if shift:
        p.add_argument("--w0", help="shift, e.g. -10 or -1+0.5i")
    if quad:
        p.add_argument("--quad-panels", type=int)
        p.add_argument("--quad-nodes", type=int)
        p.add_argument("--quad-tol", type=float)
    p.add_argument("--out", default="-", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="delaymargin", description="Lower bounds on the maximum delay margin of unstable SISO LTI plants.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("margin", help="lower bound for one plant")
    p.add_argument("--plant", required=True, help="plant JSON file")
    p.add_argument("--w0-grid", help="shift grid 'start:step:stop'")
    p.add_argument("--tol", type=float, help="bisection width in seconds")
    p.add_argument("--tau-upper", type=float, help="override the initial upper bound")
    p.add_argument("--epsilon-floor", type=float, default=0.0)
    p.add_argument("--pd-tol", type=float, default=DEFAULT_PD_TOL)
    p.add_argument("--jobs", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_margin)

    p = sub.add_parser("sweep", help="run an experiment file")
    p.add_argument("--experiment", required=True)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--w0-grid")
    p.add_argument("--tol", type=float)
    p.add_argument("--pd-tol", type=float)
    p.add_argument("--jobs", type=int, default=None)
    _add_common(p, shift=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("upper", help="closed-form upper bound")
    p.add_argument("--r", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--plant")
    _add_common(p, shift=False, quad=False)
    p.set_defaults(func=cmd_upper)

    for name, func, help_ in (
        ("weight-dump", cmd_weight_dump, "CSV of the boundary weight"),
        ("outer-dump", cmd_outer_dump, "CSV of |W| near the imaginary axis"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--tau-bar", type=float, required=True)
        p.add_argument("--epsilon-floor", type=float, default=0.0)
        p.add_argument("--omega", help="frequency range 'lo:hi:num'")
        if name == "outer-dump":
            p.add_argument("--sigma", type=float, default=1e-3)
            _add_common(p)
        else:
            _add_common(p, quad=False)
        p.set_defaults(func=func)
    return parser


# options whose values commonly start with "-" (negative shifts and grids)
_SIGNED_OPTIONS = ("--w0", "--w0-grid", "--omega")


def _join_signed(argv):
    """Rewrite ``--w0 -1+0.5i`` as ``--w0=-1+0.5i`` so argparse does not see a flag."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in _SIGNED_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_signed(argv))
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return args.func(args)
    except DelayMarginError as exc:
        record = {"error": exc.kind, "message": str(exc)}
        if hasattr(exc, "coarse"):
            record["estimates"] = [repr(exc.coarse), repr(exc.fine)]
        sys.stderr.write(json.dumps(record) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
