"""Command-line front end.

    presslab quantum-box --a 1 --levels 3 [--beta 1]
    presslab delta-wall --u0 2 --a 1 --b 0.5
    presslab disc-gas --beta-sigma 0.56,0.57 --svg scan.svg
    presslab nogo --trials 100 --seed 42 --report nogo.json

All quantities are in natural units (m = hbar = 1).  Exit codes: 0 success,
1 domain failure (no bound state, theorem violation, numerical failure),
2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import deltawall, discgas, nogo, qbox
from .numkernel import QuadratureError
from .svg import line_plot

UNITS_NOTE = "Natural units: m = hbar = 1; lengths, energies and pressures are dimensionless."


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    out: Optional[Path] = None
    report: Optional[Path] = None
    svg: Optional[Path] = None
    tol: float = discgas.DEFAULT_TOL
    fd_step: Optional[float] = None
    seed: int = 42

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.fd_step is not None and not self.fd_step > 0:
            raise UsageError("--fd-step must be positive")


def fmt(x) -> str:
    return f"{float(x):.12g}"


def _num(x):
    return float(fmt(x))


def write_csv(header: Sequence[str], rows: Sequence[Sequence], path: Optional[Path]) -> None:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else fmt(v) if isinstance(v, float) else str(v)
                           for v in row) + "\n")
    _emit(buf.getvalue(), path)


def write_json(obj, path: Optional[Path]) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", path)


def _emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_quantum_box(cfg: RunConfig) -> int:
    a, n = cfg.params["a"], cfg.params["levels"]
    beta = cfg.params.get("beta")
    model = qbox.BoxModel(n_levels=n, grid_size=cfg.params["grid"])
    states = model.states(a)
    center = qbox.pressure_center(states)
    boundary = qbox.pressure_boundary(states)
    fd = qbox.pressure_fd(model.energies, a, step=cfg.fd_step)

    header = ["n", "E_n", "P_center", "P_boundary", "P_fd"]
    rows = [[i + 1, s.energy, center.per_level[i], boundary.per_level[i], fd.per_level[i]]
            for i, s in enumerate(states)]
    summary = {"a": a, "levels": n}
    if beta is not None:
        pops = qbox.gibbs_populations([s.energy for s in states], beta)
        header.append("population")
        for row, p in zip(rows, pops.populations):
            row.append(float(p))
        gibbs = qbox.pressure_fd(model.energies, a, beta=beta, step=cfg.fd_step)
        summary.update(
            beta=beta,
            P_center=_num(qbox.pressure_center(states, pops).pressure),
            P_boundary=_num(qbox.pressure_boundary(states, pops).pressure),
            P_free_energy=_num(gibbs.pressure),
            truncation_error=_num(pops.truncation_error),
        )
    write_csv(header, rows, cfg.out)
    if cfg.report is not None:
        summary["levels_table"] = [dict(zip(header, [r[0]] + [_num(v) for v in r[1:]])) for r in rows]
        write_json(summary, cfg.report)
    return 0


def cmd_delta_wall(cfg: RunConfig) -> int:
    try:
        params = deltawall.DeltaWallParams(cfg.params["u0"], cfg.params["a"], cfg.params["b"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        st = deltawall.bound_state(params)
    except deltawall.NoBoundState as exc:
        write_json({"bound": False, "u0": params.u0, "a": params.a, "b": params.b,
                    "threshold": _num(params.threshold)}, cfg.report)
        print(f"presslab: {exc}", file=sys.stderr)
        return 1
    rep = deltawall.bound_pressure(params, step=cfg.fd_step)
    write_json({
        "bound": True, "u0": params.u0, "a": params.a, "b": params.b,
        "k": _num(st.k), "E_m": _num(st.energy), "psi_center": _num(st.B),
        "residual": _num(st.residual),
        "P_center": _num(rep.pressure), "P_fd": _num(rep.reference),
    }, cfg.report)
    return 0


def cmd_disc_gas(cfg: RunConfig) -> int:
    fd_step = cfg.fd_step if cfg.fd_step is not None else discgas.DEFAULT_FD_STEP
    try:
        curves = discgas.pressure_scan(cfg.params["a_min"], cfg.params["a_max"], cfg.params["steps"],
                                       cfg.params["beta_sigma"], fd_step=fd_step, tol=cfg.tol)
    except QuadratureError as exc:
        print(f"presslab: quadrature failed: {exc}", file=sys.stderr)
        return 1
    rows = [[a, c.beta_sigma, p] for c in curves for a, p in c.points]
    write_csv(["a", "beta_sigma", "pressure"], rows, cfg.out)
    if cfg.svg is not None:
        svg = line_plot(
            [(f"beta*sigma = {c.beta_sigma:g}", c.a, c.pressure) for c in curves],
            title="Disc gas with Gaussian wall attraction",
            xlabel="disc radius a", ylabel="pressure d ln Z / da",
        )
        _emit(svg, cfg.svg)
    if cfg.report is not None:
        write_json({"curves": [{"beta_sigma": c.beta_sigma,
                                "zero_crossings": [_num(z) for z in c.zero_crossings()]}
                               for c in curves]}, cfg.report)
    return 0


def cmd_nogo(cfg: RunConfig) -> int:
    rep = nogo.check_nogo(cfg.params["trials"], cfg.seed, cfg.params["a"], cfg.params["levels"])
    d = {k: (_num(v) if isinstance(v, float) else v) for k, v in rep.to_dict().items()}
    d["seed"] = cfg.seed
    write_json(d, cfg.report)
    if cfg.report is not None:
        print(f"nogo: {rep.trials} trials, {rep.violations} violations", file=sys.stderr)
    return 0 if rep.ok else 1


COMMANDS = {
    "quantum-box": cmd_quantum_box,
    "delta-wall": cmd_delta_wall,
    "disc-gas": cmd_disc_gas,
    "nogo": cmd_nogo,
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _float_list(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="presslab",
        description="Pressure of confined quantum and classical systems. " + UNITS_NOTE,
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        if out:
            p.add_argument("--out", type=Path, help="CSV output path (default stdout)")
        p.add_argument("--report", type=Path, help="JSON report path")
        p.add_argument("--fd-step", type=float, help="finite-difference step in a")

    p = sub.add_parser("quantum-box", help="free particle in [-a, a]: spectrum and pressures",
                       description=UNITS_NOTE)
    p.add_argument("--a", type=float, required=True, help="box half-width")
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--beta", type=float, help="inverse temperature for Gibbs populations")
    p.add_argument("--grid", type=int, default=qbox.DEFAULT_GRID, help="interior grid nodes (odd)")
    common(p)

    p = sub.add_parser("delta-wall", help="bound state of the delta-well wall model",
                       description=UNITS_NOTE)
    p.add_argument("--u0", type=float, required=True, help="well strength")
    p.add_argument("--a", type=float, required=True, help="box half-width")
    p.add_argument("--b", type=float, required=True, help="well distance from the wall")
    common(p, out=False)

    p = sub.add_parser("disc-gas", help="classical disc gas pressure scan",
                       description=UNITS_NOTE + " Pressure is d ln Z/da (reduced).")
    lo, hi, n = discgas.DEFAULT_GRID
    p.add_argument("--a-min", type=float, default=lo)
    p.add_argument("--a-max", type=float, default=hi)
    p.add_argument("--steps", type=int, default=n)
    p.add_argument("--beta-sigma", type=_float_list, default=[0.56, 0.57],
                   help="comma-separated couplings beta*sigma")
    p.add_argument("--tol", type=float, default=discgas.DEFAULT_TOL)
    p.add_argument("--svg", type=Path, help="SVG plot path")
    common(p)

    p = sub.add_parser("nogo", help="randomized no-go theorem check", description=UNITS_NOTE)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--levels", type=int, default=5)
    p.add_argument("--report", type=Path, help="JSON report path (default stdout)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cmd = args.command
    if cmd == "quantum-box":
        if not args.a > 0:
            raise UsageError("--a must be positive")
        if args.levels < 1:
            raise UsageError("--levels must be at least 1")
        if args.grid < 64 or args.grid % 2 == 0:
            raise UsageError("--grid must be an odd number >= 64")
        if args.beta is not None and args.beta < 0:
            raise UsageError("--beta must be non-negative")
        params = {"a": args.a, "levels": args.levels, "beta": args.beta, "grid": args.grid}
    elif cmd == "delta-wall":
        params = {"u0": args.u0, "a": args.a, "b": args.b}
    elif cmd == "disc-gas":
        if args.steps < 2:
            raise UsageError("--steps must be at least 2")
        if not 0 < args.a_min < args.a_max:
            raise UsageError("need 0 < --a-min < --a-max")
        if any(bs < 0 for bs in args.beta_sigma):
            raise UsageError("--beta-sigma values must be non-negative")
        params = {"a_min": args.a_min, "a_max": args.a_max, "steps": args.steps,
                  "beta_sigma": args.beta_sigma}
        fd = args.fd_step if args.fd_step is not None else discgas.DEFAULT_FD_STEP
        if not 0 < fd < args.a_min / 10:
            raise UsageError("--fd-step must lie in (0, a_min/10)")
    else:
        if args.trials < 1:
            raise UsageError("--trials must be at least 1")
        if not args.a > 0 or args.levels < 1:
            raise UsageError("--a must be positive and --levels at least 1")
        params = {"trials": args.trials, "a": args.a, "levels": args.levels}
    return RunConfig(
        command=cmd,
        params=params,
        out=getattr(args, "out", None),
        report=getattr(args, "report", None),
        svg=getattr(args, "svg", None),
        tol=getattr(args, "tol", discgas.DEFAULT_TOL),
        fd_step=getattr(args, "fd_step", None),
        seed=getattr(args, "seed", 42),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except (qbox.SolverError, QuadratureError, OSError) as exc:
        print(f"presslab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
