"""
Command-line front end.

Subcommands::

    stirap simulate       population dynamics (CSV / JSON summary / SVG)
    stirap adiabaticity   r_lin and r_nl along the pulse sequence
    stirap fixed-points   stationary states of the mean-field equations
    stirap sweep          transfer efficiency and peak adiabaticity over a grid

Exit codes: 0 success, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .integrator import IntegrationConfig
from .model import (
    DegeneratePulse,
    DynamicalInstability,
    GaussianPulsePair,
    NonFiniteState,
    PulseSample,
    PulseSchedule,
    SystemParams,
    UnsupportedDetuning,
)
from .nonlinear import atom_number, enumerate_fixed_points, stationary_residual
from .output import dumps_csv, line_chart, thin, trajectory_csv
from .simulate import DEFAULT_WINDOW, MODES, SWEEP_COLUMNS, SweepSpec, run_sweep, simulate, summarize
from .stability import KERNELS, adiabaticity_trace

log = logging.getLogger("stirap")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2
FORMATS = ("csv", "json", "svg")

ADIABATICITY_COLUMNS = (
    "t", "chi", "r_lin", "r_nl_closed", "r_nl_quadrature", "r_nl_ode",
    "re_c_plus", "im_c_plus", "re_c_minus", "im_c_minus",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _formats(text: str) -> set[str]:
    out = {f.strip() for f in text.split(",") if f.strip()}
    bad = out - set(FORMATS)
    if not out or bad:
        raise argparse.ArgumentTypeError(f"formats must be a nonempty subset of {','.join(FORMATS)}")
    return out


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    if not a < b:
        raise argparse.ArgumentTypeError("window needs lo < hi")
    return a, b


def _grid(text: str) -> tuple[float, ...]:
    """``a,b,c`` or ``start:stop:num`` (inclusive linspace)."""
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            return tuple(float(v) for v in np.linspace(float(start), float(stop), int(num)))
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega0", type=float, default=5.0, help="peak Rabi frequency (default 5)")
    p.add_argument("--t-pump", type=float, default=3.8, help="pump pulse center (default 3.8)")
    p.add_argument("--t-dump", type=float, default=3.0, help="dump pulse center (default 3)")
    p.add_argument("--delta", type=float, default=0.0, help="one-photon detuning (default 0)")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=8.0)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--record-every", type=int, default=1)
    p.add_argument("--out", default="stirap", help="output path prefix")
    p.add_argument("--format", type=_formats, default={"csv", "json"}, dest="formats",
                   help="comma list from csv,json,svg")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stirap", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="integrate the population dynamics")
    _add_common(p)
    p.add_argument("--mode", choices=MODES, default="nonlinear")

    p = sub.add_parser("adiabaticity", help="adiabaticity parameters along the pulses")
    _add_common(p)
    p.add_argument("--window", type=_pair, default=DEFAULT_WINDOW, help="analysis window lo,hi")
    p.add_argument("--kernel", choices=KERNELS, default="accumulated",
                   help="phase kernel of the mode-amplitude integral")
    p.add_argument("--no-closed", action="store_true", help="skip the resonant closed form")

    p = sub.add_parser("fixed-points", help="list stationary states at delta = 0")
    p.add_argument("--omega-p", type=float, required=True)
    p.add_argument("--omega-d", type=float, required=True)
    p.add_argument("--json", action="store_true", help="emit JSON instead of a table")

    p = sub.add_parser("sweep", help="scan omega0 and pulse delay")
    _add_common(p)
    p.add_argument("--omega0-grid", type=_grid, required=True, help="'a,b,c' or 'start:stop:num'")
    p.add_argument("--delay-grid", type=_grid, required=True, help="grid of t_pump - t_dump")
    p.add_argument("--modes", default=",".join(MODES), help="comma list of linear,nonlinear")
    p.add_argument("--window", type=_pair, default=DEFAULT_WINDOW)
    p.add_argument("--window-step", type=float, default=1e-2)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _config(args) -> IntegrationConfig:
    return IntegrationConfig(args.t0, args.t1, args.step, args.record_every)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")
    log.info("wrote %s", path)


def _run_meta(args) -> dict:
    return {"package_version": __version__, "command": args.command,
            "arguments": {k: (sorted(v) if isinstance(v, set) else v)
                          for k, v in sorted(vars(args).items()) if k not in ("command", "verbose")}}


def cmd_simulate(args) -> dict:
    pulses = GaussianPulsePair(args.omega0, args.t_pump, args.t_dump)
    params = SystemParams(args.delta)
    traj = simulate(args.mode, pulses, params, _config(args))
    summary = summarize(traj)
    prefix = Path(args.out)
    if "csv" in args.formats:
        _write(prefix.with_name(prefix.name + "_trajectory.csv"), trajectory_csv(traj))
    if "json" in args.formats:
        doc = {"summary": summary, "run": _run_meta(args)}
        _write(prefix.with_name(prefix.name + "_summary.json"), json.dumps(doc, indent=2) + "\n")
    if "svg" in args.formats:
        sl = thin(len(traj))
        gl = "2|psi_g|^2" if traj.nonlinear else "|psi_g|^2"
        svg = line_chart(
            {"|psi_a|^2": (traj.t[sl], traj.populations[sl, 0]), gl: (traj.t[sl], traj.transfer[sl])},
            title=f"Population dynamics ({args.mode})", ylabel="population", dashed=(gl,))
        _write(prefix.with_name(prefix.name + "_populations.svg"), svg)
    return summary


def adiabaticity_rows(schedule: PulseSchedule, params: SystemParams, t_grid,
                      kernel: str = "accumulated", closed: bool = True) -> list[list]:
    tr = adiabaticity_trace(schedule, params, t_grid, kernel=kernel, closed=closed)
    rows = []
    for i in range(len(tr.t)):
        rows.append([
            tr.t[i], tr.chi[i], tr.r_lin[i],
            tr.r_nl_closed[i] if tr.r_nl_closed is not None else "",
            tr.r_nl_exact[i], tr.r_nl_ode[i],
            tr.c_plus[i].real, tr.c_plus[i].imag, tr.c_minus[i].real, tr.c_minus[i].imag,
        ])
    return rows


def cmd_adiabaticity(args) -> dict:
    pulses = GaussianPulsePair(args.omega0, args.t_pump, args.t_dump)
    params = SystemParams(args.delta)
    closed = not args.no_closed
    if closed and params.delta != 0:
        raise UnsupportedDetuning("the closed-form r_nl needs --delta 0 (or pass --no-closed)")
    lo, hi = args.window
    grid = IntegrationConfig(lo, hi, args.step).grid()
    rows = adiabaticity_rows(pulses, params, grid, args.kernel, closed)
    prefix = Path(args.out)
    arr = {name: np.array([r[k] if r[k] != "" else np.nan for r in rows], dtype=float)
           for k, name in enumerate(ADIABATICITY_COLUMNS)}
    summary = {
        "peak_r_lin": float(np.max(arr["r_lin"])),
        "peak_r_nl_quadrature": float(np.max(arr["r_nl_quadrature"])),
        "peak_r_nl_ode": float(np.max(arr["r_nl_ode"])),
        "peak_r_nl_closed": float(np.max(arr["r_nl_closed"])) if closed else None,
    }
    if "csv" in args.formats:
        _write(prefix.with_name(prefix.name + "_adiabaticity.csv"), dumps_csv(ADIABATICITY_COLUMNS, rows))
    if "json" in args.formats:
        doc = {"summary": summary, "run": _run_meta(args)}
        _write(prefix.with_name(prefix.name + "_adiabaticity.json"), json.dumps(doc, indent=2) + "\n")
    if "svg" in args.formats:
        sl = thin(len(rows))
        t = arr["t"][sl]
        series = {"r_lin": (t, arr["r_lin"][sl])}
        if closed:
            series["r_nl (closed)"] = (t, arr["r_nl_closed"][sl])
        series["r_nl (quadrature)"] = (t, arr["r_nl_quadrature"][sl])
        series["r_nl (mode ODE)"] = (t, arr["r_nl_ode"][sl])
        svg = line_chart(series, title="Adiabaticity parameters", ylabel="r", logy=True,
                         dashed=("r_nl (mode ODE)",))
        _write(prefix.with_name(prefix.name + "_adiabaticity.svg"), svg)
    return summary


def fixed_point_report(omega_p: float, omega_d: float) -> list[dict]:
    sample = PulseSample(omega_p, omega_d)
    out = []
    for fp in enumerate_fixed_points(sample):
        out.append({
            "family": fp.family.value,
            "frequency": float(fp.frequency),
            "state": [[float(z.real), float(z.imag)] for z in fp.state],
            "atom_number": atom_number(fp.state),
            "residual": stationary_residual(fp.state, fp.frequency, sample),
        })
    return out


def cmd_fixed_points(args) -> list[dict]:
    if not (args.omega_p > 0 and args.omega_d > 0):
        raise UsageError("--omega-p and --omega-d must be positive")
    report = fixed_point_report(args.omega_p, args.omega_d)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"{'family':<16}{'omega':>12}  {'psi_a':>22}{'psi_e':>22}{'psi_g':>22}  residual")
        for fp in report:
            comps = "".join(f"{complex(*c):>22.6g}" for c in fp["state"])
            print(f"{fp['family']:<16}{fp['frequency']:>12.6g}  {comps}  {fp['residual']:.1e}")
    return report


def cmd_sweep(args) -> list[dict]:
    modes = tuple(m.strip() for m in args.modes.split(",") if m.strip())
    spec = SweepSpec(
        omega0_grid=args.omega0_grid, delay_grid=args.delay_grid, modes=modes, t_d=args.t_dump,
        params=SystemParams(args.delta), integration=_config(args),
        window=args.window, window_step=args.window_step,
    )
    rows = run_sweep(spec, jobs=args.jobs)
    prefix = Path(args.out)
    _write(prefix.with_name(prefix.name + "_sweep.csv"),
           dumps_csv(SWEEP_COLUMNS, [[r[c] for c in SWEEP_COLUMNS] for r in rows]))
    return rows


COMMANDS = {
    "simulate": cmd_simulate,
    "adiabaticity": cmd_adiabaticity,
    "fixed-points": cmd_fixed_points,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (NonFiniteState, DynamicalInstability, DegeneratePulse) as exc:
        print(f"stirap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, UnsupportedDetuning, ValueError, OSError) as exc:
        print(f"stirap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
