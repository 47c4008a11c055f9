"""Command-line interface.

Single-point subcommands (coeffs, momentum, times, depth) report one barrier
problem as a one-row CSV; grid subcommands (sweep, table1, figures) run the
configured sweep and emit the corresponding CSV files. Exit codes: 0 success,
1 validation or parse error, 2 missing grid point, 3 internal numeric failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .barrier import DEFAULT_CUTOFF, BarrierProblem, stationary_solution
from .constants import energy_si_to_ev, length_si_to_nm
from .depth import uncertainty_report
from .errors import (
    DomainError,
    MissingGridPoint,
    NoConvergence,
    ParseError,
    ValidationError,
)
from .momentum import momentum_spectrum
from .sweep import (
    FIGURE_IDS,
    TOOL_NAME,
    SweepConfig,
    emit_figure_data,
    emit_table1,
    parse_config,
    records_to_csv,
    run_sweep,
)
from .times import time_report


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad flags; route through the
    # validation-error path instead so exit codes stay as documented.
    def error(self, message):
        raise ValidationError(message)


def _fmt(value: float) -> str:
    if value == 0:
        return "0"
    return f"{value:.6g}"


def _point_problem(args) -> BarrierProblem:
    return BarrierProblem.from_ev_nm(args.e_ev, args.v0_ev, args.d_nm, args.cutoff)


def _point_csv(args, columns: dict[str, float]) -> str:
    lines = [
        f"# tool: {TOOL_NAME} {__version__}",
        f"# config: E_eV={_fmt(args.e_ev)}",
        f"# config: V0_eV={_fmt(args.v0_ev)}",
        f"# config: d_nm={_fmt(args.d_nm)}",
        f"# config: Kprime={_fmt(args.cutoff)}",
        ",".join(columns),
        ",".join("" if v is None else _fmt(v) for v in columns.values()),
    ]
    return "\n".join(lines) + "\n"


def _cmd_coeffs(args) -> str:
    sol = stationary_solution(_point_problem(args))
    return _point_csv(
        args,
        {
            "k_per_m": sol.wavenumbers.k,
            "kappa_per_m": sol.wavenumbers.kappa,
            "S_re": sol.S.real,
            "S_im": sol.S.imag,
            "A_re": sol.A.real,
            "A_im": sol.A.imag,
            "B_re": sol.B.real,
            "B_im": sol.B.imag,
            "R_re": sol.R.real,
            "R_im": sol.R.imag,
            "S_abs2": sol.transmission,
            "R_abs2": sol.reflection,
        },
    )


def _cmd_momentum(args) -> str:
    kin = momentum_spectrum(_point_problem(args)).kinematics()
    return _point_csv(
        args,
        {
            "K_rms_per_m": kin.k_rms,
            "v_rms_m_per_s": kin.v_rms,
            "t_eff_s": kin.t_eff,
            "eps_eff_eV": energy_si_to_ev(kin.eps_eff),
        },
    )


def _cmd_times(args) -> str:
    report = time_report(_point_problem(args))
    return _point_csv(
        args,
        {
            "t_eff_s": report.t_eff,
            "t_ph_numeric_s": report.t_phase_numeric,
            "t_ph_analytic_s": report.t_phase_analytic,
            "t_dw_numeric_s": report.t_dwell_numeric,
            "t_dw_analytic_s": report.t_dwell_analytic,
            "t_bl_s": report.t_bl,
            "D_denominator_per_m4": report.d_denominator,
        },
    )


def _cmd_depth(args) -> str:
    report = uncertainty_report(_point_problem(args))
    return _point_csv(
        args,
        {
            "s_nm": None if report.depth is None else length_si_to_nm(report.depth),
            "tau_eff_s": report.tau_eff,
            "xi": report.xi,
            "eps_eff_eV": energy_si_to_ev(report.eps_eff),
        },
    )


def _load_config(args) -> SweepConfig:
    if args.config is None:
        return SweepConfig()
    return parse_config(Path(args.config).read_text(encoding="utf-8"))


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode("utf-8"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog=TOOL_NAME,
        description="Rectangular-barrier tunneling times as deterministic CSV.",
    )
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def point(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--E-eV", dest="e_ev", type=float, required=True,
                        help="incident energy in eV")
        sp.add_argument("--V0-eV", dest="v0_ev", type=float, default=10.0,
                        help="barrier height in eV (default 10)")
        sp.add_argument("--d-nm", dest="d_nm", type=float, required=True,
                        help="barrier thickness in nm")
        sp.add_argument("--Kprime", dest="cutoff", type=float, default=DEFAULT_CUTOFF,
                        help="momentum window cutoff in 1/m (default 7.5e10)")
        sp.add_argument("--out", help="output file ('-' or omitted: stdout)")
        return sp

    point("coeffs", "wavenumbers and scattering coefficients for one problem")
    point("momentum", "rms-momentum kinematics for one problem")
    point("times", "all transit-time quantities for one problem")
    point("depth", "penetration depth and uncertainty coefficient for one problem")

    def grid(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", help="key=value config file")
        sp.add_argument("--out", help="output file ('-' or omitted: stdout)")
        return sp

    grid("sweep", "full record CSV over the configured grid")
    grid("table1", "penetration-depth table on the canonical 5x9 grid")
    figures = grid("figures", "figure-data CSVs over the configured grid")
    figures.add_argument(
        "--which",
        choices=FIGURE_IDS + ("all",),
        default="all",
        help="which figure to emit (default: all of them)",
    )
    figures.add_argument(
        "--out-dir",
        default=".",
        help="directory for the per-figure files when --which=all",
    )
    return parser


def _dispatch(args) -> int:
    if args.command == "coeffs":
        _write(_cmd_coeffs(args), args.out)
    elif args.command == "momentum":
        _write(_cmd_momentum(args), args.out)
    elif args.command == "times":
        _write(_cmd_times(args), args.out)
    elif args.command == "depth":
        _write(_cmd_depth(args), args.out)
    elif args.command == "sweep":
        cfg = _load_config(args)
        _write(records_to_csv(run_sweep(cfg), cfg), args.out)
    elif args.command == "table1":
        cfg = _load_config(args)
        _write(emit_table1(run_sweep(cfg), cfg), args.out)
    elif args.command == "figures":
        cfg = _load_config(args)
        records = run_sweep(cfg)
        if args.which == "all":
            # the config's outputs list narrows the set; an all-table config
            # still gets the full figure set from this figure-only command
            figs = tuple(o for o in cfg.outputs if o in FIGURE_IDS) or FIGURE_IDS
            out_dir = Path(args.out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            for fig in figs:
                text = emit_figure_data(records, fig, cfg)
                (out_dir / f"{fig}.csv").write_bytes(text.encode("utf-8"))
        else:
            _write(emit_figure_data(records, args.which, cfg), args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except (ParseError, ValidationError, DomainError) as exc:
        print(f"{TOOL_NAME}: error: {exc}", file=sys.stderr)
        return 1
    except MissingGridPoint as exc:
        print(f"{TOOL_NAME}: missing grid point: {exc}", file=sys.stderr)
        return 2
    except (NoConvergence, ArithmeticError) as exc:
        print(f"{TOOL_NAME}: numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
