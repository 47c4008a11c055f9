"""Parameter sweeps over barrier problems and deterministic CSV emission.

A sweep evaluates every module at every (E/V0, d) grid point and collects one
flat record per point. Records are pure data; the emitters below turn them
into CSV with '#'-prefixed metadata lines (tool version, config echo, stencil
clipping notes) ahead of the header. Identical configs produce byte-identical
output: evaluation order is fixed, no timestamps are embedded, and floats are
serialized at six significant digits (the depth table uses the conventional
four decimals of nm instead).

Per-point failures land in the record's ``error`` column and never abort the
sweep; a missing depth on a thin barrier is a ``no_crossing`` note, not an
error. NaN is never serialized: absent values are empty cells.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np

from . import __version__
from .barrier import (
    DEFAULT_CUTOFF,
    BarrierProblem,
    stationary_solution,
)
from .constants import CONSTANTS, energy_si_to_ev, length_si_to_nm
from .depth import penetration_depth, relative_density
from .errors import (
    DomainError,
    MissingGridPoint,
    NoConvergence,
    ParseError,
    ValidationError,
)
from .momentum import momentum_spectrum
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec
from .times import (
    CROSS_CHECK_TOL,
    DEFAULT_PHASE_STEP_EV,
    bl_time,
    dwell_time_analytic,
    dwell_time_numeric,
    phase_time_analytic,
    phase_time_numeric,
)

TOOL_NAME = "tunneltimes"

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6a")
OUTPUT_KINDS = ("coeffs", "momentum", "times", "depth", "table1") + FIGURE_IDS

#: The depth-table grid: five energy ratios by nine thicknesses (nm).
TABLE1_E_RATIOS = (0.01, 0.1, 0.5, 0.9, 0.99)
TABLE1_D_NM = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)

DEFAULT_E_RATIOS = TABLE1_E_RATIOS
DEFAULT_D_NM = (0.1,) + TABLE1_D_NM

#: K-grid resolution for the momentum-density curves (fig1).
FIG1_K_POINTS = 201
#: x-grid resolution for the relative-density curves (fig4).
FIG4_X_POINTS = 128


@dataclass(frozen=True)
class SweepConfig:
    """Validated sweep parameters; every field has a documented default."""

    v0_ev: float = 10.0
    e_over_v0_grid: tuple[float, ...] = DEFAULT_E_RATIOS
    d_nm_grid: tuple[float, ...] = DEFAULT_D_NM
    cutoff: float = DEFAULT_CUTOFF
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE
    phase_step_ev: float = DEFAULT_PHASE_STEP_EV
    outputs: tuple[str, ...] = ("table1",) + FIGURE_IDS

    def __post_init__(self):
        if not self.v0_ev > 0:
            raise ValidationError("V0_eV must be positive")
        _check_grid("E_over_V0_grid", self.e_over_v0_grid)
        _check_grid("d_nm_grid", self.d_nm_grid)
        if any(not 0.0 < r < 1.0 for r in self.e_over_v0_grid):
            raise ValidationError(
                "E_over_V0_grid must stay inside the tunneling regime (0, 1)"
            )
        if not self.cutoff > 0:
            raise ValidationError("Kprime must be positive")
        if not self.phase_step_ev > 0:
            raise ValidationError("phase_step_eV must be positive")
        for out in self.outputs:
            if out not in OUTPUT_KINDS:
                raise ValidationError(
                    f"unknown output {out!r}; valid outputs: {', '.join(OUTPUT_KINDS)}"
                )


def _check_grid(name: str, grid: tuple[float, ...]) -> None:
    if not grid:
        raise ValidationError(f"{name} must not be empty")
    if any(v <= 0 for v in grid):
        raise ValidationError(f"{name} values must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValidationError(f"{name} must be strictly increasing")


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: problem inputs plus every scalar output.

    Optional fields are None when not computed (upstream failure) or not
    defined (no depth crossing); ``note`` carries machine-readable reason
    codes, ``error`` the per-point failure messages.
    """

    e_over_v0: float
    d_nm: float
    e_ev: float
    v0_ev: float
    cutoff: float
    s_abs2: float | None = None
    r_abs2: float | None = None
    k_rms: float | None = None
    v_rms: float | None = None
    t_eff_s: float | None = None
    eps_eff_ev: float | None = None
    t_ph_numeric_s: float | None = None
    t_ph_analytic_s: float | None = None
    t_dw_numeric_s: float | None = None
    t_dw_analytic_s: float | None = None
    t_bl_s: float | None = None
    s_nm: float | None = None
    tau_eff_s: float | None = None
    xi: float | None = None
    note: str = ""
    error: str = ""


_CSV_COLUMNS = {
    "E_over_V0": "e_over_v0",
    "d_nm": "d_nm",
    "E_eV": "e_ev",
    "V0_eV": "v0_ev",
    "Kprime_per_m": "cutoff",
    "S_abs2": "s_abs2",
    "R_abs2": "r_abs2",
    "K_rms_per_m": "k_rms",
    "v_rms_m_per_s": "v_rms",
    "t_eff_s": "t_eff_s",
    "eps_eff_eV": "eps_eff_ev",
    "t_ph_numeric_s": "t_ph_numeric_s",
    "t_ph_analytic_s": "t_ph_analytic_s",
    "t_dw_numeric_s": "t_dw_numeric_s",
    "t_dw_analytic_s": "t_dw_analytic_s",
    "t_bl_s": "t_bl_s",
    "s_nm": "s_nm",
    "tau_eff_s": "tau_eff_s",
    "xi": "xi",
    "note": "note",
    "error": "error",
}

NOTE_NO_CROSSING = "no_crossing"
NOTE_PHASE_CLIPPED = "phase_stencil_clipped"


def evaluate_point(cfg: SweepConfig, e_ratio: float, d_nm: float) -> SweepRecord:
    """Compute every output for one grid point, isolating failures per block."""
    e_ev = e_ratio * cfg.v0_ev
    rec = SweepRecord(
        e_over_v0=e_ratio, d_nm=d_nm, e_ev=e_ev, v0_ev=cfg.v0_ev, cutoff=cfg.cutoff
    )
    notes: list[str] = []
    errors: list[str] = []

    try:
        problem = BarrierProblem.from_ev_nm(e_ev, cfg.v0_ev, d_nm, cfg.cutoff)
    except DomainError as exc:
        return replace(rec, error=f"problem: {exc}")

    sol = stationary_solution(problem)
    rec = replace(rec, s_abs2=sol.transmission, r_abs2=sol.reflection)

    kin = None
    try:
        kin = momentum_spectrum(problem, cfg.quadrature, solution=sol).kinematics()
        rec = replace(
            rec,
            k_rms=kin.k_rms,
            v_rms=kin.v_rms,
            t_eff_s=kin.t_eff,
            eps_eff_ev=energy_si_to_ev(kin.eps_eff),
        )
    except (DomainError, NoConvergence) as exc:
        errors.append(f"momentum: {exc}")

    t_ph_ana = phase_time_analytic(problem)
    t_dw_ana = dwell_time_analytic(problem)
    rec = replace(
        rec, t_ph_analytic_s=t_ph_ana, t_dw_analytic_s=t_dw_ana, t_bl_s=bl_time(problem)
    )
    try:
        t_ph_num = phase_time_numeric(problem, cfg.phase_step_ev)
        rec = replace(rec, t_ph_numeric_s=t_ph_num)
        if abs(t_ph_num - t_ph_ana) > CROSS_CHECK_TOL * abs(t_ph_ana):
            errors.append(
                f"phase cross-check: numeric {t_ph_num!r} vs analytic {t_ph_ana!r}"
            )
    except DomainError:
        notes.append(NOTE_PHASE_CLIPPED)
    try:
        t_dw_num = dwell_time_numeric(problem, cfg.quadrature)
        rec = replace(rec, t_dw_numeric_s=t_dw_num)
        if abs(t_dw_num - t_dw_ana) > CROSS_CHECK_TOL * abs(t_dw_ana):
            errors.append(
                f"dwell cross-check: numeric {t_dw_num!r} vs analytic {t_dw_ana!r}"
            )
    except (DomainError, NoConvergence) as exc:
        errors.append(f"dwell: {exc}")

    try:
        depth = penetration_depth(problem)
        if depth is None:
            notes.append(NOTE_NO_CROSSING)
        else:
            rec = replace(rec, s_nm=length_si_to_nm(depth))
            if kin is not None:
                tau = depth / kin.v_rms
                rec = replace(
                    rec, tau_eff_s=tau, xi=2.0 * kin.eps_eff * tau / CONSTANTS.hbar
                )
    except (DomainError, NoConvergence) as exc:
        errors.append(f"depth: {exc}")

    return replace(rec, note=";".join(notes), error="; ".join(errors))


def run_sweep(cfg: SweepConfig) -> list[SweepRecord]:
    """Evaluate the full grid, thickness outer, energy inner (ascending)."""
    return [
        evaluate_point(cfg, e_ratio, d_nm)
        for d_nm in cfg.d_nm_grid
        for e_ratio in cfg.e_over_v0_grid
    ]


# --- config files -----------------------------------------------------------


def _parse_float(text: str) -> float:
    value = float(text)
    if not np.isfinite(value):
        raise ValueError("not finite")
    return value


def _parse_float_list(text: str) -> tuple[float, ...]:
    items = [piece.strip() for piece in text.split(",")]
    if any(not piece for piece in items):
        raise ValueError("empty list entry")
    return tuple(_parse_float(piece) for piece in items)


def _parse_str_list(text: str) -> tuple[str, ...]:
    return tuple(piece.strip() for piece in text.split(",") if piece.strip())


_CONFIG_KEYS = {
    "V0_eV": _parse_float,
    "E_over_V0_grid": _parse_float_list,
    "d_nm_grid": _parse_float_list,
    "Kprime": _parse_float,
    "phase_step_eV": _parse_float,
    "outputs": _parse_str_list,
    "quad_method": str,
    "quad_points": int,
    "quad_rel_tol": _parse_float,
}


def parse_config(text: str) -> SweepConfig:
    """Parse line-oriented ``key=value`` config text ('#' starts a comment).

    Malformed lines raise ParseError carrying the line number; structurally
    fine but invalid values raise ValidationError naming the broken invariant.
    Omitted keys fall back to the SweepConfig defaults.
    """
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected key=value", line=lineno)
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _CONFIG_KEYS:
            raise ParseError(f"unknown key {key!r}", line=lineno)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", line=lineno)
        try:
            values[key] = _CONFIG_KEYS[key](val)
        except ValueError as exc:
            raise ParseError(f"bad value for {key!r}: {val!r} ({exc})", line=lineno)

    quad_kwargs = {}
    if "quad_method" in values:
        quad_kwargs["method"] = values.pop("quad_method")
    if "quad_points" in values:
        quad_kwargs["panels_or_nodes"] = values.pop("quad_points")
    if "quad_rel_tol" in values:
        quad_kwargs["rel_tol"] = values.pop("quad_rel_tol")
    quadrature = (
        replace(DEFAULT_QUADRATURE, **quad_kwargs) if quad_kwargs else DEFAULT_QUADRATURE
    )

    kwargs = {}
    for key, field_name in (
        ("V0_eV", "v0_ev"),
        ("E_over_V0_grid", "e_over_v0_grid"),
        ("d_nm_grid", "d_nm_grid"),
        ("Kprime", "cutoff"),
        ("phase_step_eV", "phase_step_ev"),
        ("outputs", "outputs"),
    ):
        if key in values:
            kwargs[field_name] = values[key]
    return SweepConfig(quadrature=quadrature, **kwargs)


def config_lines(cfg: SweepConfig) -> list[str]:
    """The config echoed back in its own file syntax (used in CSV metadata)."""
    return [
        f"V0_eV={_fmt(cfg.v0_ev)}",
        "E_over_V0_grid=" + ",".join(_fmt(v) for v in cfg.e_over_v0_grid),
        "d_nm_grid=" + ",".join(_fmt(v) for v in cfg.d_nm_grid),
        f"Kprime={_fmt(cfg.cutoff)}",
        f"phase_step_eV={_fmt(cfg.phase_step_ev)}",
        f"quad_method={cfg.quadrature.method}",
        f"quad_points={cfg.quadrature.panels_or_nodes}",
        f"quad_rel_tol={_fmt(cfg.quadrature.rel_tol)}",
        "outputs=" + ",".join(cfg.outputs),
    ]


# --- CSV emission -----------------------------------------------------------


def _fmt(value: float | None) -> str:
    """Six significant digits, empty cell for absent values, never NaN."""
    if value is None:
        return ""
    if not np.isfinite(value):
        raise ValueError("refusing to serialize a non-finite value")
    if value == 0:
        return "0"
    return f"{value:.6g}"


def _metadata(cfg: SweepConfig | None, records: list[SweepRecord] | None) -> list[str]:
    lines = [f"# tool: {TOOL_NAME} {__version__}"]
    if cfg is not None:
        lines += [f"# config: {entry}" for entry in config_lines(cfg)]
    if records:
        clipped = [
            f"(E/V0={_fmt(r.e_over_v0)}, d={_fmt(r.d_nm)} nm)"
            for r in records
            if NOTE_PHASE_CLIPPED in r.note
        ]
        if clipped:
            lines.append(
                "# clipping: phase-time stencil left the energy domain at "
                + ", ".join(clipped)
            )
    return lines


def records_to_csv(records: list[SweepRecord], cfg: SweepConfig | None = None) -> str:
    """The full sweep as CSV, one row per grid point in evaluation order."""
    out = _metadata(cfg, records)
    out.append(",".join(_CSV_COLUMNS))
    for rec in records:
        cells = []
        for attr in _CSV_COLUMNS.values():
            value = getattr(rec, attr)
            cells.append(value if isinstance(value, str) else _fmt(value))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def parse_records(text: str) -> list[SweepRecord]:
    """Re-parse a sweep CSV (as emitted by records_to_csv) into records."""
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    if not lines:
        raise ParseError("no header row found")
    header = lines[0].split(",")
    if header != list(_CSV_COLUMNS):
        raise ParseError("unexpected sweep CSV header")
    field_types = {f.name: f.type for f in fields(SweepRecord)}
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        if len(cells) != len(header):
            raise ParseError(f"row has {len(cells)} cells, expected {len(header)}")
        kwargs: dict[str, object] = {}
        for column, cell in zip(header, cells):
            attr = _CSV_COLUMNS[column]
            if field_types[attr] == "str":
                kwargs[attr] = cell
            else:
                kwargs[attr] = float(cell) if cell else None
        records.append(SweepRecord(**kwargs))
    return records


def _index_records(
    records: list[SweepRecord],
) -> dict[tuple[float, float], SweepRecord]:
    # keys rounded so grid floats survive a round-trip through 6-digit CSV
    return {(round(r.e_over_v0, 6), round(r.d_nm, 6)): r for r in records}


def _require(
    index: dict[tuple[float, float], SweepRecord], e_ratio: float, d_nm: float
) -> SweepRecord:
    try:
        return index[(round(e_ratio, 6), round(d_nm, 6))]
    except KeyError:
        raise MissingGridPoint(
            f"no sweep record for E/V0={e_ratio}, d={d_nm} nm"
        ) from None


def emit_table1(records: list[SweepRecord], cfg: SweepConfig | None = None) -> str:
    """Penetration depths on the canonical 5x9 grid, nm, four decimals.

    Rows run energy-ratio outer / thickness inner, both ascending. Every cell
    must be present and have a depth; anything else raises MissingGridPoint.
    """
    index = _index_records(records)
    out = _metadata(cfg, records)
    out.append("E_over_V0,d_nm,s_nm")
    for e_ratio in TABLE1_E_RATIOS:
        for d_nm in TABLE1_D_NM:
            rec = _require(index, e_ratio, d_nm)
            if rec.s_nm is None:
                raise MissingGridPoint(
                    f"record E/V0={e_ratio}, d={d_nm} nm has no depth "
                    f"(note={rec.note!r}, error={rec.error!r})"
                )
            out.append(f"{_fmt(e_ratio)},{_fmt(d_nm)},{rec.s_nm:.4f}")
    return "\n".join(out) + "\n"


def _figure_problem(rec: SweepRecord) -> BarrierProblem:
    if rec.s_abs2 is None:  # the sweep could not even solve this point
        raise MissingGridPoint(
            f"record E/V0={_fmt(rec.e_over_v0)}, d={_fmt(rec.d_nm)} nm has no "
            f"solution to draw curves from (error={rec.error!r})"
        )
    return BarrierProblem.from_ev_nm(rec.e_ev, rec.v0_ev, rec.d_nm, rec.cutoff)


def _emit_scalar_figure(
    records: list[SweepRecord],
    cfg: SweepConfig | None,
    columns: dict[str, str],
    optional: tuple[str, ...] = (),
) -> str:
    out = _metadata(cfg, records)
    out.append(",".join(columns))
    for rec in records:
        cells = []
        for column, attr in columns.items():
            value = getattr(rec, attr)
            if value is None and attr not in optional and column not in optional:
                raise MissingGridPoint(
                    f"record E/V0={_fmt(rec.e_over_v0)}, d={_fmt(rec.d_nm)} nm "
                    f"is missing {column} (note={rec.note!r}, error={rec.error!r})"
                )
            cells.append(_fmt(value))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def emit_figure_data(
    records: list[SweepRecord], which: str, cfg: SweepConfig | None = None
) -> str:
    """One figure's data as CSV.

    fig1: momentum-density curves over the K window per grid point.
    fig2: v_rms, eps_eff, t_eff per grid point.
    fig3: the three literature times side by side per grid point.
    fig4: relative-density curves on 128 uniform x points per grid point.
    fig5: depth, tau_eff, xi per grid point (empty cells where no crossing).
    fig6a: eps_eff + V0 per grid point.
    """
    if which == "fig1":
        out = _metadata(cfg, records)
        out.append("E_over_V0,d_nm,K_per_m,pdf_m")
        quadrature = cfg.quadrature if cfg is not None else DEFAULT_QUADRATURE
        for rec in records:
            spectrum = momentum_spectrum(_figure_problem(rec), quadrature)
            ks = np.linspace(-rec.cutoff, rec.cutoff, FIG1_K_POINTS)
            pdf = spectrum.pdf(ks)
            prefix = f"{_fmt(rec.e_over_v0)},{_fmt(rec.d_nm)}"
            out += [f"{prefix},{_fmt(k)},{_fmt(p)}" for k, p in zip(ks, pdf)]
        return "\n".join(out) + "\n"
    if which == "fig2":
        return _emit_scalar_figure(
            records,
            cfg,
            {
                "E_over_V0": "e_over_v0",
                "d_nm": "d_nm",
                "v_rms_m_per_s": "v_rms",
                "eps_eff_eV": "eps_eff_ev",
                "t_eff_s": "t_eff_s",
            },
        )
    if which == "fig3":
        return _emit_scalar_figure(
            records,
            cfg,
            {
                "E_over_V0": "e_over_v0",
                "d_nm": "d_nm",
                "E_eV": "e_ev",
                "t_ph_s": "t_ph_numeric_s",
                "t_dw_s": "t_dw_numeric_s",
                "t_bl_s": "t_bl_s",
            },
        )
    if which == "fig4":
        out = _metadata(cfg, records)
        out.append("E_over_V0,d_nm,x_nm,relative_density")
        for rec in records:
            sol = stationary_solution(_figure_problem(rec))
            xs = np.linspace(0.0, sol.problem.thickness, FIG4_X_POINTS)
            dens = relative_density(sol, xs)
            prefix = f"{_fmt(rec.e_over_v0)},{_fmt(rec.d_nm)}"
            out += [
                f"{prefix},{_fmt(length_si_to_nm(x))},{_fmt(v)}"
                for x, v in zip(xs, dens)
            ]
        return "\n".join(out) + "\n"
    if which == "fig5":
        return _emit_scalar_figure(
            records,
            cfg,
            {
                "E_over_V0": "e_over_v0",
                "d_nm": "d_nm",
                "s_nm": "s_nm",
                "tau_eff_s": "tau_eff_s",
                "xi": "xi",
            },
            optional=("s_nm", "tau_eff_s", "xi"),
        )
    if which == "fig6a":
        out = _metadata(cfg, records)
        out.append("E_over_V0,d_nm,eps_eff_plus_V0_eV")
        for rec in records:
            if rec.eps_eff_ev is None:
                raise MissingGridPoint(
                    f"record E/V0={_fmt(rec.e_over_v0)}, d={_fmt(rec.d_nm)} nm "
                    f"is missing eps_eff (error={rec.error!r})"
                )
            out.append(
                f"{_fmt(rec.e_over_v0)},{_fmt(rec.d_nm)},"
                f"{_fmt(rec.eps_eff_ev + rec.v0_ev)}"
            )
        return "\n".join(out) + "\n"
    raise ValidationError(f"unknown figure id {which!r}; valid: {', '.join(FIGURE_IDS)}")
