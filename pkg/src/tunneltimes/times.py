"""The competing transit-time quantities for one barrier problem.

Four inequivalent clocks are computed side by side:

  * phase time       d / sqrt(2E/m) + hbar * d(arg S)/dE, the group delay of
                     the transmitted wave;
  * dwell time       (integral of |psi_barrier|^2 over [0, d]) / incident flux;
  * traversal time   m d / (hbar kappa), the opaque-barrier oscillating-field
                     scale (linear in d by construction);
  * effective time   d / v_rms from the momentum spectrum.

Phase and dwell times are each computed twice: numerically from their
definitions and from independent closed forms sharing the denominator

    D = 4 kappa^2 k^2 + (2 m V0 / hbar^2)^2 sinh^2(kappa d).

The numerical route is the arbiter: time_report() cross-checks the pairs and
fails loudly, quoting both values, if they drift apart. Phase and dwell times
saturate for thick barriers (their d-derivative dies off like exp(-2 kappa d)),
which is exactly why they imply unbounded apparent velocities; the effective
time does not saturate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .barrier import BarrierProblem, incident_flux, stationary_solution, wavenumbers
from .constants import CONSTANTS, energy_ev_to_si
from .errors import NoConvergence
from .momentum import momentum_spectrum
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, differentiate_phase, integrate

_M = CONSTANTS.electron_mass
_HBAR = CONSTANTS.hbar

#: Default energy step for the phase-derivative stencil, eV. arg S varies on
#: the eV scale, so 1e-4 eV balances truncation against roundoff in doubles.
DEFAULT_PHASE_STEP_EV = 1e-4

#: Numeric and analytic routes agreeing worse than this means one of them is
#: wrong; report both rather than silently preferring either.
CROSS_CHECK_TOL = 1e-5


@dataclass(frozen=True)
class TimeReport:
    """All transit-time quantities for one problem, in seconds."""

    t_eff: float
    t_phase_numeric: float
    t_phase_analytic: float
    t_dwell_numeric: float
    t_dwell_analytic: float
    t_bl: float
    d_denominator: float  # shared denominator D of the closed forms, 1/m^4


def transmission_amplitude(problem: BarrierProblem, energy: float) -> complex:
    """S at a different incident energy over the same barrier."""
    return stationary_solution(replace(problem, energy=energy)).S


def _shared_denominator(k: float, kappa: float, d: float, height: float) -> float:
    g = 2.0 * _M * height / _HBAR**2  # equals k^2 + kappa^2
    return 4.0 * kappa**2 * k**2 + g**2 * math.sinh(kappa * d) ** 2


def phase_time_numeric(
    problem: BarrierProblem, step_ev: float = DEFAULT_PHASE_STEP_EV
) -> float:
    """Group delay from a central difference of the transmission phase.

    Raises DomainError when the stencil E +/- h leaves the tunneling regime
    (including the near-threshold guard band), which clips the extreme edges
    of energy grids.
    """
    h = energy_ev_to_si(step_ev)
    e0 = problem.energy
    darg = differentiate_phase(
        lambda e: transmission_amplitude(problem, e),
        e0,
        h,
        domain=(0.0, problem.height),
    )
    return problem.thickness / math.sqrt(2.0 * e0 / _M) + _HBAR * darg


def phase_time_analytic(problem: BarrierProblem) -> float:
    """Closed form for the group delay; certified against the numeric route."""
    wn = wavenumbers(problem)
    k, kappa, d = wn.k, wn.kappa, problem.thickness
    g = 2.0 * _M * problem.height / _HBAR**2
    dd = _shared_denominator(k, kappa, d, problem.height)
    bracket = 2.0 * kappa * d * k**2 * (kappa**2 - k**2) + g**2 * math.sinh(
        2.0 * kappa * d
    )
    return _M / (_HBAR * k * kappa * dd) * bracket


def dwell_time_numeric(
    problem: BarrierProblem, quadrature: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """In-barrier probability over incident flux, the numerator by quadrature."""
    sol = stationary_solution(problem)
    density = lambda x: np.abs(sol.psi_barrier(x)) ** 2
    stored = integrate(density, 0.0, problem.thickness, quadrature)
    return stored / incident_flux(problem)


def dwell_time_analytic(problem: BarrierProblem) -> float:
    """Closed form for the dwell time; certified against the numeric route."""
    wn = wavenumbers(problem)
    k, kappa, d = wn.k, wn.kappa, problem.thickness
    g = 2.0 * _M * problem.height / _HBAR**2
    dd = _shared_denominator(k, kappa, d, problem.height)
    bracket = 2.0 * kappa * d * (kappa**2 - k**2) + g * math.sinh(2.0 * kappa * d)
    return _M * k / (_HBAR * kappa * dd) * bracket


def bl_time(problem: BarrierProblem) -> float:
    """Opaque-barrier traversal scale m d / (hbar kappa)."""
    return _M * problem.thickness / (_HBAR * wavenumbers(problem).kappa)


def _check_pair(name: str, numeric: float, analytic: float) -> None:
    if abs(numeric - analytic) > CROSS_CHECK_TOL * abs(analytic):
        raise NoConvergence(
            f"{name} time routes disagree: numeric {numeric!r} vs analytic "
            f"{analytic!r} (tolerance {CROSS_CHECK_TOL} relative)"
        )


def time_report(
    problem: BarrierProblem,
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE,
    step_ev: float = DEFAULT_PHASE_STEP_EV,
    check: bool = True,
) -> TimeReport:
    """All transit-time quantities for one problem.

    With ``check`` (the default) the numeric/analytic pairs must agree to
    CROSS_CHECK_TOL or the report raises instead of returning a number that
    one route disputes.
    """
    wn = wavenumbers(problem)
    t_eff = momentum_spectrum(problem, quadrature).kinematics().t_eff
    t_ph_num = phase_time_numeric(problem, step_ev)
    t_ph_ana = phase_time_analytic(problem)
    t_dw_num = dwell_time_numeric(problem, quadrature)
    t_dw_ana = dwell_time_analytic(problem)
    if check:
        _check_pair("phase", t_ph_num, t_ph_ana)
        _check_pair("dwell", t_dw_num, t_dw_ana)
    return TimeReport(
        t_eff=t_eff,
        t_phase_numeric=t_ph_num,
        t_phase_analytic=t_ph_ana,
        t_dwell_numeric=t_dw_num,
        t_dwell_analytic=t_dw_ana,
        t_bl=bl_time(problem),
        d_denominator=_shared_denominator(
            wn.k, wn.kappa, problem.thickness, problem.height
        ),
    )
