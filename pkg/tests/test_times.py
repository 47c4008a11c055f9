import math

import pytest

from tunneltimes.barrier import BarrierProblem, wavenumbers
from tunneltimes.constants import CONSTANTS
from tunneltimes.errors import DomainError, NoConvergence
from tunneltimes.times import (
    _check_pair,
    bl_time,
    dwell_time_analytic,
    dwell_time_numeric,
    phase_time_analytic,
    phase_time_numeric,
    time_report,
)

AGREEMENT = 1e-6  # numeric and analytic routes must agree this tightly


class TestPhaseTime:
    def test_routes_agree_at_half_height(self):
        p = BarrierProblem.from_ev_nm(5.0, 10.0, 0.5)
        numeric = phase_time_numeric(p)
        analytic = phase_time_analytic(p)
        assert abs(numeric - analytic) <= AGREEMENT * analytic

    def test_routes_agree_across_grid(self):
        for e_ratio in (0.05, 0.3, 0.7, 0.95):
            for d_nm in (0.1, 0.5, 1.0):
                p = BarrierProblem.from_ev_nm(10.0 * e_ratio, 10.0, d_nm)
                numeric = phase_time_numeric(p)
                analytic = phase_time_analytic(p)
                assert abs(numeric - analytic) <= AGREEMENT * analytic

    def test_half_height_degeneracy(self):
        # at E = V0/2 the wavenumbers coincide, the bracket's first term
        # carries a (kappa^2 - k^2) factor and dies, leaving only the sinh term
        p = BarrierProblem.from_ev_nm(5.0, 10.0, 0.5)
        wn = wavenumbers(p)
        g = 2.0 * CONSTANTS.electron_mass * p.height / CONSTANTS.hbar**2
        dd = 4.0 * wn.kappa**2 * wn.k**2 + g**2 * math.sinh(wn.kappa * p.thickness) ** 2
        want = (
            CONSTANTS.electron_mass
            / (CONSTANTS.hbar * wn.k * wn.kappa * dd)
            * g**2
            * math.sinh(2.0 * wn.kappa * p.thickness)
        )
        assert phase_time_analytic(p) == pytest.approx(want, rel=1e-14)

    def test_thick_barrier_saturation_value(self):
        # saturates at 2m / (hbar k kappa); 1.3169e-16 s at half height
        p = BarrierProblem.from_ev_nm(5.0, 10.0, 1.0)
        wn = wavenumbers(p)
        limit = 2.0 * CONSTANTS.electron_mass / (CONSTANTS.hbar * wn.k * wn.kappa)
        assert limit == pytest.approx(1.317e-16, rel=1e-3)
        assert phase_time_analytic(p) == pytest.approx(limit, rel=1e-6)

    def test_vanishing_barrier_limit(self):
        # every term goes linear in d, so the time scales straight to zero
        thin = phase_time_analytic(BarrierProblem.from_ev_nm(5.0, 10.0, 1e-4))
        thinner = phase_time_analytic(BarrierProblem.from_ev_nm(5.0, 10.0, 5e-5))
        assert 0.0 < thin < 1e-18
        assert thin == pytest.approx(2.0 * thinner, rel=1e-6)

    def test_stencil_clipping_raises(self):
        with pytest.raises(DomainError):
            phase_time_numeric(BarrierProblem.from_ev_nm(5e-5, 10.0, 0.5))
        with pytest.raises(DomainError):
            phase_time_numeric(BarrierProblem.from_ev_nm(10.0 - 2e-5, 10.0, 0.5))


class TestDwellTime:
    def test_routes_agree_at_half_height(self):
        p = BarrierProblem.from_ev_nm(5.0, 10.0, 0.5)
        numeric = dwell_time_numeric(p)
        analytic = dwell_time_analytic(p)
        assert abs(numeric - analytic) <= AGREEMENT * analytic

    def test_routes_agree_across_grid(self):
        for e_ratio in (0.05, 0.3, 0.7, 0.95):
            for d_nm in (0.1, 0.5, 1.0):
                p = BarrierProblem.from_ev_nm(10.0 * e_ratio, 10.0, d_nm)
                numeric = dwell_time_numeric(p)
                analytic = dwell_time_analytic(p)
                assert abs(numeric - analytic) <= AGREEMENT * analytic

    def test_positive_across_grid(self):
        for e_ratio in (0.01, 0.5, 0.99):
            for d_nm in (0.1, 1.0):
                assert dwell_time_analytic(
                    BarrierProblem.from_ev_nm(10.0 * e_ratio, 10.0, d_nm)
                ) > 0.0

    def test_vanishing_barrier_limit(self):
        thin = dwell_time_analytic(BarrierProblem.from_ev_nm(5.0, 10.0, 1e-4))
        thinner = dwell_time_analytic(BarrierProblem.from_ev_nm(5.0, 10.0, 5e-5))
        assert 0.0 < thin < 1e-18
        assert thin == pytest.approx(2.0 * thinner, rel=1e-6)

    def test_never_exceeds_phase_time(self):
        # the phase time carries the self-interference delay on top of the
        # stored probability, so the dwell time sits below it everywhere
        for e_ratio in (0.05, 0.3, 0.5, 0.7, 0.95):
            for d_nm in (0.1, 0.4, 0.7, 1.0):
                p = BarrierProblem.from_ev_nm(10.0 * e_ratio, 10.0, d_nm)
                assert dwell_time_analytic(p) < phase_time_analytic(p)


class TestTraversalTime:
    def test_hand_value(self):
        # m d / (hbar kappa) at 5 eV under a 10 eV, 1 nm barrier
        assert bl_time(BarrierProblem.from_ev_nm(5.0, 10.0, 1.0)) == pytest.approx(
            7.540e-16, rel=1e-3
        )

    def test_linear_in_thickness(self):
        once = bl_time(BarrierProblem.from_ev_nm(5.0, 10.0, 0.5))
        twice = bl_time(BarrierProblem.from_ev_nm(5.0, 10.0, 1.0))
        assert twice == pytest.approx(2.0 * once, rel=1e-14)

    def test_grows_with_energy(self):
        values = [
            bl_time(BarrierProblem.from_ev_nm(e_ev, 10.0, 1.0))
            for e_ev in (1.0, 3.0, 5.0, 7.0, 9.0)
        ]
        assert all(b > a for a, b in zip(values, values[1:]))


class TestSaturationAndDisagreement:
    def test_phase_and_dwell_saturate_on_thick_barriers(self):
        # the d-derivative dies off exponentially, so 0.9 -> 1.0 nm moves
        # both times by far less than 0.1%
        for fn in (phase_time_numeric, dwell_time_numeric):
            at_09 = fn(BarrierProblem.from_ev_nm(5.0, 10.0, 0.9))
            at_10 = fn(BarrierProblem.from_ev_nm(5.0, 10.0, 1.0))
            assert abs(at_10 - at_09) / at_09 < 1e-3

    def test_three_clocks_disagree_pairwise(self):
        p = BarrierProblem.from_ev_nm(5.0, 10.0, 1.0)
        clocks = (phase_time_analytic(p), dwell_time_analytic(p), bl_time(p))
        for i, a in enumerate(clocks):
            for b in clocks[i + 1 :]:
                assert abs(a - b) / max(a, b) > 0.05


class TestTimeReport:
    def test_report_is_internally_consistent(self):
        p = BarrierProblem.from_ev_nm(5.0, 10.0, 0.5)
        report = time_report(p)
        assert (
            abs(report.t_phase_numeric - report.t_phase_analytic)
            <= AGREEMENT * report.t_phase_analytic
        )
        assert (
            abs(report.t_dwell_numeric - report.t_dwell_analytic)
            <= AGREEMENT * report.t_dwell_analytic
        )
        assert report.t_bl == bl_time(p)
        assert report.t_eff > 0.0
        assert report.d_denominator > 0.0

    def test_cross_check_failure_reports_both_values(self):
        with pytest.raises(NoConvergence, match=r"1e-16.*2e-16"):
            _check_pair("phase", 1e-16, 2e-16)
