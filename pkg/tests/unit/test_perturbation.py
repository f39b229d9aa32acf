"""
Unit tests for the closed-form predictors.

Reference values are hand-evaluated from the formulas (omega0 = 1).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from ptfloquet.core.errors import NO_WINDOW, DomainError
from ptfloquet.core.model import ModelParams
from ptfloquet.perturbation.limits import (
    high_freq_boundary,
    high_freq_shift,
    low_freq_threshold,
    static_quasienergies,
)
from ptfloquet.perturbation.multiphoton import (
    ResonanceOrder,
    coupling_magnitude,
    effective_hamiltonian_multiphoton,
    level_shift,
    multiphoton_delta_u,
    multiphoton_line,
    multiphoton_line_inverse,
    multiphoton_rabi_freq_sq,
    window_rough,
)
from ptfloquet.perturbation.single_photon import (
    ExpansionOrder,
    bloch_siegert,
    effective_hamiltonian_single,
    hermitian_resonance_oracle,
    perturbative_quasienergies,
    rabi_freq_sq,
    single_photon_boundary,
)
from ptfloquet.perturbation.three_photon import (
    ScaledCoords,
    three_photon_boundary,
    three_photon_quasienergy,
    three_photon_shifts,
    three_photon_window_delta,
)


class TestSinglePhoton:
    """Single-photon resonance omega ~ omega0."""

    def test_rabi_frequency_on_resonance(self, resonant_anti):
        assert rabi_freq_sq(resonant_anti) == pytest.approx(-0.04)

    def test_rabi_frequency_hermitian_undriven(self, make_params):
        p = make_params(omega=1.3, drive="hermitian")
        assert rabi_freq_sq(p, "nlo") == pytest.approx(0.09)

    def test_next_order_just_symmetric(self, make_params):
        assert rabi_freq_sq(make_params(omega=1.1, lam=0.05), "next") == pytest.approx(5e-4)

    @pytest.mark.parametrize(
        "omega,order,expected",
        [
            (1.0, "next", 0.0),
            (1.2, "next", 0.105),
            (0.8, "next", 0.095),
            (1.2, "lowest", 0.1),
            (0.8, "rwa", 0.1),
        ],
    )
    def test_boundary(self, omega, order, expected):
        assert single_photon_boundary(omega, 1.0, order) == pytest.approx(expected, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(omega=st.floats(min_value=0.5, max_value=1.6))
    def test_orders_differ_by_detuning_squared(self, omega):
        diff = single_photon_boundary(omega, 1.0, "next") - single_photon_boundary(
            omega, 1.0, "lowest"
        )
        assert abs(diff) == pytest.approx((omega - 1.0) ** 2 / 8.0, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(omega=st.floats(min_value=0.6, max_value=1.5))
    def test_boundary_is_root_of_lowest_order_rabi_frequency(self, omega):
        lam = single_photon_boundary(omega, 1.0, "lowest")
        assert rabi_freq_sq(ModelParams(omega=omega, lam=lam), "lowest") == pytest.approx(
            0.0, abs=1e-12
        )

    @pytest.mark.parametrize(
        "lam,mode,expected",
        [(0.0, "anti_hermitian", 1.0), (0.2, "anti_hermitian", 0.96), (0.2, "hermitian", 1.04)],
    )
    def test_bloch_siegert(self, lam, mode, expected):
        assert bloch_siegert(lam, 1.0, mode) == pytest.approx(expected)

    def test_hermitian_oracle(self, make_params):
        assert hermitian_resonance_oracle(
            make_params(omega=1.0, lam=0.1, drive="hermitian"), "lowest"
        ) == pytest.approx(0.2)
        assert hermitian_resonance_oracle(
            make_params(omega=1.1, lam=0.1, drive="hermitian")
        ) == pytest.approx(math.sqrt(0.048))
        assert hermitian_resonance_oracle(
            make_params(omega=0.7, drive="hermitian")
        ) == pytest.approx(0.3)

    def test_hermitian_oracle_rejects_imaginary_drive(self, resonant_anti):
        with pytest.raises(ValueError):
            hermitian_resonance_oracle(resonant_anti)

    def test_quasienergies_in_broken_phase(self, resonant_anti):
        upper, lower = perturbative_quasienergies(resonant_anti, "lowest")
        assert upper == pytest.approx(0.5 + 0.1j)
        assert lower == pytest.approx(0.5 - 0.1j)

    def test_effective_hamiltonian_lowest_order(self, make_params):
        p = make_params(omega=1.2, lam=0.05)
        eff = effective_hamiltonian_single(p, ExpansionOrder.LOWEST)
        assert eff.h12 == 0.05j
        assert sorted(eff.eigenvalues(), key=lambda z: z.real) == pytest.approx(
            sorted(perturbative_quasienergies(p, "lowest"), key=lambda z: z.real), abs=1e-12
        )

    def test_effective_hamiltonian_next_order(self, make_params):
        """Agrees with the truncated Omega_tilde^2 up to the dropped lam^4 term."""
        p = make_params(omega=1.2, lam=0.05)
        eff = effective_hamiltonian_single(p, "next")
        assert eff.h11 == pytest.approx(0.5 - 0.00125)
        assert sorted(eff.eigenvalues(), key=lambda z: z.real) == pytest.approx(
            sorted(perturbative_quasienergies(p, "next"), key=lambda z: z.real), abs=1e-4
        )

    def test_order_parse(self):
        assert ExpansionOrder.parse("NLO") is ExpansionOrder.NEXT
        assert ExpansionOrder.parse("rwa") is ExpansionOrder.LOWEST
        with pytest.raises(ValueError):
            ExpansionOrder.parse("third")


class TestResonanceOrder:
    def test_photons(self):
        order = ResonanceOrder(2)
        assert order.photons == 5
        assert order.resonance_omega(1.0) == pytest.approx(0.2)
        assert int(order) == 2
        assert ResonanceOrder.of(order) is order

    def test_negative(self):
        with pytest.raises(ValueError):
            ResonanceOrder(-1)


class TestMultiphoton:
    """Multi-photon resonances omega0 ~ (2n+1) omega."""

    def test_three_photon_example(self):
        eff = multiphoton_delta_u(1, 1.0 / 3.0, 0.1, "anti_hermitian")
        assert eff.delta == pytest.approx(-0.0225)
        assert eff.u == pytest.approx(0.00225j)

    def test_five_photon_hermitian_coupling(self):
        eff = multiphoton_delta_u(2, 0.2, 0.1, "hermitian")
        assert eff.u.real == pytest.approx(9.765625e-5)
        assert eff.u.imag == 0.0

    def test_undriven(self):
        eff = multiphoton_delta_u(3, 0.14, 0.0)
        assert eff.delta == 0.0
        assert eff.u == 0.0
        assert eff.omega_eff_sq == pytest.approx((7 * 0.14 - 1.0) ** 2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_coupling_signs(self, n):
        herm = multiphoton_delta_u(n, 0.9 / (2 * n + 1), 0.1, "hermitian")
        anti = multiphoton_delta_u(n, 0.9 / (2 * n + 1), 0.1, "anti_hermitian")
        assert math.copysign(1.0, herm.u.real) == (-1) ** n
        assert anti.u.imag > 0
        assert anti.u.real == 0.0
        assert abs(anti.u) == pytest.approx(abs(herm.u))
        assert anti.delta == pytest.approx(-herm.delta)

    def test_invalid(self):
        with pytest.raises(ValueError):
            multiphoton_delta_u(0, 0.3, 0.1)
        with pytest.raises(ValueError):
            multiphoton_delta_u(1, 0.0, 0.1)

    @pytest.mark.parametrize(
        "n,omega,expected",
        [
            (1, 1.0 / 3.0, 0.0),
            (1, 1.0 / 3.0 - 0.01, 0.08165),
            (2, 0.2 - 0.01, 0.10954),
        ],
    )
    def test_line(self, n, omega, expected):
        assert multiphoton_line(n, omega) == pytest.approx(expected, abs=1e-5)

    def test_line_above_resonance(self):
        with pytest.raises(DomainError):
            multiphoton_line(1, 0.34)

    @pytest.mark.parametrize("n", [1, 2, 3])
    @pytest.mark.parametrize("offset", [0.001, 0.01, 0.03])
    def test_line_is_shifted_resonance(self, n, offset):
        """On the line the detuning (2n+1) omega - omega0 - 2 delta(omega_c) vanishes."""
        omega_c = 1.0 / (2 * n + 1)
        omega = omega_c - offset
        lam = multiphoton_line(n, omega)
        delta_c = level_shift(n, omega_c, lam, "anti_hermitian")
        assert (2 * n + 1) * omega - 1.0 - 2.0 * delta_c == pytest.approx(0.0, abs=1e-12)
        assert multiphoton_line_inverse(n, lam) == pytest.approx(omega, abs=1e-12)

    def test_rabi_frequency_sign_inside_window(self, make_params):
        centre = multiphoton_line_inverse(1, 0.1)
        assert multiphoton_rabi_freq_sq(1, make_params(omega=centre, lam=0.1)) < 0
        assert multiphoton_rabi_freq_sq(1, make_params(omega=0.3, lam=0.1)) > 0

    def test_effective_hamiltonian(self, make_params):
        p = make_params(omega=1.0 / 3.0, lam=0.1)
        eff = effective_hamiltonian_multiphoton(1, p)
        assert eff.h11 == pytest.approx(0.5 - 0.0225)
        assert eff.h22 == pytest.approx(-0.5 + 1.0 + 0.0225)
        assert eff.h12 == pytest.approx(0.00225j)


class TestWindowRough:
    """Rough window estimates."""

    def test_three_photon_values(self):
        rough = window_rough(1, 0.1)
        assert rough.width == pytest.approx(4.262e-3, rel=1e-3)
        assert rough.max_im_eps == pytest.approx(3.197e-3, rel=1e-3)

    def test_edges_around_line(self):
        rough = window_rough(1, 0.1)
        lo, hi = rough.edges
        centre = multiphoton_line_inverse(1, 0.1)
        assert lo < centre < hi
        # half-width 2|u| / 3 on either side of the line
        assert hi - lo == pytest.approx(4.0 * coupling_magnitude(1, centre, 0.1) / 3.0, rel=0.02)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_edges_solve_rough_condition(self, n):
        lam = 0.1
        lo, hi = window_rough(n, lam).edges
        omega_c = 1.0 / (2 * n + 1)
        delta_c = level_shift(n, omega_c, lam, "anti_hermitian")
        for omega, sign in ((lo, -1.0), (hi, 1.0)):
            detuning = (2 * n + 1) * omega - 1.0 - 2.0 * delta_c
            assert detuning == pytest.approx(
                sign * 2.0 * coupling_magnitude(n, omega, lam), abs=1e-12
            )

    def test_widths_shrink_with_order(self):
        widths = [window_rough(n, 0.1).width for n in (1, 2, 3)]
        assert widths[0] > widths[1] > widths[2]

    def test_undriven(self):
        rough = window_rough(2, 0.0)
        assert rough.width == 0.0
        assert rough.edges == (0.2, 0.2)

    def test_domain(self):
        with pytest.raises(DomainError):
            window_rough(1, 0.4)
        with pytest.raises(ValueError):
            window_rough(1, -0.1)


class TestThreePhoton:
    """Three-photon boundary one order beyond the line."""

    def test_scaled_coordinates(self):
        c = ScaledCoords.from_physical(0.1, 1.0 / 3.0 - 0.01)
        assert c.lambda_p == 0.1
        assert c.Delta == pytest.approx(-0.01)
        assert c.eps_p == 0.0
        with pytest.raises(ValueError):
            ScaledCoords.from_physical(0.1, 0.3, alpha=0.0)

    def test_shifts_undriven(self):
        assert three_photon_shifts(0.0, 0.3, 0.5) == (0.0, 0.0, 0j)

    def test_shifts_leading_order(self):
        delta_a, delta_b, u = three_photon_shifts(0.01, 1.0 / 3.0, 0.5)
        assert delta_a == pytest.approx(-9e-4 / 4, rel=1e-3)
        assert delta_b == pytest.approx(9e-4 / 4, rel=1e-3)
        assert u == pytest.approx(9e-6j / 4)

    def test_window_in_delta(self):
        lo, hi = three_photon_window_delta(0.1)
        assert lo == pytest.approx(-0.016953, abs=1e-5)
        assert hi == pytest.approx(-0.013873, abs=1e-5)

    def test_window_near_leading_order_edges(self):
        """Leading-order edges -0.0165 / -0.0135 move by less than 20% of the width."""
        lo, hi = three_photon_window_delta(0.1)
        assert abs(lo + 0.0165) < 0.2 * 3e-3
        assert abs(hi + 0.0135) < 0.2 * 3e-3

    def test_window_undriven(self):
        assert three_photon_window_delta(0.0) is NO_WINDOW

    def test_boundary_no_window_above_resonance(self):
        assert three_photon_boundary(0.34) is NO_WINDOW
        assert three_photon_boundary(1.0 / 3.0) is NO_WINDOW

    def test_boundary_brackets_line(self):
        delta = -0.015
        lo, hi = three_photon_boundary(1.0 / 3.0 + delta)
        lam_line = math.sqrt(-2.0 * delta / 3.0)
        assert 0 < lo < lam_line < hi

    def test_boundary_consistent_with_delta_edges(self):
        """lambda = 0.1 lies on the boundary at both Delta edges."""
        d_lo, d_hi = three_photon_window_delta(0.1)
        assert three_photon_boundary(1.0 / 3.0 + d_lo)[0] == pytest.approx(0.1, abs=1e-7)
        assert three_photon_boundary(1.0 / 3.0 + d_hi)[1] == pytest.approx(0.1, abs=1e-7)

    def test_edges_collapse_onto_line(self):
        delta = -0.0015
        lo, hi = three_photon_boundary(1.0 / 3.0 + delta)
        lam_line = math.sqrt(-2.0 * delta / 3.0)
        assert abs(0.5 * (lo + hi) - lam_line) / lam_line < lam_line

    def test_quasienergy_phases(self):
        inside = three_photon_quasienergy(0.1, 1.0 / 3.0 - 0.0155)
        outside = three_photon_quasienergy(0.05, 1.0 / 3.0 + 0.01)
        assert inside.imag > 0
        assert outside.imag == 0.0
        # the pair sits at 3 omega / 2, next to the shifted |up 0> level
        assert abs(inside.real - 1.5 * (1.0 / 3.0 - 0.0155)) < 0.002


class TestLimits:
    """Low- and high-frequency limits."""

    def test_low_frequency_threshold(self):
        assert low_freq_threshold() == 0.25
        assert low_freq_threshold(2.0) == 0.5

    def test_static_quasienergies(self):
        real_pair = static_quasienergies(0.2)
        assert real_pair[0] == pytest.approx(0.3)
        complex_pair = static_quasienergies(0.3)
        assert complex_pair[0] == pytest.approx(0.5j * math.sqrt(0.44))
        H = np.array([[0.5, 0.6j], [0.6j, -0.5]])
        assert sorted(np.linalg.eigvals(H), key=lambda z: z.imag) == pytest.approx(
            sorted(complex_pair, key=lambda z: z.imag)
        )

    def test_high_frequency_boundary(self):
        lam = high_freq_boundary(2.0)
        assert lam == pytest.approx(0.906, abs=0.005)
        assert special.i0(4.0 * lam / 2.0) == pytest.approx(2.0, rel=1e-9)

    def test_high_frequency_monotone(self):
        values = [high_freq_boundary(w) for w in (1.2, 1.5, 2.0, 4.0, 8.0)]
        assert values == sorted(values)

    def test_high_frequency_domain(self):
        assert high_freq_boundary(1.0) == 0.0
        with pytest.raises(DomainError):
            high_freq_boundary(0.5)

    def test_high_frequency_shift(self):
        assert high_freq_shift(0.0, 3.0) == 0.5
        assert high_freq_shift(0.5, 2.0) == pytest.approx(0.5 * special.i0(1.0), rel=1e-12)
