"""
Unit tests for the truncated Floquet matrix.

Tests that:
- The matrix has the documented layout and PT symmetry
- The two parity chains are uncoupled and cover the basis
- The central quasienergies agree with the monodromy oracle
- Wannier-Stark ladder states solve the omega0 = 0 chain
- The spectrum is closed under conjugation and, away from the truncation
  edges, under eps -> eps + omega
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptfloquet.config import Settings
from ptfloquet.core.errors import NotConverged
from ptfloquet.core.model import DriveType, ModelParams
from ptfloquet.dynamics.propagator import monodromy, quasienergies
from ptfloquet.floquet.matrix import (
    Spin,
    build_floquet,
    central_quasienergies,
    dump_matrix,
    floquet_quasienergies,
    interior_mask,
    parity_chains,
    scan_quasienergies,
    scan_truncation,
    spectrum,
    wannier_stark_chain,
)
from ptfloquet.perturbation.limits import wannier_stark_state


# eigenvalues next to an exceptional point are only accurate to ~sqrt(machine eps)
EIG_TOL = 1e-6

DRIVES = st.sampled_from(["anti_hermitian", "hermitian"])


def _pair_error(a, b):
    straight = max(a[0].distance(b[0]), a[1].distance(b[1]))
    crossed = max(a[0].distance(b[1]), a[1].distance(b[0]))
    return min(straight, crossed)


def _params(omega, lam, drive="anti_hermitian"):
    return ModelParams(omega0=1.0, omega=omega, lam=lam, drive=DriveType.parse(drive))


def _nearest(values, target):
    return float(np.min(np.abs(values - target)))


class TestBuildFloquet:
    """Tests for the matrix layout."""

    def test_dimension_and_diagonal(self, make_params):
        m = build_floquet(make_params(omega=1.0, lam=0.0), N=3)
        assert m.dim == 14
        assert m.entries.shape == (14, 14)
        expected = [s * 0.5 + n for n in range(-3, 4) for s in (1, -1)]
        np.testing.assert_allclose(np.diag(m.entries).real, expected)

    def test_couplings(self, make_params):
        m = build_floquet(make_params(omega=0.4, lam=0.1), N=3)
        a = m.index(Spin.UP, 0)
        assert m.entries[a, m.index(Spin.DOWN, 1)] == pytest.approx(0.1j)
        assert m.entries[a, m.index(Spin.DOWN, -1)] == pytest.approx(0.1j)
        assert m.entries[a, m.index(Spin.UP, 1)] == 0
        assert m.entries[a, m.index(Spin.DOWN, 0)] == 0

    def test_symmetric_not_hermitian(self, make_params):
        m = build_floquet(make_params(omega=0.4, lam=0.1), N=4)
        np.testing.assert_array_equal(m.entries, m.entries.T)
        assert not np.allclose(m.entries, m.entries.conj().T)

    def test_pt_residual_zero(self, make_params):
        assert build_floquet(make_params(omega=0.7, lam=0.3), N=6).pt_residual() == 0.0

    def test_index_label_inverse(self, make_params):
        m = build_floquet(make_params(omega=0.7, lam=0.3), N=5)
        for k in range(m.dim):
            spin, n = m.label(k)
            assert m.index(spin, n) == k
        with pytest.raises(IndexError):
            m.index(Spin.UP, 6)

    def test_small_truncation_rejected(self, make_params):
        with pytest.raises(ValueError):
            build_floquet(make_params(), N=1)


class TestSpectrum:
    def test_sorted(self, make_params):
        eigs = spectrum(build_floquet(make_params(omega=0.9, lam=0.1), N=8))
        assert len(eigs) == 34
        assert np.all(np.diff(eigs.real) >= 0)

    @pytest.mark.parametrize("omega,lam", [(0.9, 0.1), (1.0, 0.1), (1.3, 0.2)])
    def test_matches_monodromy(self, make_params, integrator, omega, lam):
        p = make_params(omega=omega, lam=lam)
        from_matrix = floquet_quasienergies(p, N=30)
        from_time = quasienergies(monodromy(p, integrator))
        assert _pair_error(from_matrix, from_time) < 1e-6

    def test_hermitian_matches_monodromy(self, make_params, integrator):
        p = make_params(omega=0.8, lam=0.2, drive="hermitian")
        assert _pair_error(floquet_quasienergies(p), quasienergies(monodromy(p, integrator))) < 1e-6

    def test_low_frequency_broken_point(self, make_params, integrator):
        p = make_params(omega=0.1, lam=0.3)
        from_matrix = floquet_quasienergies(p, N=30)
        assert _pair_error(from_matrix, quasienergies(monodromy(p, integrator))) < 1e-6
        assert max(q.im for q in from_matrix) > 1e-6

    def test_truncation_check_flags_small_matrix(self, make_params):
        p = make_params(omega=0.3, lam=0.8)
        with pytest.raises(NotConverged):
            central_quasienergies(spectrum(build_floquet(p, 6)), p, 6)

    def test_interior_mask(self, make_params):
        p = make_params(omega=1.0, lam=0.1)
        eigs = spectrum(build_floquet(p, 10))
        mask = interior_mask(eigs, p, 10)
        assert mask.sum() < len(eigs)
        assert np.all(np.abs(eigs[mask].real) <= 6.0)


class TestParityChains:
    """Tests for the sub-lattice decomposition."""

    def test_cover_basis_and_decouple(self, make_params):
        m = build_floquet(make_params(omega=0.6, lam=0.2), N=5)
        c1, c2 = parity_chains(m)
        assert sorted(c1.indices + c2.indices) == list(range(m.dim))
        assert not np.any(m.entries[np.ix_(c1.indices, c2.indices)])

    def test_chain_one_onsite(self, make_params):
        m = build_floquet(make_params(omega=0.6, lam=0.2), N=3)
        c1, _ = parity_chains(m)
        expected = [(-1) ** abs(k) * 0.5 + k * 0.6 for k in c1.sites]
        np.testing.assert_allclose(c1.onsite(), expected)
        assert c1.indices[c1.sites.index(0)] == m.index(Spin.UP, 0)

    def test_chain_is_ladder_plus_alternating_potential(self, make_params):
        m = build_floquet(make_params(omega=0.6, lam=0.2), N=4)
        c1, _ = parity_chains(m)
        alternating = np.diag([(-1) ** abs(k) * 0.5 for k in c1.sites])
        np.testing.assert_allclose(c1.matrix, wannier_stark_chain(0.2, 0.6, 4) + alternating)


class TestSpectralInvariants:
    """Properties of the truncated spectrum away from the truncation edges."""

    @settings(max_examples=25, deadline=None)
    @given(omega=st.floats(0.5, 1.5), lam=st.floats(0.0, 0.3), drive=DRIVES)
    def test_closed_under_conjugation(self, omega, lam, drive):
        eigs = spectrum(build_floquet(_params(omega, lam, drive), N=8))
        assert max(_nearest(eigs, e.conjugate()) for e in eigs) < EIG_TOL

    @settings(max_examples=15, deadline=None)
    @given(omega=st.floats(0.6, 1.5), lam=st.floats(0.0, 0.2), drive=DRIVES)
    def test_interior_shift_by_omega(self, omega, lam, drive):
        p = _params(omega, lam, drive)
        eigs = spectrum(build_floquet(p, N=24))
        inner = eigs[interior_mask(eigs, p, 24, margin=8)]
        assert inner.size > 0
        assert max(_nearest(eigs, e + omega) for e in inner) < EIG_TOL
        assert max(_nearest(eigs, e - omega) for e in inner) < EIG_TOL

    @settings(max_examples=25, deadline=None)
    @given(omega=st.floats(0.3, 1.5), lam=st.floats(0.0, 0.3), drive=DRIVES)
    def test_chains_partition_spectrum(self, omega, lam, drive):
        m = build_floquet(_params(omega, lam, drive), N=8)
        c1, c2 = parity_chains(m)
        union = np.concatenate([np.linalg.eigvals(c1.matrix), np.linalg.eigvals(c2.matrix)])
        full = spectrum(m)
        assert union.size == full.size
        assert max(_nearest(full, e) for e in union) < EIG_TOL
        assert max(_nearest(union, e) for e in full) < EIG_TOL

    @pytest.mark.parametrize("lam,broken", [(0.03, False), (0.08, True)])
    def test_interior_eigenvalues_break_together(self, make_params, lam, broken):
        """Either side of the single-photon boundary at omega = 0.9 (lambda ~ 0.05)."""
        p = make_params(omega=0.9, lam=lam)
        eigs = spectrum(build_floquet(p, N=20))
        inner = eigs[interior_mask(eigs, p, 20, margin=6)]
        complex_fraction = float(np.mean(np.abs(inner.imag) > 1e-6))
        assert complex_fraction == (1.0 if broken else 0.0)


class TestTruncationSettings:
    """Truncation and convergence tolerance come from the settings."""

    @pytest.fixture
    def use_settings(self, monkeypatch):
        def _apply(**overrides):
            custom = Settings(_env_file=None, **overrides)
            monkeypatch.setattr("ptfloquet.floquet.matrix.get_settings", lambda: custom)

        return _apply

    def test_scan_truncation_by_lambda(self, use_settings, make_params):
        use_settings()
        assert scan_truncation(make_params(omega=0.9, lam=0.1)) == 15
        assert scan_truncation(make_params(omega=0.9, lam=0.2)) == 30

    def test_scan_quasienergies_at_small_lambda(self, use_settings, make_params):
        use_settings()
        p = make_params(omega=0.9, lam=0.05)
        pair, N = scan_quasienergies(p)
        assert N == 15
        assert _pair_error(pair, floquet_quasienergies(p, N=30)) < 1e-8

    def test_scan_quasienergies_falls_back(self, use_settings, make_params):
        use_settings(scan_truncation=6)
        _, N = scan_quasienergies(make_params(omega=0.3, lam=0.1))
        assert N == 30

    def test_default_truncation_from_settings(self, use_settings, make_params):
        use_settings(truncation=12)
        p = make_params(omega=0.9, lam=0.05)
        assert _pair_error(floquet_quasienergies(p), floquet_quasienergies(p, N=12)) == 0.0

    def test_convergence_tol_from_settings(self, use_settings, make_params):
        use_settings(convergence_tol=10.0)
        p = make_params(omega=0.3, lam=0.8)
        central_quasienergies(spectrum(build_floquet(p, 6)), p, 6)


class TestWannierStark:
    @pytest.mark.parametrize("drive", ["hermitian", "anti_hermitian"])
    @pytest.mark.parametrize("n", [-2, 0, 3])
    def test_ladder_eigenstate(self, drive, n):
        H0 = wannier_stark_chain(0.3, 1.0, 30, drive)
        phi = wannier_stark_state(n, 0.3, 1.0, 30, drive)
        residual = H0 @ phi - n * 1.0 * phi
        assert np.linalg.norm(residual) < 1e-8
        assert np.linalg.norm(phi) > 0.5

    def test_invalid_length(self):
        with pytest.raises(ValueError):
            wannier_stark_state(0, 0.3, 1.0, 0)


class TestDump:
    def test_layout(self, make_params):
        m = build_floquet(make_params(omega=1.0, lam=0.25), N=2)
        lines = dump_matrix(m).splitlines()
        assert len(lines) == m.dim
        assert all(len(line.split(" ")) == m.dim for line in lines)
        assert lines[0].split(" ")[0] == "-1.5,0.0"
        assert lines[0].split(" ")[3] == "0.0,0.25"

    def test_deterministic(self, make_params):
        p = make_params(omega=0.35, lam=0.07)
        assert dump_matrix(build_floquet(p, 4)) == dump_matrix(build_floquet(p, 4))
