"""
Unit tests for the scan layer: parallel map, grids, boundary tracing and
window search. Everything here runs on small grids; the full-size
reproductions live in tests/integration.
"""

import math

import numpy as np
import pytest

from ptfloquet.core.errors import NO_WINDOW, DomainError, ResolutionTooCoarse
from ptfloquet.core.model import ModelParams, PhaseLabel
from ptfloquet.dynamics.propagator import classify
from ptfloquet.perturbation.multiphoton import ResonanceOrder
from ptfloquet.scan.boundary import BoundaryPoint, boundary_in_lambda
from ptfloquet.scan.grid import GridResult, im_eps_curve, phase_grid
from ptfloquet.scan.parallel import default_threshold, parallel_map
from ptfloquet.scan.window import (
    ResonanceWindow,
    find_window,
    window_discriminant,
    window_record,
)


class TestParallelMap:
    @pytest.mark.parametrize("threads", [1, 2])
    def test_preserves_order(self, threads):
        assert parallel_map(abs, [-3, 1, -2, 5, -8], threads) == [3, 1, 2, 5, 8]

    def test_empty(self):
        assert parallel_map(abs, [], 4) == []

    def test_default_threshold(self):
        assert default_threshold(1.0) == pytest.approx(1e-8)
        assert default_threshold(2.0) == pytest.approx(2e-8)
        assert default_threshold(1.0, tight=True) == pytest.approx(1e-9)


class TestGridResult:
    def test_labels_follow_threshold(self):
        grid = GridResult(
            omegas=np.array([0.9, 1.0]),
            lambdas=np.array([0.0, 0.1]),
            im_eps=np.array([[0.0, 1e-9], [2e-8, 0.1]]),
            threshold=1e-8,
        )
        assert grid.labels.tolist() == [["symmetric", "symmetric"], ["broken", "broken"]]

    def test_frame_is_omega_major(self):
        grid = GridResult(
            omegas=np.array([0.9, 1.0]),
            lambdas=np.array([0.0, 0.05, 0.1]),
            im_eps=np.arange(6, dtype=float).reshape(2, 3),
            threshold=2.5,
        )
        frame = grid.to_frame()
        assert list(frame.columns) == ["omega", "lambda", "im_eps", "phase"]
        assert frame["omega"].tolist() == [0.9, 0.9, 0.9, 1.0, 1.0, 1.0]
        assert frame["lambda"].tolist() == [0.0, 0.05, 0.1, 0.0, 0.05, 0.1]
        assert frame["phase"].tolist()[2:4] == ["symmetric", "broken"]


class TestPhaseGrid:
    """Tests for phase_grid on tiny grids."""

    def test_small_grid(self, integrator):
        # omega = omega0 / k is avoided: the undriven multipliers are degenerate there
        grid = phase_grid((0.95, 1.05), (0.0, 0.1), 2, 3, cfg=integrator)
        assert grid.im_eps.shape == (2, 3)
        assert np.all(grid.im_eps >= 0)
        assert not grid.broken[:, 0].any()
        assert grid.broken[:, 2].all()

    def test_threads_do_not_change_result(self, integrator):
        serial = phase_grid((0.9, 1.1), (0.05, 0.1), 2, 2, cfg=integrator, threads=1)
        threaded = phase_grid((0.9, 1.1), (0.05, 0.1), 2, 2, cfg=integrator, threads=2)
        np.testing.assert_array_equal(serial.im_eps, threaded.im_eps)

    @pytest.mark.parametrize(
        "omega_range,lambda_range,n_omega,n_lambda",
        [
            ((0.9, 0.9), (0.0, 0.1), 3, 3),
            ((0.9, 1.1), (0.1, 0.0), 3, 3),
            ((0.0, 1.1), (0.0, 0.1), 3, 3),
            ((0.9, 1.1), (-0.1, 0.1), 3, 3),
            ((0.9, 1.1), (0.0, 0.1), 1, 3),
        ],
    )
    def test_rejects_invalid_ranges(self, omega_range, lambda_range, n_omega, n_lambda):
        with pytest.raises(ValueError):
            phase_grid(omega_range, lambda_range, n_omega, n_lambda)

    def test_curve_undriven(self, integrator):
        curve = im_eps_curve(0.0, (0.7, 1.3), 4, cfg=integrator)
        assert curve.omegas.tolist() == pytest.approx([0.7, 0.9, 1.1, 1.3])
        assert np.all(curve.im_eps < 1e-9)
        assert list(curve.to_frame().columns) == ["omega", "im_eps"]


class TestBoundaryInLambda:
    @pytest.mark.parametrize(
        "kwargs",
        [{"grid_points": 49}, {"lambda_max": 0.0}, {"tol": 0.0}],
    )
    def test_validation(self, kwargs):
        args = {"omega": 1.2, "lambda_max": 0.3, "grid_points": 60, "tol": 1e-5}
        args.update(kwargs)
        with pytest.raises(ValueError):
            boundary_in_lambda(**args)

    def test_bracket_ends_have_different_phases(self, integrator):
        points = boundary_in_lambda(1.2, 0.3, grid_points=50, tol=1e-3, cfg=integrator)
        assert len(points) == 1
        (point,) = points
        assert point.breaks
        assert point.bracket_width <= 1e-3
        base = ModelParams(omega0=1.0, omega=1.2)
        lo = point.lambda_star - 0.5 * point.bracket_width
        hi = point.lambda_star + 0.5 * point.bracket_width
        assert classify(base.with_(lam=lo), integrator) is PhaseLabel.SYMMETRIC
        assert classify(base.with_(lam=hi), integrator) is PhaseLabel.BROKEN

    def test_point_to_dict(self):
        point = BoundaryPoint(omega=1.2, lambda_star=0.105, bracket_width=1e-6)
        assert point.to_dict() == {
            "omega": 1.2,
            "lambda_star": 0.105,
            "bracket_width": 1e-6,
            "breaks": True,
        }


class TestResonanceWindow:
    def test_invariants(self):
        order = ResonanceOrder(1)
        with pytest.raises(ValueError):
            ResonanceWindow(order, 0.32, 0.31, 0.315, 1e-3, 0.1)
        with pytest.raises(ValueError):
            ResonanceWindow(order, 0.31, 0.32, 0.33, 1e-3, 0.1)
        with pytest.raises(ValueError):
            ResonanceWindow(order, 0.31, 0.32, 0.315, 0.0, 0.1)

    def test_to_dict(self):
        window = ResonanceWindow(ResonanceOrder(1), 0.316, 0.319, 0.3175, 3e-3, 0.1)
        record = window.to_dict()
        assert record["n"] == 1
        assert record["width"] == pytest.approx(0.003)
        assert record["lambda"] == 0.1


class TestWindowDiscriminant:
    def test_sign_inside_and_outside(self, make_params, integrator):
        centre = 1.0 / 3.0 - 1.5 * 0.01
        assert window_discriminant(make_params(omega=centre, lam=0.1), integrator) < 0
        assert window_discriminant(make_params(omega=0.25, lam=0.1), integrator) > 0

    def test_single_photon_window_is_at_zone_edge(self, resonant_anti, integrator):
        """|up 0> and |down 1> also meet at eps = omega/2."""
        assert window_discriminant(resonant_anti, integrator) < 0


class TestFindWindow:
    """Fast paths of find_window (no integration needed)."""

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            find_window(0, 0.1)

    def test_undriven(self):
        assert find_window(1, 0.0) is NO_WINDOW

    def test_strong_drive_out_of_domain(self):
        with pytest.raises(DomainError):
            find_window(1, 0.4)

    def test_coarse_grid_rejected(self):
        with pytest.raises(ResolutionTooCoarse):
            find_window(1, 0.1, n_coarse=5)

    def test_record_for_undriven(self):
        record = window_record(2, 0.0)
        assert record["status"] == "no_window"
        assert record["measured"] is None
        assert record["predicted"]["width"] == 0.0
        assert record["predicted"]["omega_res"] == pytest.approx(0.2)

    def test_record_for_coarse_grid(self):
        record = window_record(1, 0.1, n_coarse=5)
        assert record["status"] == "resolution_too_coarse"
        assert math.isclose(record["predicted"]["width"], 4.2623e-3, rel_tol=1e-3)
