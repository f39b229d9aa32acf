"""
Figure stages: each regenerates the data behind one phase-diagram figure.

    fig1  phase diagram around the single-photon resonance + NLO boundary and shift
    fig2  multi-photon tongues omega ~ omega0/(2n+1) + resonance lines + 3-photon edges
    fig3  max Im(eps) versus omega at lambda = 0.2
    fig4  measured multi-photon windows next to the rough estimates
    fig5  trajectories in the single-photon and three-photon windows
    fig6  zoomed-out phase diagram + high- and low-frequency boundaries

All ranges are in units of omega0. Passing quick=True in the options shrinks
every grid for smoke runs.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import structlog

from ptfloquet.core.errors import DomainError, NoWindow, PTFloquetError
from ptfloquet.core.model import DriveType, ModelParams
from ptfloquet.dynamics.trajectory import evolve_series, growth_rate
from ptfloquet.output import write_records, write_table
from ptfloquet.perturbation.limits import high_freq_boundary, low_freq_threshold
from ptfloquet.perturbation.multiphoton import multiphoton_line, multiphoton_line_inverse
from ptfloquet.perturbation.single_photon import bloch_siegert, single_photon_boundary
from ptfloquet.perturbation.three_photon import three_photon_boundary
from ptfloquet.reports.runtime import StageContext, StageResult, utc_now
from ptfloquet.reports.stages import StageDefinition, StageRegistry
from ptfloquet.scan.grid import im_eps_curve, phase_grid
from ptfloquet.scan.window import find_window, window_record

logger = structlog.get_logger(__name__)

StageBody = Callable[[StageContext], tuple[list[Path], dict[str, Any]]]


def _size(ctx: StageContext, full: int, quick: int) -> int:
    if "grid" in ctx.options:
        return int(ctx.options["grid"])
    return quick if ctx.options.get("quick") else full


def _write(ctx: StageContext, frame: pd.DataFrame, tag: str) -> Path:
    path = ctx.data_path(".csv", tag)
    write_table(frame, path, omega0=ctx.omega0, command=f"reproduce:{ctx.stage_name}")
    return path


def _grid_stage(
    ctx: StageContext, omega_range: tuple[float, float], lambda_range: tuple[float, float], n: int
) -> tuple[Path, dict[str, Any]]:
    w0 = ctx.omega0
    grid = phase_grid(
        (omega_range[0] * w0, omega_range[1] * w0),
        (lambda_range[0] * w0, lambda_range[1] * w0),
        n,
        n,
        omega0=w0,
        threads=ctx.threads,
    )
    path = _write(ctx, grid.to_frame(), "grid")
    return path, {"points": int(grid.im_eps.size), "broken": int(grid.broken.sum())}


def _fig1(ctx: StageContext) -> tuple[list[Path], dict[str, Any]]:
    w0 = ctx.omega0
    grid_path, metrics = _grid_stage(ctx, (0.75, 1.4), (0.0, 0.25), _size(ctx, 120, 16))
    omegas = np.linspace(0.75, 1.4, 131) * w0
    lambdas = np.linspace(0.0, 0.25, 51) * w0
    overlay = pd.concat(
        [
            pd.DataFrame(
                {
                    "omega": omegas,
                    "lambda": [single_photon_boundary(w, w0, "next") for w in omegas],
                    "curve": "nlo_boundary",
                }
            ),
            pd.DataFrame(
                {
                    "omega": [bloch_siegert(lam, w0) for lam in lambdas],
                    "lambda": lambdas,
                    "curve": "bloch_siegert",
                }
            ),
        ],
        ignore_index=True,
    )
    return [grid_path, _write(ctx, overlay, "overlay")], metrics


def _fig2(ctx: StageContext) -> tuple[list[Path], dict[str, Any]]:
    w0 = ctx.omega0
    grid_path, metrics = _grid_stage(ctx, (0.1, 0.5), (0.0, 0.25), _size(ctx, 160, 16))
    frames = []
    for n in (1, 2, 3, 4):
        omegas = np.linspace(0.1 * w0, w0 / (2 * n + 1), 60)
        lam = [multiphoton_line(n, w, w0) for w in omegas]
        frames.append(pd.DataFrame({"omega": omegas, "lambda": lam, "curve": f"line_n{n}"}))
    edges = []
    for delta in np.linspace(-0.05, -0.0005, 60) * w0:
        omega = w0 / 3.0 + delta
        found = three_photon_boundary(omega, w0)
        if isinstance(found, NoWindow):
            continue
        edges.append((omega, found[0], "three_photon_lo"))
        edges.append((omega, found[1], "three_photon_hi"))
    frames.append(pd.DataFrame(edges, columns=["omega", "lambda", "curve"]))
    overlay = pd.concat(frames, ignore_index=True)
    return [grid_path, _write(ctx, overlay, "overlay")], metrics


def _fig3(ctx: StageContext) -> tuple[list[Path], dict[str, Any]]:
    w0 = ctx.omega0
    curve = im_eps_curve(
        0.2 * w0, (0.1 * w0, 1.6 * w0), _size(ctx, 600, 40), omega0=w0, threads=ctx.threads
    )
    peak = int(np.argmax(curve.im_eps))
    metrics = {
        "peak_omega": float(curve.omegas[peak]),
        "peak_im_eps": float(curve.im_eps[peak]),
        "bloch_siegert": bloch_siegert(0.2 * w0, w0),
    }
    return [_write(ctx, curve.to_frame(), "curve")], metrics


def _fig4(ctx: StageContext) -> tuple[list[Path], dict[str, Any]]:
    orders = ctx.options.get("orders") or ([1] if ctx.options.get("quick") else [1, 2, 3])
    lam = 0.1 * ctx.omega0
    records = [window_record(n, lam, omega0=ctx.omega0, threads=ctx.threads) for n in orders]
    path = ctx.data_path(".json", "windows")
    write_records(records, path, omega0=ctx.omega0, command=f"reproduce:{ctx.stage_name}")
    statuses = {f"n{r['n']}": r["status"] for r in records}
    return [path], statuses


def _fig5(ctx: StageContext) -> tuple[list[Path], dict[str, Any]]:
    w0 = ctx.omega0
    lam = 0.1 * w0
    samples = _size(ctx, 2001, 201)
    single = ModelParams(omega0=w0, omega=bloch_siegert(lam, w0), lam=lam)
    window = find_window(1, lam, omega0=w0, threads=ctx.threads)
    omega3 = (
        multiphoton_line_inverse(1, lam, w0) if isinstance(window, NoWindow) else window.omega_res
    )
    three = ModelParams(omega0=w0, omega=omega3, lam=lam)

    paths, metrics = [], {}
    for tag, p, t_max in (("single", single, 60.0 / w0), ("three", three, 1500.0 / w0)):
        series = evolve_series(p, t_max=t_max, n_samples=samples)
        paths.append(_write(ctx, series.to_frame(), tag))
        metrics[f"{tag}_omega"] = p.omega
        metrics[f"{tag}_growth_rate"] = growth_rate(series)
    return paths, metrics


def _fig6(ctx: StageContext) -> tuple[list[Path], dict[str, Any]]:
    w0 = ctx.omega0
    grid_path, metrics = _grid_stage(ctx, (0.05, 8.0), (0.0, 2.5), _size(ctx, 100, 12))
    omegas = np.linspace(1.2, 8.0, 69) * w0
    rows = []
    for w in omegas:
        try:
            rows.append((w, high_freq_boundary(w, w0), "high_freq"))
        except DomainError:
            continue
    rows += [(w, low_freq_threshold(w0), "low_freq") for w in np.linspace(0.05, 0.5, 10) * w0]
    overlay = pd.DataFrame(rows, columns=["omega", "lambda", "curve"])
    return [grid_path, _write(ctx, overlay, "overlay")], metrics


def _as_stage(body: StageBody) -> Callable[[StageContext], StageResult]:
    def _runner(ctx: StageContext) -> StageResult:
        started_at = utc_now()
        try:
            files, metrics = body(ctx)
        except PTFloquetError as exc:
            logger.error("stage_failed", stage=ctx.stage_name, error=str(exc))
            return StageResult.failed(ctx, started_at, str(exc))
        return StageResult.succeeded(ctx, started_at, files, metrics)

    return _runner


def build_registry() -> StageRegistry:
    registry = StageRegistry()
    for name, body, description, outputs in (
        ("fig1", _fig1, "Phase diagram near omega0 with the NLO boundary", ("grid", "overlay")),
        ("fig2", _fig2, "Multi-photon tongues with lowest-order lines", ("grid", "overlay")),
        ("fig3", _fig3, "max Im(eps) versus omega at lambda = 0.2", ("curve",)),
        ("fig4", _fig4, "Multi-photon windows, measured and estimated", ("windows",)),
        ("fig5", _fig5, "Trajectories in the 1- and 3-photon windows", ("single", "three")),
        ("fig6", _fig6, "Zoomed-out phase diagram with limit boundaries", ("grid", "overlay")),
    ):
        registry.register(
            StageDefinition(
                name=name, runner=_as_stage(body), description=description, outputs=outputs
            )
        )
    return registry


def run_reproduction(
    output_dir: Path,
    *,
    include: list[str] | None = None,
    omega0: float = 1.0,
    threads: int = 1,
    options: dict[str, Any] | None = None,
    continue_on_error: bool = True,
) -> dict[str, Any]:
    """
    Run the selected figure stages and return the run summary.

    The summary (also written to <output_dir>/summary.json by the callers)
    holds one entry per stage and the overall status. It carries no
    wall-clock data, so identical arguments give an identical summary;
    timings go to the log.
    """
    registry = build_registry()
    stages = registry.resolve(include=include)
    opts = dict(options or {})
    run_id = run_fingerprint([s.name for s in stages], omega0, opts)
    started_at = utc_now()
    output_dir.mkdir(parents=True, exist_ok=True)
    logger.info("run_started", run_id=run_id, stages=[s.name for s in stages])

    summary: dict[str, Any] = {
        "run_id": run_id,
        "omega0": omega0,
        "stages": [],
        "status": "running",
    }
    for stage in stages:
        ctx = StageContext(
            run_id=run_id,
            stage_name=stage.name,
            started_at=utc_now(),
            output_dir=output_dir,
            omega0=omega0,
            threads=threads,
            options=dict(opts),
        )
        logger.info("stage_started", stage=stage.name)
        result = stage.runner(ctx)
        summary["stages"].append(result.to_dict(timing=False))
        logger.info(
            "stage_finished", stage=stage.name, status=result.status, duration_s=result.duration_s
        )
        if result.status == "failed" and not continue_on_error:
            break

    failed = any(s["status"] == "failed" for s in summary["stages"])
    summary["status"] = "failed" if failed else "success"
    logger.info(
        "run_finished",
        run_id=run_id,
        status=summary["status"],
        duration_s=(utc_now() - started_at).total_seconds(),
    )
    return summary


def run_fingerprint(stages: list[str], omega0: float, options: dict[str, Any]) -> str:
    """Stable run id: the first 12 hex digits of a hash over the run inputs."""
    key = json.dumps(
        {"stages": stages, "omega0": omega0, "options": options}, sort_keys=True, default=str
    )
    return hashlib.sha256(key.encode("utf-8")).hexdigest()[:12]
