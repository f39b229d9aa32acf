"""
Command-line interface.

    ptfloquet phase-diagram --omega 0.75:1.4:200 --lambda 0:0.25:200 -o fig1.csv
    ptfloquet boundary --method nlo --omega 0.8:1.3:100
    ptfloquet window --n 1,2,3 --lambda 0.1
    ptfloquet trajectory --omega 0.99 --lambda 0.1 --t-max 60
    ptfloquet spectrum --omega 0.1:1.6:300 --lambda 0.2
    ptfloquet reproduce --figures fig1,fig3 --output-dir data

Ranges are start:stop:count with both ends included and count >= 2. All
values are in the units of --omega0 (default 1). Exit codes: 0 success,
1 numerical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, Literal

import numpy as np
import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ptfloquet.config import get_settings
from ptfloquet.core.errors import DomainError, NoWindow, PTFloquetError
from ptfloquet.core.model import DriveType, ModelParams, TwoLevelState
from ptfloquet.dynamics.propagator import IntegratorConfig, monodromy, quasienergies
from ptfloquet.dynamics.trajectory import evolve_series
from ptfloquet.floquet.matrix import floquet_quasienergies, scan_quasienergies
from ptfloquet.log import configure_logging
from ptfloquet.output import write_gnuplot, write_records, write_table
from ptfloquet.perturbation.limits import high_freq_boundary, low_freq_threshold
from ptfloquet.perturbation.multiphoton import multiphoton_line
from ptfloquet.perturbation.single_photon import single_photon_boundary
from ptfloquet.perturbation.three_photon import three_photon_boundary
from ptfloquet.reports.figures import build_registry, run_reproduction
from ptfloquet.scan.boundary import boundary_in_lambda
from ptfloquet.scan.grid import phase_grid
from ptfloquet.scan.window import window_record

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

_METHOD_RE = re.compile(r"^(numeric|rwa|nlo|threephoton|highfreq|lowfreq|multiphoton:[1-9]\d*)$")


class Range(BaseModel):
    """Inclusive linear range start:stop:count."""

    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    count: int = Field(ge=2)

    @model_validator(mode="after")
    def _non_empty(self) -> Range:
        if not self.stop > self.start:
            raise ValueError(f"empty range {self.start}:{self.stop}")
        return self

    @classmethod
    def parse(cls, text: str) -> Range:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected start:stop:count, got {text!r}")
        return cls(start=float(parts[0]), stop=float(parts[1]), count=int(parts[2]))

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)

    @property
    def bounds(self) -> tuple[float, float]:
        return self.start, self.stop


def _orders(text: str) -> list[int]:
    orders = [int(part) for part in text.split(",") if part.strip()]
    if not orders or any(n < 1 for n in orders):
        raise ValueError(f"orders must be a comma-separated list of integers >= 1, got {text!r}")
    return orders


class RunConfig(BaseModel):
    """
    Validated options of one CLI run.

    Identical configs produce byte-identical data files.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: str
    omega0: float = Field(default=1.0, gt=0)
    drive: DriveType = DriveType.ANTI_HERMITIAN
    threads: int = Field(default=1, ge=1)
    fmt: Literal["csv", "json"] | None = None
    output: Path | None = None
    gnuplot: bool = False

    omega_range: Range | None = None
    lambda_range: Range | None = None
    omega: float | None = Field(default=None, gt=0)
    lam: float | None = Field(default=None, ge=0)

    method: str = "numeric"
    lambda_max: float = Field(default=0.3, gt=0)
    grid_points: int = Field(default=60, ge=50)
    tol: float = Field(default=1e-5, gt=0)

    orders: list[int] = Field(default_factory=lambda: [1])
    coarse: int = Field(default=21, ge=3)

    t_max: float = Field(default=100.0, gt=0)
    samples: int = Field(default=1001, ge=2)
    psi0: Literal["up", "down"] = "up"

    truncation: int | None = Field(default=None, ge=2)

    figures: list[str] | None = None
    output_dir: Path = Path("data")
    quick: bool = False

    @field_validator("method")
    @classmethod
    def validate_method(cls, v: str) -> str:
        key = v.strip().lower()
        if not _METHOD_RE.match(key):
            raise ValueError(
                "method must be numeric, rwa, nlo, multiphoton:<n>, threephoton, "
                "highfreq or lowfreq"
            )
        return key

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        values = {k: v for k, v in vars(args).items() if v is not None and k not in ("verbose",)}
        return cls(**values)

    def base_params(self) -> ModelParams:
        return ModelParams(omega0=self.omega0, omega=self.omega or self.omega0, drive=self.drive)


# =============================================================================
# Commands
# =============================================================================


def cmd_phase_diagram(cfg: RunConfig) -> pd.DataFrame:
    """Grid of max Im(eps): omega, lambda, im_eps, phase (omega-major)."""
    assert cfg.omega_range is not None and cfg.lambda_range is not None
    grid = phase_grid(
        cfg.omega_range.bounds,
        cfg.lambda_range.bounds,
        cfg.omega_range.count,
        cfg.lambda_range.count,
        omega0=cfg.omega0,
        drive=cfg.drive,
        threads=cfg.threads,
    )
    return grid.to_frame()


def _formula_rows(method: str, omega: float, omega0: float) -> list[tuple[float, float]]:
    if method in ("rwa", "nlo"):
        order = "lowest" if method == "rwa" else "next"
        return [(omega, single_photon_boundary(omega, omega0, order))]
    if method == "lowfreq":
        return [(omega, low_freq_threshold(omega0))]
    try:
        if method == "highfreq":
            return [(omega, high_freq_boundary(omega, omega0))]
        if method == "threephoton":
            found = three_photon_boundary(omega, omega0)
            return [] if isinstance(found, NoWindow) else [(omega, found[0]), (omega, found[1])]
        n = int(method.split(":", 1)[1])
        return [(omega, multiphoton_line(n, omega, omega0))]
    except DomainError:
        return []


def cmd_boundary(cfg: RunConfig) -> pd.DataFrame:
    """omega, lambda_star, method (+ bracket_width for the numeric method)."""
    assert cfg.omega_range is not None
    omegas = cfg.omega_range.values()
    if cfg.method == "numeric":
        rows = [
            {
                "omega": pt.omega,
                "lambda_star": pt.lambda_star,
                "method": cfg.method,
                "bracket_width": pt.bracket_width,
            }
            for w in omegas
            for pt in boundary_in_lambda(
                float(w),
                cfg.lambda_max,
                cfg.grid_points,
                cfg.tol,
                omega0=cfg.omega0,
                drive=cfg.drive,
                threads=cfg.threads,
            )
        ]
        columns = ["omega", "lambda_star", "method", "bracket_width"]
    else:
        rows = [
            {"omega": w, "lambda_star": lam, "method": cfg.method}
            for omega in omegas
            for w, lam in _formula_rows(cfg.method, float(omega), cfg.omega0)
        ]
        columns = ["omega", "lambda_star", "method"]
    return pd.DataFrame(rows, columns=columns)


def cmd_window(cfg: RunConfig) -> list[dict[str, Any]]:
    """One record per order: measured window, rough prediction, status."""
    lam = cfg.lam if cfg.lam is not None else 0.1 * cfg.omega0
    return [
        window_record(n, lam, omega0=cfg.omega0, n_coarse=cfg.coarse, threads=cfg.threads)
        for n in cfg.orders
    ]


def cmd_trajectory(cfg: RunConfig) -> pd.DataFrame:
    """t, occ_up, occ_down."""
    p = cfg.base_params().with_(lam=cfg.lam or 0.0)
    psi0 = TwoLevelState.up() if cfg.psi0 == "up" else TwoLevelState.down()
    return evolve_series(p, psi0, cfg.t_max, cfg.samples).to_frame()


def cmd_spectrum(cfg: RunConfig) -> pd.DataFrame:
    """omega, lambda, re, im, source for the monodromy and Floquet-matrix pairs."""
    assert cfg.omega_range is not None
    lam = cfg.lam or 0.0
    integrator = IntegratorConfig.from_settings()
    rows = []
    for w in cfg.omega_range.values():
        p = cfg.base_params().with_(omega=float(w), lam=lam)
        for q in quasienergies(monodromy(p, integrator)):
            rows.append((p.omega, lam, q.re, q.im, "monodromy"))
        if cfg.truncation is None:
            pair, N = scan_quasienergies(p)
        else:
            pair, N = floquet_quasienergies(p, cfg.truncation), cfg.truncation
        for q in pair:
            rows.append((p.omega, lam, q.re, q.im, f"floquet:{N}"))
    return pd.DataFrame(rows, columns=["omega", "lambda", "re", "im", "source"])


def cmd_reproduce(cfg: RunConfig) -> dict[str, Any]:
    """Regenerate figure data into output_dir and write summary.json there."""
    summary = run_reproduction(
        cfg.output_dir,
        include=cfg.figures,
        omega0=cfg.omega0,
        threads=cfg.threads,
        options={"quick": cfg.quick},
    )
    path = cfg.output_dir / "summary.json"
    path.write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    return summary


_TABLE_COMMANDS: dict[str, tuple[Callable[[RunConfig], pd.DataFrame], str]] = {
    "phase-diagram": (cmd_phase_diagram, "map"),
    "boundary": (cmd_boundary, "curve"),
    "trajectory": (cmd_trajectory, "curve"),
    "spectrum": (cmd_spectrum, "curve"),
}


def run(cfg: RunConfig) -> int:
    """Execute a validated config. Exceptions propagate to main()."""
    if cfg.command == "window":
        records = cmd_window(cfg)
        fmt = cfg.fmt or "json"
        write_records(records, cfg.output, fmt=fmt, omega0=cfg.omega0, command=cfg.command)
        return EXIT_OK
    if cfg.command == "reproduce":
        summary = cmd_reproduce(cfg)
        print(f"Reproduction {summary['run_id']} finished with status={summary['status']}")
        return EXIT_NUMERICAL if summary["status"] == "failed" else EXIT_OK

    handler, kind = _TABLE_COMMANDS[cfg.command]
    frame = handler(cfg)
    fmt = cfg.fmt or "csv"
    write_table(frame, cfg.output, fmt=fmt, omega0=cfg.omega0, command=cfg.command)
    if cfg.gnuplot:
        if cfg.output is None or fmt != "csv":
            logger.warning("gnuplot_skipped", reason="needs --output with csv format")
        else:
            numeric = [c for c in frame.columns if pd.api.types.is_numeric_dtype(frame[c])]
            write_gnuplot(cfg.output, numeric, kind)
    return EXIT_OK


# =============================================================================
# Argument parsing
# =============================================================================


def _common_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--omega0", type=float, default=1.0, help="Level splitting (unit).")
    common.add_argument(
        "--drive",
        type=DriveType.parse,
        default=DriveType.ANTI_HERMITIAN,
        help="hermitian or anti_hermitian (default).",
    )
    common.add_argument(
        "--threads", type=int, default=settings.threads, help="Workers for parallel scans."
    )
    common.add_argument(
        "--format",
        dest="fmt",
        choices=["csv", "json"],
        default=None,
        help="Output format (csv for tables, json for windows).",
    )
    common.add_argument("-o", "--output", type=Path, default=None, help="Output file (stdout).")
    common.add_argument(
        "--gnuplot", action="store_true", help="Also write <output>.gp next to a CSV."
    )
    common.add_argument("-v", "--verbose", action="store_true", help="DEBUG logging.")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="ptfloquet", description="PT phase diagrams of the driven two-level model."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase-diagram", parents=[common], help="max Im(eps) on a grid.")
    p.add_argument("--omega", dest="omega_range", type=Range.parse, required=True)
    p.add_argument("--lambda", dest="lambda_range", type=Range.parse, required=True)

    p = sub.add_parser("boundary", parents=[common], help="PT boundary lambda*(omega).")
    p.add_argument("--omega", dest="omega_range", type=Range.parse, required=True)
    p.add_argument(
        "--method",
        default="numeric",
        help="numeric, rwa, nlo, multiphoton:<n>, threephoton, highfreq or lowfreq.",
    )
    p.add_argument("--lambda-max", type=float, default=0.3, help="Numeric scan upper end.")
    p.add_argument("--grid-points", type=int, default=60, help="Numeric coarse grid (>= 50).")
    p.add_argument("--tol", type=float, default=1e-5, help="Numeric bisection tolerance.")

    p = sub.add_parser("window", parents=[common], help="Multi-photon resonance windows.")
    p.add_argument("--n", dest="orders", type=_orders, default=[1], help="Orders, e.g. 1,2,3.")
    p.add_argument("--lambda", dest="lam", type=float, default=0.1)
    p.add_argument("--coarse", type=int, default=21, help="Coarse edge grid points.")

    p = sub.add_parser("trajectory", parents=[common], help="Occupations versus time.")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--t-max", type=float, default=100.0)
    p.add_argument("--samples", type=int, default=1001)
    p.add_argument("--psi0", choices=["up", "down"], default="up")

    p = sub.add_parser("spectrum", parents=[common], help="Quasienergies from both oracles.")
    p.add_argument("--omega", dest="omega_range", type=Range.parse, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument(
        "--truncation",
        type=int,
        default=None,
        help="Floquet half-width N (default: scan truncation with fallback).",
    )

    p = sub.add_parser("reproduce", parents=[common], help="Regenerate all figure data.")
    p.add_argument(
        "--figures",
        type=lambda s: [x.strip() for x in s.split(",") if x.strip()],
        default=None,
        help="Comma-separated stages (default: all).",
    )
    p.add_argument("--output-dir", type=Path, default=Path(get_settings().output_dir))
    p.add_argument("--quick", action="store_true", help="Small grids for a smoke run.")
    p.add_argument("--list", action="store_true", help="List stages and exit.")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    settings = get_settings()
    configure_logging("DEBUG" if args.verbose else settings.log_level, settings.log_format)

    if args.command == "reproduce" and args.list:
        print("\n".join(build_registry().describe()))
        return EXIT_OK
    if hasattr(args, "list"):
        del args.list

    try:
        cfg = RunConfig.from_args(args)
        return run(cfg)
    except ValueError as exc:
        # pydantic ValidationError and DomainError are ValueErrors
        logger.error("usage_error", command=args.command, error=str(exc))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PTFloquetError as exc:
        logger.error("numerical_failure", command=args.command, error=str(exc))
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        logger.error("io_error", command=args.command, error=str(exc))
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
