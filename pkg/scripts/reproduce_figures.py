#!/usr/bin/env python3
"""
Regenerate the data behind every phase-diagram figure.

Usage:
    python scripts/reproduce_figures.py                       # all stages into data/
    python scripts/reproduce_figures.py --stages fig3,fig4
    python scripts/reproduce_figures.py --quick --threads 4   # small grids
    python scripts/reproduce_figures.py --metrics-json logs/reproduce.json
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from ptfloquet.config import settings
from ptfloquet.log import configure_logging
from ptfloquet.reports import build_registry, run_reproduction


def _write_json(path: Path, payload: dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Regenerate figure data sets.")
    parser.add_argument(
        "--stages",
        default=None,
        help="Comma-separated stage list. Default: all registered stages.",
    )
    parser.add_argument(
        "--skip-stages",
        default="",
        help="Comma-separated stage names to skip.",
    )
    parser.add_argument(
        "--output-dir",
        default=settings.output_dir,
        help="Directory for the CSV/JSON data files.",
    )
    parser.add_argument(
        "--omega0",
        type=float,
        default=1.0,
        help="Level splitting used as the unit of every range.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=settings.threads,
        help="Workers for the grid scans.",
    )
    parser.add_argument(
        "--quick",
        action="store_true",
        help="Small grids for a smoke run.",
    )
    parser.add_argument(
        "--fail-fast",
        action="store_true",
        help="Stop at the first failed stage.",
    )
    parser.add_argument(
        "--metrics-json",
        default=None,
        help="Also write the run summary JSON to this path.",
    )
    parser.add_argument(
        "--list",
        action="store_true",
        help="List the registered stages and exit.",
    )
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    configure_logging(settings.log_level, settings.log_format)

    registry = build_registry()
    if args.list:
        print("\n".join(registry.describe()))
        return 0

    skip = {s.strip() for s in args.skip_stages.split(",") if s.strip()}
    include = [s.strip() for s in args.stages.split(",")] if args.stages else registry.names()
    include = [name for name in include if name not in skip]

    output_dir = Path(args.output_dir)
    summary = run_reproduction(
        output_dir,
        include=include,
        omega0=args.omega0,
        threads=args.threads,
        options={"quick": args.quick},
        continue_on_error=not args.fail_fast,
    )
    _write_json(output_dir / "summary.json", summary)
    if args.metrics_json:
        _write_json(Path(args.metrics_json), summary)

    for stage in summary["stages"]:
        print(f"  {stage['stage_name']:5}: {stage['status']}")
    print(f"Reproduction {summary['run_id']} finished with status={summary['status']}")
    return 1 if summary["status"] == "failed" else 0


if __name__ == "__main__":
    raise SystemExit(main())
