"""
Flat-file emission for the command line: CSV and JSON with a schema header,
plus an optional gnuplot companion script.

Files carry no timestamps, so identical runs give byte-identical output.
"""

from __future__ import annotations

import io
import json
import math
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any, Literal

import pandas as pd

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.12g"

OutputFormat = Literal["csv", "json"]


def _header_lines(omega0: float, command: str) -> list[str]:
    return [
        f"# schema={SCHEMA_VERSION}",
        f"# units=omega0={omega0:.12g}",
        f"# command={command}",
    ]


def _ensure_dir(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    _ensure_dir(path)
    path.write_text(text, encoding="utf-8")


def render_csv(frame: pd.DataFrame, *, omega0: float, command: str) -> str:
    """Header comments followed by the frame, ',' delimited, '.' decimal, '\\n' lines."""
    buf = io.StringIO()
    buf.write("\n".join(_header_lines(omega0, command)) + "\n")
    frame.to_csv(buf, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return buf.getvalue()


def _clean(value: Any) -> Any:
    """JSON-safe copy: numpy scalars to Python, non-finite floats to None."""
    if isinstance(value, Mapping):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if hasattr(value, "item") and callable(value.item):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_json(records: Sequence[Mapping[str, Any]], *, omega0: float, command: str) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "units": {"omega0": omega0},
        "command": command,
        "records": _clean(list(records)),
    }
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_table(
    frame: pd.DataFrame,
    path: Path | None,
    *,
    fmt: OutputFormat = "csv",
    omega0: float,
    command: str,
) -> None:
    """Write a table as CSV, or as JSON records, to path (stdout if None)."""
    if fmt == "json":
        text = render_json(frame.to_dict(orient="records"), omega0=omega0, command=command)
    else:
        text = render_csv(frame, omega0=omega0, command=command)
    _emit(text, path)


def write_records(
    records: Sequence[Mapping[str, Any]],
    path: Path | None,
    *,
    fmt: OutputFormat = "json",
    omega0: float,
    command: str,
) -> None:
    """Write nested records as JSON, or flattened (dotted columns) as CSV."""
    if fmt == "csv":
        frame = pd.json_normalize([_clean(r) for r in records], sep=".")
        _emit(render_csv(frame, omega0=omega0, command=command), path)
    else:
        _emit(render_json(records, omega0=omega0, command=command), path)


def gnuplot_script(data_path: Path, columns: Sequence[str], kind: str) -> str:
    """
    Companion gnuplot script for a CSV written by write_table.

    kind "map" draws a heat map of column 3 over columns 1 and 2; anything
    else draws column 2 (and further numeric columns) against column 1.
    """
    lines = [
        "set datafile separator ','",
        "set datafile commentschars '#'",
        "set key autotitle columnhead",
        f"set xlabel '{columns[0]}'",
    ]
    name = data_path.name
    if kind == "map" and len(columns) >= 3:
        lines += [
            f"set ylabel '{columns[1]}'",
            "set view map",
            f"splot '{name}' using 1:2:3 with points pointtype 5 pointsize 0.5 palette",
        ]
    else:
        ylabel = columns[1] if len(columns) > 1 else ""
        lines.append(f"set ylabel '{ylabel}'")
        series = ", ".join(
            f"'{name}' using 1:{i + 1} with linespoints" for i in range(1, len(columns))
        )
        lines.append(f"plot {series}")
    return "\n".join(lines) + "\n"


def write_gnuplot(data_path: Path, columns: Sequence[str], kind: str) -> Path:
    """Write <data_path>.gp next to the data and return its path."""
    script_path = data_path.with_name(data_path.name + ".gp")
    _ensure_dir(script_path)
    script_path.write_text(gnuplot_script(data_path, columns, kind), encoding="utf-8")
    return script_path
