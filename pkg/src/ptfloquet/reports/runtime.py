"""Shared runtime dataclasses for figure-reproduction stages."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Literal

StageStatus = Literal["success", "failed", "skipped"]


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(tzinfo=None)


def _relative(path: Path, root: Path) -> str:
    try:
        return path.relative_to(root).as_posix()
    except ValueError:
        return str(path)


@dataclass(frozen=True)
class StageContext:
    """Runtime context passed to each stage runner."""

    run_id: str
    stage_name: str
    started_at: datetime
    output_dir: Path
    omega0: float = 1.0
    threads: int = 1
    options: dict[str, Any] = field(default_factory=dict)

    def data_path(self, suffix: str = ".csv", tag: str = "") -> Path:
        """<output_dir>/<stage>[_tag]<suffix>"""
        stem = f"{self.stage_name}_{tag}" if tag else self.stage_name
        return self.output_dir / f"{stem}{suffix}"


@dataclass
class StageResult:
    """Normalized result returned by a stage runner."""

    stage_name: str
    status: StageStatus
    started_at: datetime
    ended_at: datetime
    files: list[str] = field(default_factory=list)
    metrics: dict[str, Any] = field(default_factory=dict)
    error: str | None = None

    @classmethod
    def succeeded(
        cls, ctx: StageContext, started_at: datetime, files: list[Path], metrics: dict[str, Any]
    ) -> StageResult:
        return cls(
            stage_name=ctx.stage_name,
            status="success",
            started_at=started_at,
            ended_at=utc_now(),
            files=[_relative(f, ctx.output_dir) for f in files],
            metrics=metrics,
        )

    @classmethod
    def failed(cls, ctx: StageContext, started_at: datetime, error: str) -> StageResult:
        return cls(
            stage_name=ctx.stage_name,
            status="failed",
            started_at=started_at,
            ended_at=utc_now(),
            error=error,
        )

    @property
    def duration_s(self) -> float:
        return (self.ended_at - self.started_at).total_seconds()

    def to_dict(self, *, timing: bool = True) -> dict[str, Any]:
        """Serializable payload; timing=False drops the wall-clock fields."""
        payload: dict[str, Any] = {
            "stage_name": self.stage_name,
            "status": self.status,
            "files": self.files,
            "metrics": self.metrics,
            "error": self.error,
        }
        if timing:
            payload["started_at"] = self.started_at.isoformat()
            payload["ended_at"] = self.ended_at.isoformat()
            payload["duration_s"] = self.duration_s
        return payload
