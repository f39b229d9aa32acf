"""Figure-reproduction stages and their runtime types."""

from ptfloquet.reports.figures import build_registry, run_reproduction
from ptfloquet.reports.runtime import StageContext, StageResult, StageStatus
from ptfloquet.reports.stages import StageDefinition, StageRegistry, StageRunner

__all__ = [
    "build_registry",
    "run_reproduction",
    "StageContext",
    "StageResult",
    "StageStatus",
    "StageDefinition",
    "StageRegistry",
    "StageRunner",
]
