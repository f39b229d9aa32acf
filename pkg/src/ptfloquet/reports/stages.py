"""Registry of figure stages: name -> runner that regenerates one data set."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from ptfloquet.reports.runtime import StageContext, StageResult

StageRunner = Callable[[StageContext], StageResult]


@dataclass(frozen=True)
class StageDefinition:
    """
    One reproducible figure.

    Attributes:
        name: Stage key, e.g. "fig3"
        runner: Callable producing the data files
        description: One line for `reproduce --list`
        outputs: File tags the runner writes (informational)
        enabled_by_default: Part of a plain `reproduce` run
    """

    name: str
    runner: StageRunner
    description: str = ""
    outputs: tuple[str, ...] = ()
    enabled_by_default: bool = True


class StageRegistry:
    """Figure stages in registration order."""

    def __init__(self) -> None:
        self._stages: dict[str, StageDefinition] = {}

    def register(self, stage: StageDefinition) -> None:
        if stage.name in self._stages:
            raise ValueError(f"Stage already registered: {stage.name}")
        self._stages[stage.name] = stage

    def get(self, stage_name: str) -> StageDefinition:
        try:
            return self._stages[stage_name]
        except KeyError as exc:
            known = ", ".join(self._stages)
            raise ValueError(f"Unknown stage: {stage_name} (known: {known})") from exc

    def names(self) -> list[str]:
        return list(self._stages)

    def describe(self) -> list[str]:
        return [f"{s.name}: {s.description}" for s in self._stages.values()]

    def resolve(
        self,
        include: list[str] | None = None,
        skip: set[str] | None = None,
    ) -> list[StageDefinition]:
        """Stages to run, in the order given (registration order by default)."""
        names = include or [n for n, s in self._stages.items() if s.enabled_by_default]
        skipped = skip or set()
        return [self.get(name) for name in names if name not in skipped]
