from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

from app.domain.ports import EventLoggerFactory


@dataclass
class AppState:
    event_logger_factory: Optional[EventLoggerFactory] = None
    config_path: Optional[str] = None
    workers: Optional[int] = None
    verbose: bool = False

    def event_logger(self) -> Optional[Callable[[str, str, Optional[Dict[str, Any]]], None]]:
        if not self.event_logger_factory:
            return None
        return self.event_logger_factory.create(self.verbose)

    def set_verbose(self, enabled: bool) -> None:
        self.verbose = enabled

    def set_workers(self, workers: int) -> None:
        self.workers = max(1, int(workers))
