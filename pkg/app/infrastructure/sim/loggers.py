from __future__ import annotations

from typing import Any, Dict, Optional

from grasp.logger import MetricsLogger
from grasp.rawlog import EventLogger

from app.domain.ports import EventLoggerFactory, MetricsLoggerFactory, MetricsLoggerPort
from app.infrastructure.persistence.data_paths import event_log_path, logs_dir


class EventLoggerFactoryImpl(EventLoggerFactory):
    def create(self, enabled: bool) -> Optional[Any]:
        if not enabled:
            return None
        return EventLogger(event_log_path())


class MetricsLoggerAdapter(MetricsLoggerPort):
    def __init__(self, logger: MetricsLogger) -> None:
        self._logger = logger

    def start_session(self, format: str = "csv") -> str:
        return str(self._logger.start_session(format=format))

    def log_episode(self, record: Any) -> None:
        self._logger.log_episode(record)

    def end_session(self) -> Dict[str, Any]:
        return self._logger.end_session()


class MetricsLoggerFactoryImpl(MetricsLoggerFactory):
    def create(self) -> MetricsLoggerPort:
        return MetricsLoggerAdapter(MetricsLogger(logs_dir()))
