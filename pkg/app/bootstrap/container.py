from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from app.application.state import AppState
from app.application.use_cases import (
    ConfigService,
    EvaluationService,
    ReplayCheckService,
    StereoService,
)
from app.infrastructure.persistence.config_store import ConfigRepositoryImpl
from app.infrastructure.persistence.data_paths import ensure_runtime_dirs
from app.infrastructure.persistence.env import env_config_path, env_verbose, env_workers
from app.infrastructure.persistence.images import ImageStoreImpl
from app.infrastructure.persistence.replays import ReplayStoreImpl
from app.infrastructure.persistence.reports import ReportWriterImpl
from app.infrastructure.reporting.pdf_renderer import EvalPdfRenderer
from app.infrastructure.sim.adapter import SimulatorAdapter
from app.infrastructure.sim.loggers import EventLoggerFactoryImpl, MetricsLoggerFactoryImpl


@dataclass
class AppContainer:
    state: AppState
    configs: ConfigService
    evaluation: EvaluationService
    replay_check: ReplayCheckService
    stereo: StereoService


def build_container() -> AppContainer:
    ensure_runtime_dirs()
    state = AppState(
        event_logger_factory=EventLoggerFactoryImpl(),
        config_path=env_config_path(),
        workers=env_workers(),
        verbose=env_verbose(),
    )
    simulator = SimulatorAdapter()
    replays = ReplayStoreImpl()
    reports = ReportWriterImpl()
    configs = ConfigService(state, ConfigRepositoryImpl(), simulator)

    return AppContainer(
        state=state,
        configs=configs,
        evaluation=EvaluationService(
            state,
            configs,
            simulator,
            replays,
            reports,
            pdf_renderer=EvalPdfRenderer(),
            metrics_factory=MetricsLoggerFactoryImpl(),
        ),
        replay_check=ReplayCheckService(simulator, replays, reports),
        stereo=StereoService(configs, simulator, ImageStoreImpl()),
    )


_container: Optional[AppContainer] = None


def get_container() -> AppContainer:
    global _container
    if _container is None:
        _container = build_container()
    return _container
