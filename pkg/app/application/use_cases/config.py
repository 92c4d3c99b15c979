from __future__ import annotations

from typing import Any, Dict, Optional

from app.application.state import AppState
from app.application.suites import merge_overrides, suite_overrides
from app.domain.entities import EffectiveConfig
from app.domain.ports import ConfigRepository, SimulatorPort


class ConfigService:
    def __init__(self, state: AppState, repo: ConfigRepository, simulator: SimulatorPort) -> None:
        self.state = state
        self.repo = repo
        self.simulator = simulator

    def config_path(self, explicit: Optional[str] = None) -> str:
        return explicit or self.state.config_path or self.repo.default_path()

    def effective(
        self,
        suite: str = "performance",
        config_path: Optional[str] = None,
        overrides: Optional[Dict[str, Any]] = None,
    ) -> EffectiveConfig:
        base = self.repo.load(config_path or self.state.config_path)
        layered = merge_overrides(suite_overrides(suite), overrides or {})
        values, fingerprint = self.simulator.resolve(base, layered)
        return EffectiveConfig(suite=suite, values=values, fingerprint=fingerprint)
