from __future__ import annotations

from typing import Any, Dict, List, Optional, Protocol, Sequence, Tuple

from app.domain.entities import DepthCheckRow, EvalSummary


class ConfigRepository(Protocol):
    def default_path(self) -> str: ...
    def load(self, path: Optional[str] = None) -> Dict[str, Any]: ...


class SimulatorPort(Protocol):
    def resolve(self, base: Dict[str, Any], overrides: Dict[str, Any]) -> Tuple[Dict[str, Any], str]: ...
    def run(
        self,
        config: Dict[str, Any],
        n: int,
        *,
        policy: Optional[str] = None,
        policy_source: Optional[str] = None,
        workers: int = 1,
        image_dir: Optional[str] = None,
        log: Optional[Any] = None,
    ) -> List[Any]: ...
    def summarize(self, records: Sequence[Any]) -> EvalSummary: ...
    def depth_check(self, config: Dict[str, Any], seed: int) -> List[DepthCheckRow]: ...
    def stereo_depth(self, left: Any, right: Any, config: Dict[str, Any]) -> Tuple[Any, float]: ...


class ReplayStore(Protocol):
    def save_all(self, records: Sequence[Any], directory: str) -> List[str]: ...
    def load_all(self, directory: str) -> List[Any]: ...


class ReportWriter(Protocol):
    def write_csv(self, rows: List[Dict[str, Any]], path: str) -> str: ...
    def write_text(self, lines: List[str], path: str) -> str: ...
    def write_json(self, payload: Dict[str, Any], path: str) -> str: ...
    def read_json(self, path: str) -> Dict[str, Any]: ...


class ImageStore(Protocol):
    def read(self, path: str) -> Any: ...
    def write_depth(self, path: str, depth_mm: Any) -> str: ...


class PdfRendererPort(Protocol):
    def render(self, payload: Dict[str, Any], output_path: str) -> None: ...


class EventLoggerFactory(Protocol):
    def create(self, enabled: bool) -> Optional[Any]: ...


class MetricsLoggerPort(Protocol):
    def start_session(self, format: str = "csv") -> str: ...
    def log_episode(self, record: Any) -> None: ...
    def end_session(self) -> Dict[str, Any]: ...


class MetricsLoggerFactory(Protocol):
    def create(self) -> MetricsLoggerPort: ...
