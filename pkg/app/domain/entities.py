from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


class AppError(Exception):
    pass


class ConfigInvalidError(AppError):
    pass


class SimulationError(AppError):
    pass


class ReplayError(AppError):
    pass


class ImageIOError(AppError):
    pass


@dataclass
class EffectiveConfig:
    suite: str
    values: Dict[str, Any]
    fingerprint: str


@dataclass
class EvalRequest:
    out_dir: str
    suite: str = "performance"
    config_path: Optional[str] = None
    n: Optional[int] = None
    seed: Optional[int] = None
    no_dr: bool = False
    stereo: bool = False
    policy: Optional[str] = None
    policy_source: Optional[str] = None
    workers: Optional[int] = None
    pdf: bool = False


@dataclass
class EvalSummary:
    fingerprint: str
    n_episodes: int
    successes: int
    success_rate: float
    score_mean: float
    score_std: float
    return_mean: float
    length_mean: float
    rows: List[Dict[str, Any]] = field(default_factory=list)
    episodes: List[Dict[str, Any]] = field(default_factory=list)

    def headline(self) -> Dict[str, Any]:
        return {
            "fingerprint": self.fingerprint,
            "n_episodes": self.n_episodes,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "score_mean": self.score_mean,
            "score_std": self.score_std,
            "return_mean": self.return_mean,
            "length_mean": self.length_mean,
        }


@dataclass
class EvalOutcome:
    suite: str
    summary: EvalSummary
    out_dir: str
    csv_path: str
    table_path: str
    json_path: str
    replay_paths: List[str] = field(default_factory=list)
    pdf_path: Optional[str] = None
    session_log: Optional[str] = None


@dataclass
class ReplayCheckResult:
    directory: str
    n_replays: int
    streaming: Dict[str, Any]
    replayed: Dict[str, Any]
    mismatches: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


@dataclass
class DepthCheckRow:
    height_mm: float
    matched_fraction: float
    mean_abs_error_mm: float
    max_abs_error_mm: float
    pair_errors_mm: Dict[float, float] = field(default_factory=dict)


@dataclass
class StereoResult:
    left_path: str
    right_path: str
    depth_path: str
    width: int
    height: int
    matched_fraction: float
