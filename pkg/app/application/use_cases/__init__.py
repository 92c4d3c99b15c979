from app.application.use_cases.config import ConfigService
from app.application.use_cases.evaluation import EvaluationService, request_overrides
from app.application.use_cases.replay_check import ReplayCheckService
from app.application.use_cases.stereo import StereoService

__all__ = [
    "ConfigService",
    "EvaluationService",
    "ReplayCheckService",
    "StereoService",
    "request_overrides",
]
