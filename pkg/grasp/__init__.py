# grasp/__init__.py
from .config import SimConfig
from .errors import ConfigError, SimError

from .harness import (
    EpisodeRecord,
    EvalReport,
    aggregate,
    evaluate,
    grasping_score,
    read_replay,
    run_episode,
    write_replay,
)

__all__ = [
    "ConfigError",
    "EpisodeRecord",
    "EvalReport",
    "SimConfig",
    "SimError",
    "aggregate",
    "evaluate",
    "grasping_score",
    "read_replay",
    "run_episode",
    "write_replay",
]
__version__ = "1.0.0"
