from .episode import EpisodeRecord, EpisodeStep, FrameSink, dsa_digest, episode_streams, run_episode
from .evaluate import POLICIES, episode_seeds, evaluate, policy_factory, run_episodes
from .metrics import EvalReport, KindBreakdown, aggregate, grasping_score
from .replay import FORMAT_VERSION, format_replay, parse_replay, read_replay, replay_path, write_replay

__all__ = [
    "EpisodeRecord",
    "EpisodeStep",
    "EvalReport",
    "FORMAT_VERSION",
    "FrameSink",
    "KindBreakdown",
    "POLICIES",
    "aggregate",
    "dsa_digest",
    "episode_seeds",
    "episode_streams",
    "evaluate",
    "format_replay",
    "grasping_score",
    "parse_replay",
    "policy_factory",
    "read_replay",
    "replay_path",
    "run_episode",
    "run_episodes",
    "write_replay",
]
