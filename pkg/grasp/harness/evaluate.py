from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

from grasp.config import SimConfig
from grasp.control.expert import ScriptedExpert
from grasp.control.policies import ExternalPolicy, Policy, RandomPolicy, ReplayPolicy, recorded_actions
from grasp.errors import ConfigError, EmptyEvaluationError
from .episode import EpisodeRecord, FrameSink, run_episode
from .metrics import EvalReport, aggregate
from .replay import read_replay, replay_path

PolicyFactory = Callable[[int], Policy]
SinkFactory = Callable[[int], Optional[FrameSink]]

POLICIES = ("scripted", "random", "replay", "external")


def episode_seeds(master_seed: int, n: int) -> List[int]:
    """Deterministic per-episode seeds spawned from the master seed."""
    children = np.random.SeedSequence(master_seed).spawn(n)
    return [int(child.generate_state(1)[0]) for child in children]


def policy_factory(cfg: SimConfig, name: Optional[str] = None,
                   source: Optional[Union[str, Path]] = None) -> PolicyFactory:
    """Build one fresh policy per episode seed.

    replay reads <source>/episode_<seed>.replay; external reads the action file at source.
    """
    name = name or cfg.harness.policy
    if name == "scripted":
        return lambda seed: ScriptedExpert(cfg)
    if name == "random":
        return lambda seed: RandomPolicy()
    if name == "external":
        if source is None:
            raise ConfigError("the external policy needs an action file")
        return lambda seed: ExternalPolicy(source)
    if name == "replay":
        if source is None:
            raise ConfigError("the replay policy needs a replay directory")
        return lambda seed: ReplayPolicy(recorded_actions(read_replay(replay_path(source, seed)).steps))
    raise ConfigError(f"unknown policy '{name}' (expected one of {', '.join(POLICIES)})")


def run_episodes(cfg: SimConfig, seeds: Sequence[int], make_policy: PolicyFactory, workers: int = 1,
                 make_sink: Optional[SinkFactory] = None,
                 log: Optional[Callable[..., None]] = None) -> List[EpisodeRecord]:
    if not seeds:
        raise EmptyEvaluationError("evaluation needs at least one episode")

    def one(seed: int) -> EpisodeRecord:
        sink = make_sink(seed) if make_sink else None
        return run_episode(cfg, make_policy(seed), seed, sink=sink, log=log)

    if workers <= 1:
        records = [one(s) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(one, seeds))
    return sorted(records, key=lambda r: r.seed)


def evaluate(cfg: SimConfig, n: int, make_policy: Optional[PolicyFactory] = None,
             workers: Optional[int] = None) -> EvalReport:
    if n <= 0:
        raise EmptyEvaluationError("evaluation needs at least one episode")
    seeds = episode_seeds(cfg.harness.seed, n)
    records = run_episodes(
        cfg, seeds, make_policy or policy_factory(cfg), workers or cfg.harness.workers
    )
    return aggregate(records, cfg.fingerprint())
