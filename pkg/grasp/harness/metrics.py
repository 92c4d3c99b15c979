from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

import numpy as np

from grasp.errors import EmptyEvaluationError, ScoreRangeError


def grasping_score(h: int, h_max: int, success: bool) -> float:
    """(H_max - H) / H_max for a success, 0 otherwise."""
    if not 1 <= h <= h_max:
        raise ScoreRangeError(f"terminated timestep {h} outside [1, {h_max}]")
    return (h_max - h) / h_max if success else 0.0


@dataclass(frozen=True)
class KindBreakdown:
    kind: str
    n_episodes: int
    successes: int
    score_mean: float

    @property
    def success_rate(self) -> float:
        return self.successes / self.n_episodes


@dataclass(frozen=True)
class EvalReport:
    n_episodes: int
    successes: int
    score_mean: float
    score_std: float
    return_mean: float
    length_mean: float
    per_kind: Tuple[KindBreakdown, ...]
    fingerprint: str

    @property
    def success_rate(self) -> float:
        return self.successes / self.n_episodes

    def as_rows(self) -> List[Dict[str, object]]:
        """Overall row first, then one row per object kind."""
        rows: List[Dict[str, object]] = [{
            "group": "all",
            "n": self.n_episodes,
            "successes": self.successes,
            "success_rate": self.success_rate,
            "score_mean": self.score_mean,
            "score_std": self.score_std,
            "return_mean": self.return_mean,
            "length_mean": self.length_mean,
        }]
        for kind in self.per_kind:
            rows.append({
                "group": kind.kind,
                "n": kind.n_episodes,
                "successes": kind.successes,
                "success_rate": kind.success_rate,
                "score_mean": kind.score_mean,
                "score_std": "",
                "return_mean": "",
                "length_mean": "",
            })
        return rows


def aggregate(records: Iterable, fingerprint: str = "") -> EvalReport:
    ordered = sorted(records, key=lambda r: r.seed)
    if not ordered:
        raise EmptyEvaluationError("no episodes to aggregate")
    scores = np.array([r.score for r in ordered])
    per_kind = []
    for kind in sorted({r.kind for r in ordered}):
        group = [r for r in ordered if r.kind == kind]
        per_kind.append(KindBreakdown(
            kind=kind,
            n_episodes=len(group),
            successes=sum(1 for r in group if r.success),
            score_mean=float(np.mean([r.score for r in group])),
        ))
    return EvalReport(
        n_episodes=len(ordered),
        successes=sum(1 for r in ordered if r.success),
        score_mean=float(scores.mean()),
        score_std=float(scores.std()),
        return_mean=float(np.mean([r.discounted_return for r in ordered])),
        length_mean=float(np.mean([r.length for r in ordered])),
        per_kind=tuple(per_kind),
        fingerprint=fingerprint or ordered[0].fingerprint,
    )
