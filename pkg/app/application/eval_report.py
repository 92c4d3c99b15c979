from __future__ import annotations

from typing import Any, Dict, List

from app.domain.entities import EvalSummary

TABLE_COLUMNS = [
    ("group", "Group", 10),
    ("n", "N", 5),
    ("successes", "Succ", 5),
    ("success_rate", "Rate", 7),
    ("score_mean", "Score", 8),
    ("score_std", "Std", 8),
    ("return_mean", "Return", 9),
    ("length_mean", "Steps", 7),
]

COMPARED_KEYS = ("n_episodes", "successes", "success_rate", "score_mean", "score_std", "return_mean", "length_mean")


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def format_table(summary: EvalSummary, suite: str) -> List[str]:
    header = " ".join(f"{title:<{width}}" for _, title, width in TABLE_COLUMNS)
    lines = [
        f"Suite: {suite}",
        f"Config fingerprint: {summary.fingerprint}",
        f"Episodes: {summary.n_episodes}  Success rate: {summary.success_rate:.4f}  "
        f"Grasping score: {summary.score_mean:.4f} +/- {summary.score_std:.4f}",
        "",
        header,
        "-" * len(header),
    ]
    for row in summary.rows:
        lines.append(" ".join(f"{_cell(row.get(key, '')):<{width}}" for key, _, width in TABLE_COLUMNS))
    return lines


def report_payload(summary: EvalSummary, suite: str) -> Dict[str, Any]:
    return {
        "suite": suite,
        "summary": summary.headline(),
        "groups": summary.rows,
        "episodes": summary.episodes,
    }


def compare_summaries(streaming: Dict[str, Any], replayed: Dict[str, Any]) -> List[str]:
    """Keys whose values differ; floats are compared exactly."""
    mismatches = []
    for key in COMPARED_KEYS:
        if streaming.get(key) != replayed.get(key):
            mismatches.append(f"{key}: streaming={streaming.get(key)!r} replayed={replayed.get(key)!r}")
    return mismatches
