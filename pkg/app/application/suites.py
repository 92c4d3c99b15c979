"""Named evaluation presets, expressed as partial config overrides."""

from __future__ import annotations

import copy
from typing import Any, Dict, List

from app.domain.entities import ConfigInvalidError

SUITES: Dict[str, Dict[str, Any]] = {
    "performance": {},
    "ood-large": {"scene": {"scale_range": [1.5, 2.0]}},
    "ood-small": {"scene": {"scale_range": [0.5, 0.75]}},
    "ood-shape": {"scene": {"object_mix": {"sphere": 1.0}}},
    "moving-camera": {"harness": {"moving_camera": True}},
    "regrasp": {"task": {"max_grasp_attempts": 2}},
    "no-clutch": {"control": {"h_begin": 0}},
    "no-pid": {"control": {"pid_enabled": False}},
    "no-dr": {"randomization": {"enabled": False}},
}

POLICIES = ("scripted", "random", "replay", "external")


def suite_names() -> List[str]:
    return list(SUITES)


def suite_overrides(name: str) -> Dict[str, Any]:
    if name not in SUITES:
        raise ConfigInvalidError(f"Unknown suite '{name}'. Choose one of: {', '.join(SUITES)}")
    return copy.deepcopy(SUITES[name])


def merge_overrides(*layers: Dict[str, Any]) -> Dict[str, Any]:
    """Section-wise merge; later layers win key by key."""
    merged: Dict[str, Any] = {}
    for layer in layers:
        for section, values in layer.items():
            if isinstance(values, dict):
                merged.setdefault(section, {}).update(copy.deepcopy(values))
            else:
                merged[section] = copy.deepcopy(values)
    return merged
