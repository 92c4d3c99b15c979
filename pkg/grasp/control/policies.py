"""Anything with act(observation, rng) -> discrete action index and reset().
A learned actor would read only dsa and system; the scripted expert also
reads the perception product.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Protocol, Union

import numpy as np

from grasp.errors import PolicyError
from grasp.task.actions import N_ACTIONS
from .phases import Phase


@dataclass(frozen=True)
class PolicyInput:
    t: int
    phase: Phase
    dsa: object
    system: object
    jaw_open: bool
    perception: object = None
    yaw_rad: float = 0.0


class Policy(Protocol):
    name: str

    def act(self, obs: PolicyInput, rng: np.random.Generator) -> int:
        ...

    def reset(self) -> None:
        ...


class RandomPolicy:
    name = "random"

    def act(self, obs: PolicyInput, rng: np.random.Generator) -> int:
        return int(rng.integers(N_ACTIONS))

    def reset(self) -> None:
        pass


class ReplayPolicy:
    """Plays back a fixed action sequence."""

    name = "replay"

    def __init__(self, actions: Iterable[int]):
        self._actions: List[int] = [_checked(a, i + 1) for i, a in enumerate(actions)]
        self._cursor = 0

    def act(self, obs: PolicyInput, rng: np.random.Generator) -> int:
        if self._cursor >= len(self._actions):
            raise PolicyError(f"{self.name} policy exhausted after {len(self._actions)} actions")
        action = self._actions[self._cursor]
        self._cursor += 1
        return action

    def reset(self) -> None:
        self._cursor = 0


class ExternalPolicy(ReplayPolicy):
    """Actions read from a line-delimited file: one index per line, '#' starts a comment."""

    name = "external"

    def __init__(self, source: Union[str, Path]):
        path = Path(source)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise PolicyError(f"cannot read action file {path}: {exc}") from exc
        actions = []
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                value = int(line)
            except ValueError:
                raise PolicyError(f"{path}:{line_no}: not an action index: {line!r}") from None
            actions.append(_checked(value, line_no))
        super().__init__(actions)


def _checked(action: int, position: int) -> int:
    value = int(action)
    if not 0 <= value < N_ACTIONS:
        raise PolicyError(f"action {value} at position {position} is outside [0, {N_ACTIONS})")
    return value


def recorded_actions(steps) -> List[int]:
    """Policy actions of an episode record, skipping steps where no policy acted."""
    return [s.action for s in steps if s.action is not None]
