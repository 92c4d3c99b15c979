from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .fsm import TaskState


@dataclass(frozen=True)
class SystemStates:
    fsm: float
    jaw: float
    phase: float

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.fsm, self.jaw, self.phase)


def system_states(fsm_state: TaskState, jaw_open: bool, phase: int) -> SystemStates:
    """FSM id / 3, jaw open flag, controller phase id / 2."""
    return SystemStates(
        fsm=int(fsm_state) / 3.0,
        jaw=1.0 if jaw_open else 0.0,
        phase=int(phase) / 2.0,
    )
