from __future__ import annotations

from enum import IntEnum

from grasp.scene.command import Command


class DiscreteAction(IntEnum):
    PLUS_X = 0
    MINUS_X = 1
    PLUS_Y = 2
    MINUS_Y = 3
    PLUS_Z = 4
    MINUS_Z = 5
    PLUS_THETA = 6
    MINUS_THETA = 7
    TOGGLE_JAW = 8


N_ACTIONS = len(DiscreteAction)


def decode_action(a: int, jaw_open: bool) -> Command:
    """Map a discrete action to a unit robot command, preserving the jaw unless toggling."""
    action = DiscreteAction(int(a))
    jaw = 1.0 if jaw_open else -1.0
    if action is DiscreteAction.TOGGLE_JAW:
        return Command((0.0, 0.0, 0.0, 0.0, -jaw))
    values = [0.0, 0.0, 0.0, 0.0, jaw]
    axis, sign = divmod(int(action), 2)
    values[axis] = -1.0 if sign else 1.0
    return Command(tuple(values))
