from __future__ import annotations

from enum import IntEnum
from typing import Optional, Sequence

import numpy as np

from grasp.config import ControlConfig
from grasp.errors import GripperLostError, TargetLostError


class Phase(IntEnum):
    BEGIN = 0
    PID = 1
    RL = 2


def distance_metric(gripper_c: Sequence[float], target_c: Sequence[float],
                    offsets: Sequence[float]) -> np.ndarray:
    """l = (c_gripper - c_target) - L, per axis."""
    return np.asarray(gripper_c, dtype=float) - np.asarray(target_c, dtype=float) - np.asarray(offsets, dtype=float)


def classify_phase(t: int, gripper_c: Optional[Sequence[float]], target_c: Optional[Sequence[float]],
                   cfg: ControlConfig) -> Phase:
    if t < cfg.h_begin:
        return Phase.BEGIN
    if target_c is None:
        raise TargetLostError("target centroid is absent")
    if gripper_c is None:
        raise GripperLostError("gripper centroid is absent")
    l_dis = distance_metric(gripper_c, target_c, cfg.offsets)
    if np.all(np.abs(l_dis) < cfg.c_dis):
        return Phase.RL
    return Phase.PID
