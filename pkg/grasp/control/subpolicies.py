from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from grasp.config import ControlConfig
from grasp.errors import GripperLostError, TargetLostError
from grasp.scene.command import IDLE, Command
from grasp.task.actions import decode_action


def idle_action() -> Command:
    return IDLE


def pid_action(gripper_c: Optional[Sequence[float]], target_c: Optional[Sequence[float]], k_p: float,
               verbatim_sign: bool = False) -> Command:
    """Proportional step toward the target: clip(k_p * (c_target - c_gripper)).

    verbatim_sign drives along +(c_gripper - c_target) instead.
    """
    if gripper_c is None:
        raise GripperLostError("gripper centroid is absent")
    if target_c is None:
        raise TargetLostError("target centroid is absent")
    diff = np.asarray(target_c, dtype=float) - np.asarray(gripper_c, dtype=float)
    if verbatim_sign:
        diff = -diff
    xyz = np.clip(k_p * diff, -1.0, 1.0) + 0.0
    return Command((xyz[0], xyz[1], xyz[2], 0.0, 1.0))


def scale_rl_action(action: int, jaw_open: bool, cfg: ControlConfig) -> Command:
    scale = np.array([cfg.alpha_xyz, cfg.alpha_xyz, cfg.alpha_xyz, cfg.alpha_theta, 1.0])
    return Command(tuple(decode_action(action, jaw_open).as_array() * scale + 0.0))


def safe_height_correct(gripper_cz: float, target_cz: float, z_safe: float, step_mm: float,
                        lift_mm: float = 30.0, jaw_open: bool = True) -> Optional[Tuple[Command, ...]]:
    """Unit +z commands totalling lift_mm when the gripper sits below the safe gap, else None."""
    if gripper_cz - target_cz >= z_safe:
        return None
    jaw = 1.0 if jaw_open else -1.0
    count = math.ceil(lift_mm / step_mm)
    return tuple(Command((0.0, 0.0, 1.0, 0.0, jaw)) for _ in range(count))
