"""Greedy axis descent of the jaw capture center onto the target. The
capture center is estimated from the perceived gripper centroid minus a
calibrated offset, measured once per yaw by perceiving the gripper alone
at a reference pose.
"""

from __future__ import annotations

from typing import Dict, Optional, Sequence

import numpy as np

from grasp.config import SimConfig
from grasp.errors import PolicyError
from grasp.geometry.camera import look_at_camera
from grasp.geometry.pose import transform
from grasp.perception.pipeline import GRIPPER_ID, perceive_object
from grasp.perception.voxels import GridSpec
from grasp.render.raster import GRIPPER, splat
from grasp.scene.gripper import capture_center_local, gripper_frame, gripper_surface, jaw_frame
from grasp.scene.world import Workspace
from grasp.task.actions import DiscreteAction
from .phases import Phase
from .policies import PolicyInput

REFERENCE_POSITION_MM = (0.0, 0.0, 50.0)
TARGET_REFRESH_RATIO = 0.9


def scripted_expert(gripper_c: Sequence[float], target_c: Sequence[float], phase: Phase,
                    rng: np.random.Generator, tolerance: float = 0.01) -> DiscreteAction:
    """Move along the axis with the largest |gap| toward the target; toggle the jaw once aligned.

    Ties between equally large gaps are broken with rng.
    """
    if phase is Phase.BEGIN:
        raise PolicyError("the expert does not act during the virtual clutch")
    gap = np.asarray(gripper_c, dtype=float) - np.asarray(target_c, dtype=float)
    size = np.abs(gap)
    if np.all(size < tolerance):
        return DiscreteAction.TOGGLE_JAW
    widest = np.flatnonzero(size == size.max())
    axis = int(widest[0] if widest.size == 1 else rng.choice(widest))
    # even members of the enum are the + moves
    return DiscreteAction(2 * axis + (1 if gap[axis] > 0 else 0))


def capture_offset(cfg: SimConfig, yaw_rad: float) -> np.ndarray:
    """Perceived gripper centroid minus the true capture center, normalized."""
    scene = cfg.scene
    workspace = Workspace.from_config(scene)
    tilt = np.radians(scene.tilt_deg)
    position = np.array(REFERENCE_POSITION_MM)
    points, normals = gripper_surface(True, float(tilt), scene.surface_density)
    pose = gripper_frame(position, yaw_rad)
    cam = look_at_camera(cfg.camera)
    depth, owner = splat(
        transform(pose, points), np.full(len(points), GRIPPER, dtype=np.uint8), cam,
        normals=normals @ pose.rotation.T,
    )
    grid = GridSpec.from_workspace(workspace, cfg.perception.voxel_resolution)
    seen = perceive_object(depth, owner == GRIPPER, cam, grid, cfg.perception, GRIPPER_ID)
    if seen.centroid is None:
        raise PolicyError("gripper is not visible at the calibration pose")
    center = transform(jaw_frame(position, yaw_rad, float(tilt)), capture_center_local(scene.jaw_box_mm))
    return seen.centroid - workspace.normalize(center)


class ScriptedExpert:
    """Privileged expert: reads the perceived voxels and the commanded yaw."""

    name = "scripted"

    def __init__(self, cfg: SimConfig):
        self._cfg = cfg
        self._offsets: Dict[float, np.ndarray] = {}
        self.reset()

    def reset(self) -> None:
        self._aim: Optional[np.ndarray] = None
        self._best_count = 0
        self._calls = 0

    def act(self, obs: PolicyInput, rng: np.random.Generator) -> int:
        perception = obs.perception
        if perception is None or not perception.gripper.present or not perception.target.present:
            raise PolicyError("scripted expert needs gripper and target voxels")
        if not obs.jaw_open:
            self._calls = 0
            return int(DiscreteAction.TOGGLE_JAW)
        self._calls += 1
        self._remember_target(perception)
        if self._calls > self._cfg.control.expert_stall_steps:
            return int(DiscreteAction.TOGGLE_JAW)
        estimate = perception.gripper.centroid - self._offset(obs.yaw_rad)
        action = scripted_expert(estimate, self._aim, obs.phase, rng, self._cfg.control.expert_tolerance)
        return int(action)

    def _offset(self, yaw_rad: float) -> np.ndarray:
        key = round(float(yaw_rad), 4)
        if key not in self._offsets:
            self._offsets[key] = capture_offset(self._cfg, key)
        return self._offsets[key]

    def _remember_target(self, perception) -> None:
        """Aim at the occupied column nearest the target centroid, at centroid height.

        The aim is refreshed only from views nearly as complete as the best one,
        so the gripper occluding the target does not drag the aim around.
        """
        target = perception.target
        count = len(target.voxels)
        if self._aim is not None and count < TARGET_REFRESH_RATIO * self._best_count:
            return
        self._best_count = max(self._best_count, count)
        n = perception.n
        xy = target.voxels[:, :2].astype(float)
        nearest = xy[np.argmin(np.sum((xy - target.centroid[:2] * n) ** 2, axis=1))]
        self._aim = np.array([nearest[0] / n, nearest[1] / n, target.centroid[2]])
