"""SceneState is a value: every operation returns a new state."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from grasp.config import SceneConfig
from grasp.errors import CommandError, ConfigError
from grasp.geometry.pose import Pose, compose, transform
from .command import Command
from .gripper import gripper_frame, gripper_surface, in_capture_box, jaw_frame
from .models import ObjectModel, spawn_object


@dataclass(frozen=True)
class Workspace:
    min_mm: np.ndarray
    max_mm: np.ndarray

    def __post_init__(self) -> None:
        lo = np.asarray(self.min_mm, dtype=float).reshape(3)
        hi = np.asarray(self.max_mm, dtype=float).reshape(3)
        if np.any(lo >= hi):
            raise ConfigError("workspace min must be below max on every axis")
        object.__setattr__(self, "min_mm", lo)
        object.__setattr__(self, "max_mm", hi)

    @classmethod
    def from_config(cls, cfg: SceneConfig) -> "Workspace":
        return cls(np.array(cfg.workspace_min_mm), np.array(cfg.workspace_max_mm))

    @property
    def extent_mm(self) -> np.ndarray:
        return self.max_mm - self.min_mm

    def clamp(self, position: np.ndarray) -> np.ndarray:
        return np.clip(position, self.min_mm, self.max_mm)

    def contains(self, position: np.ndarray) -> bool:
        return bool(np.all(position >= self.min_mm) and np.all(position <= self.max_mm))

    def normalize(self, points: np.ndarray) -> np.ndarray:
        return (np.asarray(points, dtype=float) - self.min_mm) / self.extent_mm


@dataclass(frozen=True)
class SceneState:
    workspace: Workspace
    position_mm: np.ndarray
    yaw_rad: float
    jaw_open: bool
    tilt_rad: float
    target: ObjectModel
    step_mm: float
    step_rad: float
    jaw_box_mm: Tuple[float, float, float]
    surface_density: float
    held: bool = False
    last_clamped: bool = False
    jaw_just_closed: bool = False
    grasp_ok: bool = False

    @property
    def gripper_pose(self) -> Pose:
        return gripper_frame(self.position_mm, self.yaw_rad)

    @property
    def jaw_pose(self) -> Pose:
        return jaw_frame(self.position_mm, self.yaw_rad, self.tilt_rad)

    def gripper_surface(self) -> Tuple[np.ndarray, np.ndarray]:
        points, normals = gripper_surface(self.jaw_open, self.tilt_rad, self.surface_density)
        pose = self.gripper_pose
        return transform(pose, points), normals @ pose.rotation.T


def sample_object_kind(mix, rng: np.random.Generator) -> str:
    kinds = list(mix)
    probs = np.array([mix[k] for k in kinds], dtype=float)
    return kinds[int(rng.choice(len(kinds), p=probs / probs.sum()))]


def reset(cfg: SceneConfig, rng: np.random.Generator, scale: float = 1.0,
          kind: Optional[str] = None) -> SceneState:
    """Place a freshly spawned target and an open gripper inside the workspace."""
    workspace = Workspace.from_config(cfg)
    if abs(sum(cfg.object_mix.values()) - 1.0) > 1e-9:
        raise ConfigError("object mix probabilities must sum to 1")
    chosen = sample_object_kind(cfg.object_mix, rng) if kind is None else kind

    lo, hi = workspace.min_mm, workspace.max_mm
    obj_xy = rng.uniform(lo[:2] + cfg.object_margin_mm, hi[:2] - cfg.object_margin_mm)
    obj_z = rng.uniform(*cfg.object_height_mm)
    obj_yaw = rng.uniform(0.0, 2 * math.pi)
    density = cfg.surface_density * max(1.0, scale) ** 2
    model = spawn_object(chosen, scale, rng, density=density, sphere_radius_mm=cfg.sphere_radius_mm)
    obj_pose = Pose.from_euler("z", obj_yaw, [obj_xy[0], obj_xy[1], obj_z])

    grip_xy = rng.uniform(lo[:2] + cfg.gripper_margin_mm, hi[:2] - cfg.gripper_margin_mm)
    grip_z = rng.uniform(*cfg.gripper_height_mm)
    yaw_limit = math.radians(cfg.gripper_yaw_deg)
    grip_yaw = rng.uniform(-yaw_limit, yaw_limit)
    position = workspace.clamp(np.array([grip_xy[0], grip_xy[1], grip_z]))

    return SceneState(
        workspace=workspace,
        position_mm=position,
        yaw_rad=float(grip_yaw),
        jaw_open=True,
        tilt_rad=math.radians(cfg.tilt_deg),
        target=model.placed(obj_pose),
        step_mm=cfg.step_mm,
        step_rad=math.radians(cfg.step_deg),
        jaw_box_mm=tuple(cfg.jaw_box_mm),
        surface_density=cfg.surface_density,
    )


def apply_action(state: SceneState, cmd: Command) -> SceneState:
    """Actuate one command: translate, rotate, clamp, then actuate the jaw."""
    if not isinstance(cmd, Command):
        try:
            cmd = Command.of(cmd)
        except (TypeError, ValueError) as exc:
            raise CommandError(str(exc)) from exc

    desired = state.position_mm + cmd.translation * state.step_mm
    clamped = not state.workspace.contains(desired)
    position = state.workspace.clamp(desired) if clamped else desired
    yaw = state.yaw_rad + cmd.rotation * state.step_rad

    moved = replace(state, position_mm=position, yaw_rad=float(yaw))
    target = state.target
    if state.held:
        delta = compose(moved.gripper_pose, state.gripper_pose.inverse())
        target = target.placed(compose(delta, target.pose))

    jaw_open = cmd.opens_jaw
    just_closed = state.jaw_open and not jaw_open
    held = state.held and not jaw_open
    after = replace(
        moved,
        target=target,
        jaw_open=jaw_open,
        held=held,
        last_clamped=clamped,
        jaw_just_closed=just_closed,
        grasp_ok=False,
    )
    if just_closed:
        ok = check_grasp(after)
        after = replace(after, grasp_ok=ok, held=ok)
    return after


def check_grasp(state: SceneState) -> bool:
    """True iff any target surface point lies inside the jaw capture box."""
    local = transform(state.jaw_pose.inverse(), state.target.surface_points_mm)
    return bool(np.any(in_capture_box(local, state.jaw_box_mm)))
