"""Uniform draws for camera pose noise, object scale and action noise. Every
sampler reads only its own rng, so a seed replays the trace exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from grasp.config import RandomizationConfig
from grasp.geometry.camera import CameraModel, orbit_camera
from grasp.scene.command import Command


@dataclass(frozen=True)
class CameraNoise:
    roll_rad: float = 0.0
    pitch_rad: float = 0.0
    yaw_rad: float = 0.0
    distance_mm: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.roll_rad, self.pitch_rad, self.yaw_rad, self.distance_mm])

    def apply(self, cam: CameraModel, look_at_mm: Sequence[float]) -> CameraModel:
        if not np.any(self.as_array()):
            return cam
        return orbit_camera(cam, look_at_mm, self.roll_rad, self.pitch_rad, self.yaw_rad, self.distance_mm)


def camera_noise_bounds(cfg: RandomizationConfig) -> np.ndarray:
    return np.array([
        math.radians(cfg.cam_roll_deg),
        math.radians(cfg.cam_pitch_deg),
        math.radians(cfg.cam_yaw_deg),
        cfg.cam_distance_mm,
    ])


def sample_camera_noise(cfg: RandomizationConfig, rng: np.random.Generator) -> CameraNoise:
    bounds = camera_noise_bounds(cfg)
    return CameraNoise(*(float(v) for v in rng.uniform(-bounds, bounds)))


def sample_object_scale(cfg: RandomizationConfig, rng: np.random.Generator,
                        scale_range: Optional[Tuple[float, float]] = None) -> float:
    lo, hi = scale_range if scale_range is not None else cfg.object_scale
    return float(rng.uniform(lo, hi))


def perturb_action(cmd: Command, rng: np.random.Generator, noise: float) -> Command:
    """Add U(-noise, noise) to each translation element; idle commands pass through."""
    if noise <= 0 or cmd.is_idle:
        return cmd
    values = cmd.as_array()
    values[:3] = np.clip(values[:3] + rng.uniform(-noise, noise, 3), -1.0, 1.0)
    return Command(tuple(values))


class MovingCamera:
    """Per-step random walk of the camera perturbation, clipped to the sampling ranges."""

    def __init__(self, cfg: RandomizationConfig, start: CameraNoise):
        self._bounds = camera_noise_bounds(cfg)
        self._step = cfg.moving_step_fraction * self._bounds
        self._state = start.as_array()

    @property
    def current(self) -> CameraNoise:
        return CameraNoise(*(float(v) for v in self._state))

    def advance(self, rng: np.random.Generator) -> CameraNoise:
        self._state = np.clip(
            self._state + rng.uniform(-self._step, self._step), -self._bounds, self._bounds
        )
        return self.current
