from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from grasp.errors import GeometryError

ORTHO_TOL = 1e-9


@dataclass(frozen=True)
class Pose:
    """Rigid transform q_world = rotation @ q_local + translation_mm."""

    rotation: np.ndarray
    translation_mm: np.ndarray

    def __post_init__(self) -> None:
        rot = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        trans = np.asarray(self.translation_mm, dtype=float).reshape(3)
        if not np.allclose(rot.T @ rot, np.eye(3), atol=ORTHO_TOL):
            raise GeometryError("pose rotation must be orthonormal")
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation_mm", trans)

    @classmethod
    def identity(cls) -> "Pose":
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_euler(cls, seq: str, angles, translation_mm, degrees: bool = False) -> "Pose":
        rot = Rotation.from_euler(seq, angles, degrees=degrees).as_matrix()
        return cls(rot, np.asarray(translation_mm, dtype=float))

    def inverse(self) -> "Pose":
        rot_t = self.rotation.T
        return Pose(rot_t, -rot_t @ self.translation_mm)


def compose(a: Pose, b: Pose) -> Pose:
    """Pose equivalent to applying b first, then a."""
    return Pose(a.rotation @ b.rotation, a.rotation @ b.translation_mm + a.translation_mm)


def transform(a: Pose, q) -> np.ndarray:
    """Apply a pose to a single 3-vector or an (N, 3) array of points."""
    pts = np.asarray(q, dtype=float)
    return pts @ a.rotation.T + a.translation_mm


def rot_x(angle_rad: float) -> np.ndarray:
    return Rotation.from_euler("x", angle_rad).as_matrix()


def rot_z(angle_rad: float) -> np.ndarray:
    return Rotation.from_euler("z", angle_rad).as_matrix()
