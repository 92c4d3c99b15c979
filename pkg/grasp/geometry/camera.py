"""Pinhole stereo camera with the lateral mapping q = R [a*p_x, a*p_y, d] + l,
where p is measured from the principal point and a is the pixel scale.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from grasp.config import CameraConfig
from grasp.errors import GeometryError
from .pose import ORTHO_TOL, Pose


@dataclass(frozen=True)
class CameraModel:
    focal_px: float
    baseline_mm: float
    pixel_scale: float
    rotation: np.ndarray
    translation_mm: np.ndarray
    width_px: int = 600
    height_px: int = 600

    def __post_init__(self) -> None:
        rot = np.asarray(self.rotation, dtype=float).reshape(3, 3)
        if not np.allclose(rot.T @ rot, np.eye(3), atol=ORTHO_TOL):
            raise GeometryError("camera rotation must be orthonormal")
        if self.focal_px <= 0 or self.baseline_mm <= 0:
            raise GeometryError("focal_px and baseline_mm must be positive")
        if self.pixel_scale <= 0:
            raise GeometryError("pixel_scale must be positive")
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation_mm", np.asarray(self.translation_mm, dtype=float).reshape(3))

    @property
    def principal_point(self) -> Tuple[float, float]:
        return (self.width_px / 2.0, self.height_px / 2.0)

    @property
    def pose(self) -> Pose:
        return Pose(self.rotation, self.translation_mm)

    @property
    def view_axis(self) -> np.ndarray:
        return self.rotation[:, 2]

    def with_pose(self, pose: Pose) -> "CameraModel":
        return replace(self, rotation=pose.rotation, translation_mm=pose.translation_mm)

    def raster(self, p) -> np.ndarray:
        """Centered pixel coordinates -> integer (column, row), rounding half up."""
        pts = np.asarray(p, dtype=float)
        cx, cy = self.principal_point
        return np.floor(pts + np.array([cx, cy]) + 0.5).astype(np.int64)

    def centered(self, raster_px) -> np.ndarray:
        """Integer (column, row) -> centered pixel coordinates."""
        cx, cy = self.principal_point
        return np.asarray(raster_px, dtype=float) - np.array([cx, cy])


def unproject_pixel(p, depth_mm, cam: CameraModel) -> np.ndarray:
    """Camera-frame metric point from centered pixel coordinates and depth.

    Accepts a single pixel with scalar depth or (N, 2) pixels with N depths.
    """
    pix = np.asarray(p, dtype=float)
    depth = np.asarray(depth_mm, dtype=float)
    if np.any(depth <= 0):
        raise GeometryError("depth must be positive")
    local = np.stack(
        [cam.pixel_scale * pix[..., 0], cam.pixel_scale * pix[..., 1], depth], axis=-1
    )
    return local @ cam.rotation.T + cam.translation_mm


def project_point(q, cam: CameraModel) -> Tuple[np.ndarray, np.ndarray]:
    """Inverse of unproject_pixel: returns (centered pixel coords, depth)."""
    pts = np.asarray(q, dtype=float)
    local = (pts - cam.translation_mm) @ cam.rotation
    depth = local[..., 2]
    if np.any(depth <= 0):
        raise GeometryError("point lies behind the camera")
    pix = local[..., :2] / cam.pixel_scale
    return pix, depth


def project_points_unchecked(q: np.ndarray, cam: CameraModel) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised projection without the behind-camera check; the renderer culls."""
    local = (q - cam.translation_mm) @ cam.rotation
    return local[:, :2] / cam.pixel_scale, local[:, 2]


def look_at_camera(cfg: CameraConfig) -> CameraModel:
    """Top-down camera tilted about the world x axis, standing off from look_at_mm."""
    down = np.diag([1.0, -1.0, -1.0])
    rot = Rotation.from_euler("x", cfg.tilt_deg, degrees=True).as_matrix() @ down
    target = np.asarray(cfg.look_at_mm, dtype=float)
    position = target - cfg.standoff_mm * rot[:, 2]
    return CameraModel(
        focal_px=cfg.focal_px,
        baseline_mm=cfg.baseline_mm,
        pixel_scale=cfg.pixel_scale,
        rotation=rot,
        translation_mm=position,
        width_px=cfg.width_px,
        height_px=cfg.height_px,
    )


def orbit_camera(cam: CameraModel, look_at_mm, roll_rad: float, pitch_rad: float,
                 yaw_rad: float, distance_delta_mm: float) -> CameraModel:
    """Perturb camera orientation about its own axes while keeping look_at_mm in view."""
    target = np.asarray(look_at_mm, dtype=float)
    standoff = float(np.dot(target - cam.translation_mm, cam.view_axis))
    delta = Rotation.from_euler("xyz", [pitch_rad, yaw_rad, roll_rad]).as_matrix()
    rot = cam.rotation @ delta
    position = target - (standoff + distance_delta_mm) * rot[:, 2]
    return cam.with_pose(Pose(rot, position))
