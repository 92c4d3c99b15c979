"""Each surface sample lands on one pixel; the nearest sample wins the
z-buffer and its owner label defines the masks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from grasp.geometry.camera import CameraModel, project_points_unchecked

BACKGROUND = 0
GRIPPER = 1
TARGET = 2


@dataclass(frozen=True)
class MaskSet:
    gripper: np.ndarray
    target: np.ndarray

    def as_list(self) -> Sequence[np.ndarray]:
        return [self.gripper, self.target]

    def union(self) -> np.ndarray:
        return self.gripper | self.target


def splat(points: np.ndarray, labels: np.ndarray, cam: CameraModel,
          normals: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Z-buffered splat; returns (depth mm, owner label) images, 0 = no hit."""
    h, w = cam.height_px, cam.width_px
    depth_img = np.zeros((h, w), dtype=float)
    owner = np.zeros((h, w), dtype=np.uint8)
    if len(points) == 0:
        return depth_img, owner

    pts = np.asarray(points, dtype=float)
    labels = np.asarray(labels)
    if normals is not None:
        facing = (np.asarray(normals) @ cam.view_axis) < 0
        pts, labels = pts[facing], labels[facing]

    pix, depth = project_points_unchecked(pts, cam)
    cols, rows = cam.raster(pix).T
    keep = (depth > 0) & (cols >= 0) & (cols < w) & (rows >= 0) & (rows < h)
    cols, rows, depth, labels = cols[keep], rows[keep], depth[keep], labels[keep]
    if depth.size == 0:
        return depth_img, owner

    linear = rows * w + cols
    order = np.lexsort((labels, depth, linear))
    linear, depth, labels = linear[order], depth[order], labels[order]
    _, first = np.unique(linear, return_index=True)
    depth_img.ravel()[linear[first]] = depth[first]
    owner.ravel()[linear[first]] = labels[first]
    return depth_img, owner


def render_depth_and_masks(scene, cam: CameraModel) -> Tuple[np.ndarray, MaskSet]:
    """Render the gripper and the target of a SceneState."""
    grip_pts, grip_n = scene.gripper_surface()
    obj_pts = scene.target.surface_points_mm
    obj_n = scene.target.surface_normals
    points = np.concatenate([grip_pts, obj_pts])
    normals = np.concatenate([grip_n, obj_n])
    labels = np.concatenate([
        np.full(len(grip_pts), GRIPPER, dtype=np.uint8),
        np.full(len(obj_pts), TARGET, dtype=np.uint8),
    ])
    depth, owner = splat(points, labels, cam, normals=normals)
    return depth, MaskSet(gripper=owner == GRIPPER, target=owner == TARGET)
