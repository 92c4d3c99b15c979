"""Rectified pairs from a depth render: the left image shows texture at
(u, v); the right image pixel (u, v) shows the surface seen by the left
camera at (u + w, v) with w = C_f * C_b / d.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from grasp.geometry.camera import CameraModel
from .raster import render_depth_and_masks
from .texture import ValueNoise

BACKGROUND_LEVEL = 0


def disparity_from_depth(depth: np.ndarray, cam: CameraModel) -> np.ndarray:
    disparity = np.zeros_like(depth, dtype=float)
    hit = depth > 0
    disparity[hit] = cam.focal_px * cam.baseline_mm / depth[hit]
    return disparity


def stereo_pair_from_depth(depth: np.ndarray, cam: CameraModel, texture_seed: int,
                           cells=(8, 4)) -> Tuple[np.ndarray, np.ndarray]:
    h, w = depth.shape
    noise = ValueNoise(texture_seed, w, h, cells)
    rows, cols = np.mgrid[0:h, 0:w].astype(float)
    hit = depth > 0
    disparity = disparity_from_depth(depth, cam)

    left = np.full((h, w), BACKGROUND_LEVEL, dtype=np.uint8)
    right = np.full((h, w), BACKGROUND_LEVEL, dtype=np.uint8)
    left[hit] = noise.render(cols[hit], rows[hit])
    right[hit] = noise.render(cols[hit] + disparity[hit], rows[hit])
    return left, right


def render_stereo_pair(scene, cam: CameraModel, texture_seed: int,
                       cells=(8, 4)) -> Tuple[np.ndarray, np.ndarray]:
    depth, _ = render_depth_and_masks(scene, cam)
    return stereo_pair_from_depth(depth, cam, texture_seed, cells)


def depth_plane(cam: CameraModel, depth_mm: float) -> np.ndarray:
    """Fronto-parallel plane filling the image at a constant depth."""
    return np.full((cam.height_px, cam.width_px), float(depth_mm))
