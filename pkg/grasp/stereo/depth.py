from __future__ import annotations

import numpy as np

from grasp.geometry.camera import CameraModel

MIN_DISPARITY_PX = 0.1


def disparity_to_depth(disparity: np.ndarray, cam: CameraModel,
                       min_disparity: float = MIN_DISPARITY_PX) -> np.ndarray:
    """d = C_f * C_b / w; no-match and w <= min_disparity give depth 0."""
    disp = np.asarray(disparity, dtype=float)
    depth = np.zeros_like(disp)
    ok = disp > min_disparity
    depth[ok] = cam.focal_px * cam.baseline_mm / disp[ok]
    return depth
