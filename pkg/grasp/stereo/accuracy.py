"""Textured fronto-parallel planes rendered, matched and compared with ground truth."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence

import numpy as np

from grasp.config import StereoConfig
from grasp.geometry.camera import CameraModel, unproject_pixel
from grasp.render.stereo_pair import depth_plane, stereo_pair_from_depth
from .depth import disparity_to_depth
from .matcher import match_disparity

DEFAULT_HEIGHTS_MM = (50.0, 100.0, 200.0)
DEFAULT_PAIR_DISTANCES_MM = (10.0, 20.0, 30.0)
PAIRS_PER_DISTANCE = 200


@dataclass(frozen=True)
class PlaneAccuracy:
    height_mm: float
    matched_fraction: float
    mean_abs_error_mm: float
    max_abs_error_mm: float
    pair_errors_mm: Dict[float, float] = field(default_factory=dict)

    def as_row(self) -> Dict[str, float]:
        row = {
            "height_mm": self.height_mm,
            "matched_fraction": self.matched_fraction,
            "mean_abs_error_mm": self.mean_abs_error_mm,
            "max_abs_error_mm": self.max_abs_error_mm,
        }
        for dist, err in sorted(self.pair_errors_mm.items()):
            row[f"pair_{dist:g}mm_error"] = err
        return row


def plane_accuracy(cam: CameraModel, height_mm: float, stereo: StereoConfig, seed: int = 0,
                   pair_distances: Sequence[float] = DEFAULT_PAIR_DISTANCES_MM) -> PlaneAccuracy:
    truth = depth_plane(cam, height_mm)
    left, right = stereo_pair_from_depth(truth, cam, seed, stereo.texture_cells)
    disparity = match_disparity(
        left, right, stereo.block, stereo.search_range, stereo.uniqueness, stereo.lr_tolerance
    )
    estimate = disparity_to_depth(disparity, cam, stereo.min_disparity_px)
    matched = estimate > 0
    if not np.any(matched):
        return PlaneAccuracy(height_mm, 0.0, float("nan"), float("nan"), {})
    err = np.abs(estimate[matched] - truth[matched])
    rng = np.random.default_rng(seed)
    pairs = {d: _pair_error(cam, truth, estimate, d, rng) for d in pair_distances}
    return PlaneAccuracy(
        height_mm=float(height_mm),
        matched_fraction=float(matched.mean()),
        mean_abs_error_mm=float(err.mean()),
        max_abs_error_mm=float(err.max()),
        pair_errors_mm=pairs,
    )


def depth_check(cam: CameraModel, stereo: StereoConfig, seed: int = 0,
                heights: Iterable[float] = DEFAULT_HEIGHTS_MM) -> List[PlaneAccuracy]:
    return [plane_accuracy(cam, h, stereo, seed) for h in heights]


def _pair_error(cam: CameraModel, truth: np.ndarray, estimate: np.ndarray,
                distance_mm: float, rng: np.random.Generator) -> float:
    """Mean |estimated - true| length of row-aligned pixel pairs distance_mm apart."""
    offset = int(round(distance_mm / cam.pixel_scale))
    both = (estimate[:, :-offset] > 0) & (estimate[:, offset:] > 0) if offset > 0 else estimate > 0
    rows, cols = np.nonzero(both)
    if rows.size == 0:
        return float("nan")
    pick = rng.choice(rows.size, size=min(PAIRS_PER_DISTANCE, rows.size), replace=False)
    rows, cols = rows[pick], cols[pick]
    errors = []
    for est_img in (estimate, truth):
        a = _points(cam, est_img, rows, cols)
        b = _points(cam, est_img, rows, cols + offset)
        errors.append(np.linalg.norm(a - b, axis=1))
    return float(np.mean(np.abs(errors[0] - errors[1])))


def _points(cam: CameraModel, depth: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    raster = np.stack([cols, rows], axis=1)
    return unproject_pixel(cam.centered(raster), depth[rows, cols], cam)
