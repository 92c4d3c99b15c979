"""Segment point clouds are binned into an n^3 grid spanning the workspace.
Occupied voxels are (k, 3) integer index arrays, unique and sorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from grasp.errors import ShapeError
from grasp.geometry.camera import CameraModel, unproject_pixel


@dataclass(frozen=True)
class GridSpec:
    n: int
    min_mm: np.ndarray
    max_mm: np.ndarray

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("voxel resolution must be positive")
        object.__setattr__(self, "min_mm", np.asarray(self.min_mm, dtype=float).reshape(3))
        object.__setattr__(self, "max_mm", np.asarray(self.max_mm, dtype=float).reshape(3))

    @classmethod
    def from_workspace(cls, workspace, n: int) -> "GridSpec":
        return cls(n, workspace.min_mm, workspace.max_mm)

    def inflated(self, fraction: float):
        """(min, max) of the box grown by `fraction` of its extent, split across both sides."""
        pad = (self.max_mm - self.min_mm) * fraction / 2.0
        return self.min_mm - pad, self.max_mm + pad


@dataclass(frozen=True)
class PointCloudSegment:
    object_id: int
    points: np.ndarray

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Voxelization:
    indices: np.ndarray
    dropped: int

    def __len__(self) -> int:
        return len(self.indices)


def depth_to_points(depth: np.ndarray, mask: np.ndarray, cam: CameraModel, object_id: int = 0,
                    grid: Optional[GridSpec] = None, inflation: float = 0.1) -> PointCloudSegment:
    """Unproject every masked pixel with positive depth.

    With a grid, points outside the workspace inflated by `inflation` are discarded.
    """
    depth = np.asarray(depth, dtype=float)
    mask = np.asarray(mask, dtype=bool)
    if depth.shape != mask.shape:
        raise ShapeError(f"depth {depth.shape} and mask {mask.shape} are not aligned")
    rows, cols = np.nonzero(mask & (depth > 0))
    if rows.size == 0:
        return PointCloudSegment(object_id, np.empty((0, 3)))
    pix = cam.centered(np.stack([cols, rows], axis=1))
    points = unproject_pixel(pix, depth[rows, cols], cam)
    if grid is not None:
        lo, hi = grid.inflated(inflation)
        points = points[np.all((points >= lo) & (points <= hi), axis=1)]
    return PointCloudSegment(object_id, points)


def voxelize(points, grid: GridSpec) -> Voxelization:
    pts = np.asarray(getattr(points, "points", points), dtype=float).reshape(-1, 3)
    inside = np.all((pts >= grid.min_mm) & (pts <= grid.max_mm), axis=1)
    pts = pts[inside]
    dropped = int(inside.size - pts.shape[0])
    if pts.shape[0] == 0:
        return Voxelization(np.empty((0, 3), dtype=np.int64), dropped)
    idx = np.floor(grid.n * (pts - grid.min_mm) / (grid.max_mm - grid.min_mm)).astype(np.int64)
    idx = np.clip(idx, 0, grid.n - 1)
    return Voxelization(np.unique(idx, axis=0), dropped)


def filter_voxels(indices: np.ndarray, radius_vox: float, min_neighbors: int) -> np.ndarray:
    """Keep voxels with at least min_neighbors others within radius_vox (inclusive)."""
    if radius_vox <= 0:
        raise ValueError("radius_vox must be positive")
    idx = np.asarray(indices, dtype=np.int64).reshape(-1, 3)
    if idx.shape[0] == 0:
        return idx
    tree = cKDTree(idx)
    counts = tree.query_ball_point(idx, r=radius_vox * (1 + 1e-9), return_length=True) - 1
    return idx[counts >= min_neighbors]


def centroids(indices: np.ndarray, n: int) -> Optional[np.ndarray]:
    """Mean voxel index over the set divided by n; None for an empty set."""
    idx = np.asarray(indices).reshape(-1, 3)
    if idx.shape[0] == 0:
        return None
    return idx.mean(axis=0) / n
