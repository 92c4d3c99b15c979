"""depth + masks -> segment point clouds -> voxels -> neighbour filter ->
centroids and orthographic projections, for the gripper and the target.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from grasp.config import PerceptionConfig
from grasp.geometry.camera import CameraModel
from .ortho import OrthoProjection, ortho_project
from .voxels import GridSpec, centroids, depth_to_points, filter_voxels, voxelize

GRIPPER_ID = 1
TARGET_ID = 2


@dataclass(frozen=True)
class ObjectPerception:
    object_id: int
    n_points: int
    dropped: int
    voxels: np.ndarray
    centroid: Optional[np.ndarray]
    ortho: OrthoProjection

    @property
    def present(self) -> bool:
        return self.centroid is not None


@dataclass(frozen=True)
class Perception:
    n: int
    gripper: ObjectPerception
    target: ObjectPerception

    def objects(self) -> List[ObjectPerception]:
        return [self.gripper, self.target]


def perceive_object(depth: np.ndarray, mask: np.ndarray, cam: CameraModel, grid: GridSpec,
                    cfg: PerceptionConfig, object_id: int) -> ObjectPerception:
    segment = depth_to_points(depth, mask, cam, object_id, grid, cfg.inflation)
    vox = voxelize(segment, grid)
    kept = filter_voxels(vox.indices, cfg.filter_radius, cfg.filter_min_neighbors)
    return ObjectPerception(
        object_id=object_id,
        n_points=len(segment),
        dropped=vox.dropped,
        voxels=kept,
        centroid=centroids(kept, grid.n),
        ortho=ortho_project(kept, grid.n, cfg.ortho_top_surface),
    )


def perceive(depth: np.ndarray, masks, cam: CameraModel, workspace, cfg: PerceptionConfig) -> Perception:
    grid = GridSpec.from_workspace(workspace, cfg.voxel_resolution)
    return Perception(
        n=grid.n,
        gripper=perceive_object(depth, masks.gripper, cam, grid, cfg, GRIPPER_ID),
        target=perceive_object(depth, masks.target, cam, grid, cfg, TARGET_ID),
    )
