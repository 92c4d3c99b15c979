from .ortho import OrthoProjection, ortho_project
from .pipeline import GRIPPER_ID, TARGET_ID, ObjectPerception, Perception, perceive, perceive_object
from .voxels import (
    GridSpec,
    PointCloudSegment,
    Voxelization,
    centroids,
    depth_to_points,
    filter_voxels,
    voxelize,
)

__all__ = [
    "GRIPPER_ID",
    "GridSpec",
    "ObjectPerception",
    "OrthoProjection",
    "Perception",
    "PointCloudSegment",
    "TARGET_ID",
    "Voxelization",
    "centroids",
    "depth_to_points",
    "filter_voxels",
    "ortho_project",
    "perceive",
    "perceive_object",
    "voxelize",
]
