from .camera import CameraModel, look_at_camera, orbit_camera, project_point, unproject_pixel
from .pose import Pose, compose, transform

__all__ = [
    "CameraModel",
    "Pose",
    "compose",
    "look_at_camera",
    "orbit_camera",
    "project_point",
    "transform",
    "unproject_pixel",
]
