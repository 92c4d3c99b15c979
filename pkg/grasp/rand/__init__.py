from .corruption import corrupt_depth, cutout_masks, gaussian_kernel
from .samplers import (
    CameraNoise,
    MovingCamera,
    camera_noise_bounds,
    perturb_action,
    sample_camera_noise,
    sample_object_scale,
)

__all__ = [
    "CameraNoise",
    "MovingCamera",
    "camera_noise_bounds",
    "corrupt_depth",
    "cutout_masks",
    "gaussian_kernel",
    "perturb_action",
    "sample_camera_noise",
    "sample_object_scale",
]
