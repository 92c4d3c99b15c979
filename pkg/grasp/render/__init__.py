from .raster import GRIPPER, TARGET, MaskSet, render_depth_and_masks, splat
from .stereo_pair import depth_plane, disparity_from_depth, render_stereo_pair, stereo_pair_from_depth

__all__ = [
    "GRIPPER",
    "MaskSet",
    "TARGET",
    "depth_plane",
    "disparity_from_depth",
    "render_depth_and_masks",
    "render_stereo_pair",
    "splat",
    "stereo_pair_from_depth",
]
