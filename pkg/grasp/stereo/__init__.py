from .accuracy import PlaneAccuracy, depth_check, plane_accuracy
from .depth import disparity_to_depth
from .matcher import NO_MATCH, match_disparity

__all__ = [
    "NO_MATCH",
    "PlaneAccuracy",
    "depth_check",
    "disparity_to_depth",
    "match_disparity",
    "plane_accuracy",
]
