from .encode import (
    LAYER_SIZE,
    DsaImage,
    ZoomWindow,
    assemble,
    encode_depth_layer,
    encode_mask_layer,
    encode_observation,
    encode_state_layer,
    make_zoom,
    resize_nearest,
    round_half_up,
)

__all__ = [
    "DsaImage",
    "LAYER_SIZE",
    "ZoomWindow",
    "assemble",
    "encode_depth_layer",
    "encode_mask_layer",
    "encode_observation",
    "encode_state_layer",
    "make_zoom",
    "resize_nearest",
    "round_half_up",
]
