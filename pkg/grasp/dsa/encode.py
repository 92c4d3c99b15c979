"""
Dynamic Spotlight Adaptation
============================
Packs the orthographic projections and the system states into a 64x64x3
uint8 observation: layer 0 depth, layer 1 masks, layer 2 system states.
The spatial layers are cropped to a window that follows the gripper.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from grasp.config import DsaConfig
from grasp.errors import GripperLostError, ShapeError

LAYER_SIZE = 64


@dataclass(frozen=True)
class ZoomWindow:
    x0: int
    x1: int
    y0: int
    y1: int

    @property
    def side(self) -> int:
        return self.x1 - self.x0

    def crop(self, image: np.ndarray) -> np.ndarray:
        return image[self.x0 : self.x1, self.y0 : self.y1]

    def contains(self, x: int, y: int) -> bool:
        return self.x0 <= x < self.x1 and self.y0 <= y < self.y1

    @classmethod
    def full(cls, n: int) -> "ZoomWindow":
        return cls(0, n, 0, n)


@dataclass(frozen=True)
class DsaImage:
    layers: np.ndarray

    @property
    def depth(self) -> np.ndarray:
        return self.layers[..., 0]

    @property
    def mask(self) -> np.ndarray:
        return self.layers[..., 1]

    @property
    def state(self) -> np.ndarray:
        return self.layers[..., 2]

    def tobytes(self) -> bytes:
        return self.layers.tobytes()


def round_half_up(values) -> np.ndarray:
    return np.floor(np.asarray(values, dtype=float) + 0.5)


def make_zoom(gripper_centroid: Optional[Sequence[float]], n: int, zoom: int) -> ZoomWindow:
    if gripper_centroid is None:
        raise GripperLostError("gripper centroid is absent")
    if not 0 < zoom <= n:
        raise ValueError("zoom side must lie in (0, n]")
    center = round_half_up(np.asarray(gripper_centroid[:2], dtype=float) * n).astype(int)
    lo = np.clip(center - zoom // 2, 0, n - zoom)
    return ZoomWindow(int(lo[0]), int(lo[0]) + zoom, int(lo[1]), int(lo[1]) + zoom)


def resize_nearest(image: np.ndarray, size: int = LAYER_SIZE) -> np.ndarray:
    """Nearest-neighbour resample: destination i reads source floor(i * N / size)."""
    rows = (np.arange(size) * image.shape[0]) // size
    cols = (np.arange(size) * image.shape[1]) // size
    return image[np.ix_(rows, cols)]


def _saturating_sum(layers: Sequence[np.ndarray], size: int) -> np.ndarray:
    total = np.zeros((size, size), dtype=np.int64)
    for layer in layers:
        total += layer
    return np.clip(total, 0, 255).astype(np.uint8)


def encode_depth_layer(ortho_depths: Sequence[np.ndarray], gripper_cz: float, n: int, zoom: int,
                       window: ZoomWindow, size: int = LAYER_SIZE) -> np.ndarray:
    """Truncate each ortho depth to a band around the gripper height, scale to 0..255, crop, resize.

    Ortho depths hold z index + 1 with 0 for empty columns.
    """
    lo = gripper_cz * n - zoom / 2.0
    hi = gripper_cz * n + zoom / 2.0
    scaled_layers = []
    for stored in ortho_depths:
        stored = np.asarray(stored)
        occupied = stored > 0
        z = np.clip(stored.astype(float) - 1.0, lo, hi)
        scaled = round_half_up(255.0 * (z - lo) / (hi - lo))
        scaled = np.where(occupied, scaled, 0).astype(np.int64)
        scaled_layers.append(resize_nearest(window.crop(scaled), size))
    return _saturating_sum(scaled_layers, size)


def encode_mask_layer(ortho_masks: Sequence[np.ndarray], encodings: Sequence[int],
                      window: ZoomWindow, size: int = LAYER_SIZE) -> np.ndarray:
    if len(ortho_masks) != len(encodings):
        raise ShapeError("one encoding per mask is required")
    parts = [
        resize_nearest(window.crop(np.asarray(m, dtype=np.int64) * int(code)), size)
        for m, code in zip(ortho_masks, encodings)
    ]
    return _saturating_sum(parts, size)


def encode_state_layer(states: Sequence[float], band_height: int = 10,
                       band_rows: Sequence[int] = (0, 21, 42), size: int = LAYER_SIZE) -> np.ndarray:
    values = np.asarray(states, dtype=float)
    if values.shape != (len(band_rows),):
        raise ShapeError(f"expected {len(band_rows)} system states")
    if np.any(values < 0) or np.any(values > 1):
        raise ValueError("system states must lie in [0, 1]")
    layer = np.zeros((size, size), dtype=np.uint8)
    for start, value in zip(band_rows, values):
        layer[start : start + band_height, :] = int(round_half_up(255.0 * value))
    return layer


def assemble(layers: Sequence[np.ndarray]) -> DsaImage:
    if len(layers) != 3:
        raise ShapeError(f"a DSA image has 3 layers, got {len(layers)}")
    shapes = {np.asarray(layer).shape for layer in layers}
    if len(shapes) != 1 or len(next(iter(shapes))) != 2:
        raise ShapeError(f"layers must be equal 2-D arrays, got {sorted(shapes)}")
    return DsaImage(np.stack([np.asarray(layer, dtype=np.uint8) for layer in layers], axis=-1))


def encode_observation(perception, states, cfg: DsaConfig) -> DsaImage:
    """Full DSA encode of a Perception; full-frame window at mid height when the gripper is absent."""
    n = perception.n
    gripper = perception.gripper
    if gripper.present:
        window = make_zoom(gripper.centroid, n, cfg.zoom)
        cz = float(gripper.centroid[2])
    else:
        window = ZoomWindow.full(n)
        cz = 0.5
    objects = perception.objects()
    depth = encode_depth_layer([o.ortho.depth for o in objects], cz, n, cfg.zoom, window, cfg.size)
    mask = encode_mask_layer(
        [o.ortho.mask for o in objects], [cfg.gripper_code, cfg.target_code], window, cfg.size
    )
    values = states.as_tuple() if hasattr(states, "as_tuple") else states
    state = encode_state_layer(values, cfg.band_height, cfg.band_rows, cfg.size)
    return assemble([depth, mask, state])
