from __future__ import annotations

from typing import Sequence

import numpy as np

LATTICE_MARGIN_PX = 512


class ValueNoise:
    """Seeded smooth value noise on a fixed lattice; deterministic per (seed, size)."""

    def __init__(self, seed: int, width: int, height: int, cells: Sequence[int] = (8, 4)):
        rng = np.random.default_rng(seed)
        self._octaves = []
        for cell in cells:
            nx = (width + 2 * LATTICE_MARGIN_PX) // cell + 3
            ny = height // cell + 3
            self._octaves.append((float(cell), rng.random((ny, nx))))

    def __call__(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        total = np.zeros(np.broadcast(u, v).shape)
        for cell, lattice in self._octaves:
            total += _smooth_sample(lattice, (u + LATTICE_MARGIN_PX) / cell, v / cell)
        return total / len(self._octaves)

    def render(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Noise quantized to 8 bits with half-up rounding."""
        return np.floor(self(u, v) * 255.0 + 0.5).clip(0, 255).astype(np.uint8)


def _smooth_sample(lattice: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    x = np.clip(x, 0.0, lattice.shape[1] - 2.000001)
    y = np.clip(y, 0.0, lattice.shape[0] - 2.000001)
    x0 = np.floor(x).astype(np.int64)
    y0 = np.floor(y).astype(np.int64)
    fx = _fade(x - x0)
    fy = _fade(y - y0)
    top = lattice[y0, x0] * (1 - fx) + lattice[y0, x0 + 1] * fx
    bottom = lattice[y0 + 1, x0] * (1 - fx) + lattice[y0 + 1, x0 + 1] * fx
    return top * (1 - fy) + bottom * fy


def _fade(t: np.ndarray) -> np.ndarray:
    return t * t * (3 - 2 * t)
