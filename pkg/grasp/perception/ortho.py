from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OrthoProjection:
    """n x n images indexed [x, y]. depth holds (z index + 1), 0 where the column is empty."""

    depth: np.ndarray
    mask: np.ndarray

    @property
    def n(self) -> int:
        return self.depth.shape[0]

    def z_index(self) -> np.ndarray:
        """Projected z index per column, -1 where empty."""
        return self.depth.astype(np.int64) - 1


def ortho_project(indices: np.ndarray, n: int, top_surface: bool = False) -> OrthoProjection:
    """Project voxels along z: lowest z per column (highest with top_surface)."""
    idx = np.asarray(indices, dtype=np.int64).reshape(-1, 3)
    depth = np.zeros((n, n), dtype=np.int64)
    if idx.shape[0]:
        x, y, z = idx[:, 0], idx[:, 1], idx[:, 2] + 1
        if top_surface:
            np.maximum.at(depth, (x, y), z)
        else:
            depth[x, y] = n + 1
            np.minimum.at(depth, (x, y), z)
    return OrthoProjection(depth=depth, mask=depth > 0)
