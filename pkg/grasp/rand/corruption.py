"""Depth noise plus support-restricted Gaussian blur, and square/circle
cutouts that remove mask pixels.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np
from scipy.ndimage import convolve

CUTOUT_OVERSHOOT = 0.05


def gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    if size < 1 or size % 2 == 0:
        raise ValueError("kernel size must be a positive odd integer")
    half = size // 2
    ax = np.arange(-half, half + 1, dtype=float)
    if sigma <= 0:
        kernel = np.zeros((size, size))
        kernel[half, half] = 1.0
        return kernel
    kernel = np.exp(-(ax[:, None] ** 2 + ax[None, :] ** 2) / (2.0 * sigma ** 2))
    return kernel / kernel.sum()


def corrupt_depth(depth: np.ndarray, rng: np.random.Generator, noise: float = 0.005,
                  kernel_size: int = 3, sigma: float = 0.3) -> np.ndarray:
    """Uniform noise scaled by the dynamic range, then a Gaussian blur over hit pixels only."""
    img = np.asarray(depth, dtype=float)
    hit = img > 0
    out = img.copy()
    if not np.any(hit):
        return out
    dynamic_range = float(img[hit].max() - img[hit].min())
    out[hit] += rng.uniform(-noise, noise, int(hit.sum())) * dynamic_range

    kernel = gaussian_kernel(kernel_size, sigma)
    support = hit.astype(float)
    num = convolve(out * support, kernel, mode="constant", cval=0.0)
    den = convolve(support, kernel, mode="constant", cval=0.0)
    blurred = np.zeros_like(out)
    blurred[hit] = num[hit] / den[hit]
    return blurred


def cutout_masks(masks: Sequence[np.ndarray], rng: np.random.Generator,
                 amount: Tuple[float, float] = (0.0, 0.2),
                 size_px: Tuple[float, float] = (2.0, 20.0)) -> List[np.ndarray]:
    """Per mask, remove a sampled fraction of its area with random squares and circles."""
    out = []
    for mask in masks:
        fraction = float(rng.uniform(*amount)) if amount[1] > amount[0] else float(amount[0])
        out.append(_cut(np.asarray(mask, dtype=bool), rng, fraction, size_px))
    return out


def _cut(mask: np.ndarray, rng: np.random.Generator, fraction: float,
         size_px: Tuple[float, float]) -> np.ndarray:
    out = mask.copy()
    area = int(mask.sum())
    if area == 0 or fraction <= 0:
        return out
    goal = fraction * area
    cap = (fraction + CUTOUT_OVERSHOOT) * area
    removed = 0
    while removed < goal:
        rows, cols = np.nonzero(out)
        if rows.size == 0:
            break
        pick = int(rng.integers(rows.size))
        center = (int(rows[pick]), int(cols[pick]))
        size = float(rng.uniform(*size_px))
        circle = bool(rng.random() < 0.5)
        while True:
            region = _footprint(out.shape, center, size, circle) & out
            gain = int(region.sum())
            if removed + gain <= cap or size <= 1.0:
                break
            size /= 2.0
        if removed + gain > cap:
            break
        out[region] = False
        removed += gain
    return out


def _footprint(shape, center, size: float, circle: bool) -> np.ndarray:
    rows, cols = np.ogrid[0 : shape[0], 0 : shape[1]]
    dy = rows - center[0]
    dx = cols - center[1]
    half = size / 2.0
    if circle:
        return dx * dx + dy * dy <= max(half, 0.5) ** 2
    return (np.abs(dx) <= max(half, 0.5)) & (np.abs(dy) <= max(half, 0.5))
