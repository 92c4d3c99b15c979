"""Sum-of-absolute-differences block matching on rectified 8-bit pairs.
Left pixel (u, v) is compared with right pixel (u - d, v) for every
candidate d in [0, search_range]. Winners pass a uniqueness ratio and a
left-right consistency check, then get a parabolic sub-pixel fit.
Winners on the top candidate, or whose d+1 block leaves the right image,
are dropped.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np
from scipy.ndimage import correlate1d

from grasp.errors import ShapeError

NO_MATCH = -1.0
DEFAULT_CHUNK_ROWS = 64


def match_disparity(left: np.ndarray, right: np.ndarray, block: int = 9, search_range: int = 128,
                    uniqueness: float = 0.9, lr_tolerance: float = 1.0,
                    chunk_rows: int = DEFAULT_CHUNK_ROWS) -> np.ndarray:
    """Disparity image in pixels; NO_MATCH (-1) where no reliable match exists."""
    left = np.asarray(left)
    right = np.asarray(right)
    if left.shape != right.shape or left.ndim != 2:
        raise ShapeError(f"stereo images must be equal 2-D arrays, got {left.shape} and {right.shape}")
    if block < 3 or block % 2 == 0:
        raise ValueError("block must be an odd integer >= 3")
    if search_range < 0:
        raise ValueError("search_range must be non-negative")

    height, _ = left.shape
    half = block // 2
    lhs = left.astype(np.int64)
    rhs = right.astype(np.int64)
    disparity = np.full(left.shape, NO_MATCH)
    for r0 in range(0, height, chunk_rows):
        r1 = min(height, r0 + chunk_rows)
        a0, a1 = max(0, r0 - half), min(height, r1 + half)
        cost = _cost_volume(lhs[a0:a1], rhs[a0:a1], search_range, block)
        cost = cost[:, r0 - a0 : r0 - a0 + (r1 - r0)]
        disparity[r0:r1] = _select(cost, uniqueness, lr_tolerance)
    return disparity


def _cost_volume(left: np.ndarray, right: np.ndarray, search_range: int, block: int) -> np.ndarray:
    """Box-summed SAD per candidate; inf where the block leaves the right image."""
    rows, width = left.shape
    half = block // 2
    ones = np.ones(block)
    cost = np.full((search_range + 1, rows, width), np.inf)
    for d in range(min(search_range, width - 1) + 1):
        diff = np.zeros((rows, width), dtype=np.int64)
        diff[:, d:] = np.abs(left[:, d:] - right[:, : width - d])
        box = correlate1d(diff, ones, axis=1, mode="nearest")
        box = correlate1d(box, ones, axis=0, mode="nearest").astype(float)
        box[:, : d + half] = np.inf
        cost[d] = box
    return cost


def _select(cost: np.ndarray, uniqueness: float, lr_tolerance: float) -> np.ndarray:
    n_disp, rows, width = cost.shape
    best_d = np.argmin(cost, axis=0)
    best = np.take_along_axis(cost, best_d[None], axis=0)[0]

    # second best, ignoring the winner's immediate neighbours
    masked = cost.copy()
    for off in (-1, 0, 1):
        idx = np.clip(best_d + off, 0, n_disp - 1)
        np.put_along_axis(masked, idx[None], np.inf, axis=0)
    second = masked.min(axis=0)

    prev_c, next_c = _neighbour_costs(cost, best_d)
    valid = np.isfinite(best) & ((best < uniqueness * second) | ~np.isfinite(second))
    # kept winners sit below the top candidate with a finite d+1 cost
    valid &= (best_d < n_disp - 1) & np.isfinite(next_c)
    valid &= _left_right_consistent(cost, best_d, lr_tolerance)

    disparity = best_d.astype(float) + _subpixel_offset(prev_c, best, next_c, best_d > 0)
    return np.where(valid, disparity, NO_MATCH)


def _neighbour_costs(cost: np.ndarray, best_d: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    n_disp = cost.shape[0]
    prev_c = np.take_along_axis(cost, np.clip(best_d - 1, 0, n_disp - 1)[None], axis=0)[0]
    next_c = np.take_along_axis(cost, np.clip(best_d + 1, 0, n_disp - 1)[None], axis=0)[0]
    return prev_c, next_c


def _left_right_consistent(cost: np.ndarray, best_d: np.ndarray, tolerance: float) -> np.ndarray:
    """Right-image winners, looked up through the left winners, must agree."""
    n_disp, rows, width = cost.shape
    right_cost = np.full_like(cost, np.inf)
    for d in range(n_disp):
        if d < width:
            right_cost[d, :, : width - d] = cost[d, :, d:]
    right_d = np.argmin(right_cost, axis=0)

    cols = np.arange(width)[None, :] - best_d
    inside = cols >= 0
    row_idx = np.broadcast_to(np.arange(rows)[:, None], cols.shape)
    back = np.zeros_like(best_d)
    back[inside] = right_d[row_idx[inside], cols[inside]]
    return inside & (np.abs(back - best_d) <= tolerance)


def _subpixel_offset(prev_c: np.ndarray, best: np.ndarray, next_c: np.ndarray, interior: np.ndarray) -> np.ndarray:
    with np.errstate(invalid="ignore", divide="ignore"):
        denom = prev_c - 2.0 * best + next_c
        fit = interior & np.isfinite(prev_c) & np.isfinite(next_c) & (denom > 0) & (best > 0)
        offset = np.where(fit, (prev_c - next_c) / (2.0 * denom), 0.0)
    return np.clip(offset, -0.5, 0.5)


def matched_fraction(disparity: np.ndarray, region: Tuple[slice, slice] = (slice(None), slice(None))) -> float:
    sub = disparity[region]
    return float(np.mean(sub >= 0)) if sub.size else 0.0
