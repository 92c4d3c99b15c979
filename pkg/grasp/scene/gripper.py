"""Wrist at the origin of the gripper frame. A vertical shaft rises above the
wrist; two jaw plates hang from it in the jaw frame, which is the gripper
frame rolled by the tilt angle about its x axis.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Tuple

import numpy as np

from grasp.geometry.pose import Pose, rot_x, rot_z

SHAFT_RADIUS_MM = 2.0
SHAFT_LENGTH_MM = 25.0
JAW_LENGTH_MM = 10.0
JAW_WIDTH_MM = 2.0
JAW_THICKNESS_MM = 0.8
OPEN_HALF_GAP_MM = 4.0
CLOSED_HALF_GAP_MM = 1.0
GRIPPER_SAMPLE_SEED = 20240611


def gripper_frame(position_mm: np.ndarray, yaw_rad: float) -> Pose:
    return Pose(rot_z(yaw_rad), position_mm)


def jaw_frame(position_mm: np.ndarray, yaw_rad: float, tilt_rad: float) -> Pose:
    return Pose(rot_z(yaw_rad) @ rot_x(tilt_rad), position_mm)


def capture_center_local(jaw_box_mm: Tuple[float, float, float]) -> np.ndarray:
    """Center of the capture box in the jaw frame."""
    return np.array([0.0, 0.0, -jaw_box_mm[2] / 2.0])


def in_capture_box(points_jaw: np.ndarray, jaw_box_mm: Tuple[float, float, float]) -> np.ndarray:
    half_x, half_y, depth = jaw_box_mm[0] / 2.0, jaw_box_mm[1] / 2.0, jaw_box_mm[2]
    return (
        (np.abs(points_jaw[:, 0]) <= half_x)
        & (np.abs(points_jaw[:, 1]) <= half_y)
        & (points_jaw[:, 2] <= 0.0)
        & (points_jaw[:, 2] >= -depth)
    )


@lru_cache(maxsize=16)
def gripper_surface(jaw_open: bool, tilt_rad: float, density: float) -> Tuple[np.ndarray, np.ndarray]:
    """Oriented surface samples of the gripper in the (unyawed) gripper frame."""
    rng = np.random.default_rng(GRIPPER_SAMPLE_SEED)
    spacing = 1.0 / math.sqrt(density)
    shaft_pts, shaft_n = _shaft(spacing, rng)
    half_gap = OPEN_HALF_GAP_MM if jaw_open else CLOSED_HALF_GAP_MM
    tilt = rot_x(tilt_rad)
    jaws_pts, jaws_n = [], []
    for sign in (-1.0, 1.0):
        center_x = sign * (half_gap + JAW_THICKNESS_MM / 2)
        pts, normals = _plate(center_x, spacing, rng)
        jaws_pts.append(pts @ tilt.T)
        jaws_n.append(normals @ tilt.T)
    points = np.concatenate([shaft_pts] + jaws_pts)
    normals = np.concatenate([shaft_n] + jaws_n)
    points.setflags(write=False)
    normals.setflags(write=False)
    return points, normals


def _shaft(spacing: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    n_len = math.ceil(SHAFT_LENGTH_MM / spacing)
    n_ang = math.ceil(2 * math.pi * SHAFT_RADIUS_MM / spacing)
    u = (np.arange(n_len)[:, None] + rng.random((n_len, n_ang))) / n_len
    v = (np.arange(n_ang)[None, :] + rng.random((n_len, n_ang))) / n_ang
    ang = (v * 2 * math.pi).ravel()
    z = (u * SHAFT_LENGTH_MM).ravel()
    side = np.stack([SHAFT_RADIUS_MM * np.cos(ang), SHAFT_RADIUS_MM * np.sin(ang), z], axis=1)
    side_n = np.stack([np.cos(ang), np.sin(ang), np.zeros_like(ang)], axis=1)
    n_r = max(1, math.ceil(SHAFT_RADIUS_MM / spacing))
    r = SHAFT_RADIUS_MM * np.sqrt((np.arange(n_r)[:, None] + rng.random((n_r, n_ang))) / n_r).ravel()
    a = ((np.arange(n_ang)[None, :] + rng.random((n_r, n_ang))) / n_ang).ravel() * 2 * math.pi
    cap = np.stack([r * np.cos(a), r * np.sin(a), np.full(r.size, SHAFT_LENGTH_MM)], axis=1)
    cap_n = np.tile([0.0, 0.0, 1.0], (r.size, 1))
    return np.concatenate([side, cap]), np.concatenate([side_n, cap_n])


def _plate(center_x: float, spacing: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Thin box spanning x = center_x +- t/2, |y| <= w/2, z in [-L, 0] (jaw frame)."""
    half = np.array([JAW_THICKNESS_MM / 2, JAW_WIDTH_MM / 2, JAW_LENGTH_MM / 2])
    center = np.array([center_x, 0.0, -JAW_LENGTH_MM / 2])
    points, normals = [], []
    for axis in range(3):
        others = [a for a in range(3) if a != axis]
        n_u = max(1, math.ceil(2 * half[others[0]] / spacing))
        n_v = max(1, math.ceil(2 * half[others[1]] / spacing))
        for sign in (-1.0, 1.0):
            u = ((np.arange(n_u)[:, None] + rng.random((n_u, n_v))) / n_u).ravel()
            v = ((np.arange(n_v)[None, :] + rng.random((n_u, n_v))) / n_v).ravel()
            face = np.empty((u.size, 3))
            face[:, axis] = sign * half[axis]
            face[:, others[0]] = (2 * u - 1) * half[others[0]]
            face[:, others[1]] = (2 * v - 1) * half[others[1]]
            normal = np.zeros((u.size, 3))
            normal[:, axis] = sign
            points.append(face + center)
            normals.append(normal)
    return np.concatenate(points), np.concatenate(normals)
