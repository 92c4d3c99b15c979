"""Primitive target objects as dense oriented surface samples. Samples are
stratified on the surface parameterisation, jittered by the caller's rng,
and centered on their centroid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from grasp.errors import ObjectScaleError, UnknownObjectError
from grasp.geometry.pose import Pose, transform

KINDS = ("needle", "block", "rod", "sphere")

NEEDLE_ARC_RADIUS_MM = 9.0
NEEDLE_TUBE_RADIUS_MM = 1.0
BLOCK_SIDE_MM = 10.0
ROD_RADIUS_MM = 2.0
ROD_LENGTH_MM = 20.0
DEFAULT_DENSITY = 20.0

Surface = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class ObjectModel:
    kind: str
    scale: float
    pose: Pose
    local_points: np.ndarray
    local_normals: np.ndarray

    @property
    def surface_points_mm(self) -> np.ndarray:
        return transform(self.pose, self.local_points)

    @property
    def surface_normals(self) -> np.ndarray:
        return self.local_normals @ self.pose.rotation.T

    def placed(self, pose: Pose) -> "ObjectModel":
        return ObjectModel(self.kind, self.scale, pose, self.local_points, self.local_normals)


def spawn_object(kind: str, scale: float, rng: np.random.Generator, *,
                 density: float = DEFAULT_DENSITY, sphere_radius_mm: float = 5.0) -> ObjectModel:
    """Sample a primitive at unit scale with `density` points per mm^2, then scale it."""
    sampler = _SAMPLERS.get(kind)
    if sampler is None:
        raise UnknownObjectError(f"unknown object kind: {kind}")
    if scale <= 0:
        raise ObjectScaleError(f"object scale must be positive, got {scale}")
    spacing = 1.0 / math.sqrt(density)
    if kind == "sphere":
        points, normals = _sample_sphere(sphere_radius_mm, spacing, rng)
    else:
        points, normals = sampler(spacing, rng)
    points = points - points.mean(axis=0)
    return ObjectModel(kind, float(scale), Pose.identity(), points * scale, normals)


def _grid(n_u: int, n_v: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    u = (np.arange(n_u)[:, None] + rng.random((n_u, n_v))) / n_u
    v = (np.arange(n_v)[None, :] + rng.random((n_u, n_v))) / n_v
    return u.ravel(), v.ravel()


def _sample_needle(spacing: float, rng: np.random.Generator) -> Surface:
    big, small = NEEDLE_ARC_RADIUS_MM, NEEDLE_TUBE_RADIUS_MM
    n_phi = math.ceil(math.pi * big / spacing)
    n_beta = math.ceil(2 * math.pi * small / spacing)
    u, v = _grid(n_phi, n_beta, rng)
    phi = u * math.pi
    beta = v * 2 * math.pi
    ring = big + small * np.cos(beta)
    points = np.stack([ring * np.cos(phi), ring * np.sin(phi), small * np.sin(beta)], axis=1)
    normals = np.stack([np.cos(beta) * np.cos(phi), np.cos(beta) * np.sin(phi), np.sin(beta)], axis=1)
    return points, normals


def _sample_block(spacing: float, rng: np.random.Generator) -> Surface:
    half = BLOCK_SIDE_MM / 2
    n = math.ceil(BLOCK_SIDE_MM / spacing)
    points, normals = [], []
    for axis in range(3):
        for sign in (-1.0, 1.0):
            u, v = _grid(n, n, rng)
            face = np.empty((u.size, 3))
            others = [a for a in range(3) if a != axis]
            face[:, axis] = sign * half
            face[:, others[0]] = (u - 0.5) * BLOCK_SIDE_MM
            face[:, others[1]] = (v - 0.5) * BLOCK_SIDE_MM
            normal = np.zeros((u.size, 3))
            normal[:, axis] = sign
            points.append(face)
            normals.append(normal)
    return np.concatenate(points), np.concatenate(normals)


def _sample_rod(spacing: float, rng: np.random.Generator) -> Surface:
    radius, length = ROD_RADIUS_MM, ROD_LENGTH_MM
    n_len = math.ceil(length / spacing)
    n_ang = math.ceil(2 * math.pi * radius / spacing)
    u, v = _grid(n_len, n_ang, rng)
    ang = v * 2 * math.pi
    side = np.stack([(u - 0.5) * length, radius * np.cos(ang), radius * np.sin(ang)], axis=1)
    side_n = np.stack([np.zeros_like(ang), np.cos(ang), np.sin(ang)], axis=1)
    caps, caps_n = [], []
    for sign in (-1.0, 1.0):
        disk = _disk(radius, spacing, rng)
        cap = np.column_stack([np.full(len(disk), sign * length / 2), disk])
        caps.append(cap)
        caps_n.append(np.tile([sign, 0.0, 0.0], (len(disk), 1)))
    return np.concatenate([side] + caps), np.concatenate([side_n] + caps_n)


def _disk(radius: float, spacing: float, rng: np.random.Generator) -> np.ndarray:
    n_r = max(1, math.ceil(radius / spacing))
    n_a = math.ceil(2 * math.pi * radius / spacing)
    u, v = _grid(n_r, n_a, rng)
    r = radius * np.sqrt(u)
    a = v * 2 * math.pi
    return np.stack([r * np.cos(a), r * np.sin(a)], axis=1)


def _sample_sphere(radius: float, spacing: float, rng: np.random.Generator) -> Surface:
    count = math.ceil(4 * math.pi * radius * radius / (spacing * spacing))
    k = np.arange(count) + 0.5
    polar = np.arccos(1 - 2 * k / count)
    azimuth = math.pi * (1 + 5 ** 0.5) * k + rng.random() * 2 * math.pi
    normals = np.stack(
        [np.cos(azimuth) * np.sin(polar), np.sin(azimuth) * np.sin(polar), np.cos(polar)], axis=1
    )
    return radius * normals, normals


_SAMPLERS: Dict[str, Callable[[float, np.random.Generator], Surface]] = {
    "needle": _sample_needle,
    "block": _sample_block,
    "rod": _sample_rod,
    "sphere": lambda spacing, rng: _sample_sphere(5.0, spacing, rng),
}
