"""
Binary PGM (P5) images.
8-bit for masks, stereo pairs and DSA layers; 16-bit big-endian for depth,
where the pixel value is the depth in whole millimeters.
"""

from __future__ import annotations

from pathlib import Path
from typing import Dict, Tuple, Union

import numpy as np

from app.domain.entities import ImageIOError
from app.domain.ports import ImageStore

WHITESPACE = (9, 10, 13, 32)

PathLike = Union[str, Path]


def _read_token(data: bytes, idx: int) -> Tuple[bytes, int]:
    size = len(data)
    while idx < size:
        b = data[idx]
        if b == 35:  # '#'
            while idx < size and data[idx] not in (10, 13):
                idx += 1
        elif b in WHITESPACE:
            idx += 1
        else:
            break
    start = idx
    while idx < size and data[idx] not in WHITESPACE:
        idx += 1
    if start == idx:
        raise ImageIOError("Invalid PGM header")
    return data[start:idx], idx


def read_pgm(path: PathLike) -> np.ndarray:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ImageIOError(f"{path}: {exc}") from exc
    if not data.startswith(b"P5"):
        raise ImageIOError(f"{path} is not a binary PGM (P5) file")
    idx = 2
    try:
        width_b, idx = _read_token(data, idx)
        height_b, idx = _read_token(data, idx)
        maxval_b, idx = _read_token(data, idx)
        width, height, maxval = int(width_b), int(height_b), int(maxval_b)
    except (ImageIOError, ValueError) as exc:
        raise ImageIOError(f"{path}: invalid PGM header") from exc
    if not 0 < maxval < 65536:
        raise ImageIOError(f"{path}: maxval {maxval} out of range")
    idx += 1  # single whitespace byte after maxval
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype(np.uint8)
    expected = width * height * dtype.itemsize
    payload = data[idx:idx + expected]
    if len(payload) != expected:
        raise ImageIOError(f"{path}: unexpected payload size ({len(payload)} vs {expected})")
    image = np.frombuffer(payload, dtype=dtype).reshape(height, width)
    return image.astype(np.uint16) if maxval > 255 else image.copy()


def write_pgm(path: PathLike, image: np.ndarray, maxval: int = 255) -> Path:
    arr = np.asarray(image)
    if arr.ndim != 2:
        raise ImageIOError(f"PGM images are single channel, got shape {arr.shape}")
    if maxval > 255:
        body = np.clip(arr, 0, maxval).astype(">u2").tobytes()
    else:
        body = np.clip(arr, 0, maxval).astype(np.uint8).tobytes()
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n{maxval}\n".encode("ascii")
    target.write_bytes(header + body)
    return target


def depth_to_u16(depth_mm: np.ndarray) -> np.ndarray:
    scaled = np.floor(np.asarray(depth_mm, dtype=float) + 0.5)
    return np.clip(scaled, 0, 65535).astype(np.uint16)


def mask_to_u8(mask: np.ndarray) -> np.ndarray:
    return np.where(np.asarray(mask) > 0, 255, 0).astype(np.uint8)


class PgmFrameSink:
    """Side-car dumps of one episode under <root>/episode_<seed>/."""

    DSA_LAYERS = ("depth", "mask", "state")

    def __init__(self, root: PathLike, seed: int) -> None:
        self.root = Path(root)
        self.episode_dir = self.root / f"episode_{seed}"

    def dsa(self, t: int, image) -> str:
        stem = f"dsa_t{t:03d}"
        for name in self.DSA_LAYERS:
            write_pgm(self.episode_dir / f"{stem}_{name}.pgm", getattr(image, name))
        return f"{self.root.name}/{self.episode_dir.name}/{stem}"

    def first_frame(self, frames: Dict[str, np.ndarray]) -> None:
        for name, image in sorted(frames.items()):
            target = self.episode_dir / f"frame0_{name}.pgm"
            if name == "depth":
                write_pgm(target, depth_to_u16(image), 65535)
            elif name.startswith("ortho_depth"):
                write_pgm(target, np.asarray(image, dtype=np.int64), 65535)
            elif name.startswith("stereo"):
                write_pgm(target, image)
            else:
                write_pgm(target, mask_to_u8(image))


class ImageStoreImpl(ImageStore):
    def read(self, path: str) -> np.ndarray:
        return read_pgm(path)

    def write_depth(self, path: str, depth_mm) -> str:
        return str(write_pgm(path, depth_to_u16(depth_mm), 65535))
