from __future__ import annotations

from typing import List, Optional

from app.application.use_cases.config import ConfigService
from app.domain.entities import DepthCheckRow, ImageIOError, StereoResult
from app.domain.ports import ImageStore, SimulatorPort


class StereoService:
    def __init__(self, configs: ConfigService, simulator: SimulatorPort, images: ImageStore) -> None:
        self.configs = configs
        self.simulator = simulator
        self.images = images

    def reconstruct(self, left_path: str, right_path: str, out_path: str,
                    config_path: Optional[str] = None) -> StereoResult:
        """Block-match a rectified 8-bit PGM pair and write the depth map as 16-bit PGM."""
        effective = self.configs.effective("performance", config_path)
        left = self.images.read(left_path)
        right = self.images.read(right_path)
        if left.shape != right.shape:
            raise ImageIOError(f"Stereo pair sizes differ: {left.shape} vs {right.shape}")
        depth, matched = self.simulator.stereo_depth(left, right, effective.values)
        self.images.write_depth(out_path, depth)
        height, width = left.shape
        return StereoResult(
            left_path=left_path,
            right_path=right_path,
            depth_path=out_path,
            width=int(width),
            height=int(height),
            matched_fraction=matched,
        )

    def depth_check(self, seed: int = 0, config_path: Optional[str] = None) -> List[DepthCheckRow]:
        effective = self.configs.effective("performance", config_path)
        return self.simulator.depth_check(effective.values, seed)
