"""One frozen dataclass per config file section. Lengths are millimeters;
angles are degrees in the file and converted by the consumers.
"""

from __future__ import annotations

import copy
import dataclasses
import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from .errors import ConfigError


@dataclass(frozen=True)
class CameraConfig:
    focal_px: float = 1000.0
    baseline_mm: float = 5.0
    pixel_scale: float = 0.25
    width_px: int = 600
    height_px: int = 600
    tilt_deg: float = 20.0
    standoff_mm: float = 150.0
    look_at_mm: Tuple[float, float, float] = (0.0, 0.0, 50.0)


@dataclass(frozen=True)
class SceneConfig:
    workspace_min_mm: Tuple[float, float, float] = (-50.0, -50.0, 0.0)
    workspace_max_mm: Tuple[float, float, float] = (50.0, 50.0, 100.0)
    step_mm: float = 5.0
    step_deg: float = 10.0
    object_mix: Dict[str, float] = field(
        default_factory=lambda: {"needle": 0.5, "block": 0.25, "rod": 0.25}
    )
    object_margin_mm: float = 15.0
    object_height_mm: Tuple[float, float] = (10.0, 50.0)
    gripper_margin_mm: float = 10.0
    gripper_height_mm: Tuple[float, float] = (30.0, 90.0)
    gripper_yaw_deg: float = 10.0
    tilt_deg: float = 45.0
    jaw_box_mm: Tuple[float, float, float] = (8.0, 4.0, 10.0)
    sphere_radius_mm: float = 5.0
    surface_density: float = 20.0
    scale_range: Optional[Tuple[float, float]] = None


@dataclass(frozen=True)
class TaskConfig:
    h_max: int = 80
    gamma: float = 0.99
    reward_success: float = 1.0
    reward_failure: float = -0.1
    reward_abnormal: float = -0.01
    reward_step: float = -0.001
    max_grasp_attempts: int = 1


@dataclass(frozen=True)
class PerceptionConfig:
    voxel_resolution: int = 200
    filter_radius: float = 2.0
    filter_min_neighbors: int = 2
    ortho_top_surface: bool = False
    inflation: float = 0.1


@dataclass(frozen=True)
class DsaConfig:
    zoom: int = 60
    size: int = 64
    gripper_code: int = 140
    target_code: int = 70
    band_rows: Tuple[int, int, int] = (0, 21, 42)
    band_height: int = 10


@dataclass(frozen=True)
class ControlConfig:
    h_begin: int = 6
    c_dis: float = 0.1
    offsets: Tuple[float, float, float] = (0.0, 0.0, 0.1)
    k_p: float = 10.0
    alpha_xyz: float = 0.3
    alpha_theta: float = 1.0
    z_safe: float = 0.05
    safe_lift_mm: float = 30.0
    pid_enabled: bool = True
    pid_uses_offset: bool = True
    pid_verbatim_sign: bool = False
    expert_tolerance: float = 0.01
    expert_stall_steps: int = 30


@dataclass(frozen=True)
class RandomizationConfig:
    enabled: bool = True
    cam_roll_deg: float = 3.0
    cam_pitch_deg: float = 3.0
    cam_yaw_deg: float = 1.0
    cam_distance_mm: float = 10.0
    object_scale: Tuple[float, float] = (0.75, 1.25)
    action_noise: float = 0.01
    depth_noise: float = 0.005
    blur_kernel: int = 3
    blur_sigma: float = 0.3
    cutout_amount: Tuple[float, float] = (0.0, 0.2)
    cutout_size_px: Tuple[float, float] = (2.0, 20.0)
    moving_step_fraction: float = 0.1


@dataclass(frozen=True)
class StereoConfig:
    enabled: bool = False
    block: int = 9
    search_range: int = 128
    uniqueness: float = 0.9
    lr_tolerance: float = 1.0
    min_disparity_px: float = 0.1
    texture_cells: Tuple[int, int] = (8, 4)


@dataclass(frozen=True)
class HarnessConfig:
    seed: int = 0
    episodes: int = 20
    workers: int = 1
    policy: str = "scripted"
    moving_camera: bool = False
    dump_images: bool = False


SECTIONS: Dict[str, type] = {
    "camera": CameraConfig,
    "scene": SceneConfig,
    "task": TaskConfig,
    "perception": PerceptionConfig,
    "dsa": DsaConfig,
    "control": ControlConfig,
    "randomization": RandomizationConfig,
    "stereo": StereoConfig,
    "harness": HarnessConfig,
}


@dataclass(frozen=True)
class SimConfig:
    camera: CameraConfig = field(default_factory=CameraConfig)
    scene: SceneConfig = field(default_factory=SceneConfig)
    task: TaskConfig = field(default_factory=TaskConfig)
    perception: PerceptionConfig = field(default_factory=PerceptionConfig)
    dsa: DsaConfig = field(default_factory=DsaConfig)
    control: ControlConfig = field(default_factory=ControlConfig)
    randomization: RandomizationConfig = field(default_factory=RandomizationConfig)
    stereo: StereoConfig = field(default_factory=StereoConfig)
    harness: HarnessConfig = field(default_factory=HarnessConfig)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SimConfig":
        if not isinstance(data, Mapping):
            raise ConfigError("config root must be an object")
        unknown = sorted(set(data) - set(SECTIONS))
        if unknown:
            raise ConfigError(f"unknown config section(s): {', '.join(unknown)}")
        sections = {}
        for name, section_cls in SECTIONS.items():
            sections[name] = _build_section(name, section_cls, data.get(name, {}))
        config = cls(**sections)
        config.validate()
        return config

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {}
        for name in SECTIONS:
            section = getattr(self, name)
            out[name] = {
                f.name: _plain(getattr(section, f.name)) for f in dataclasses.fields(section)
            }
        return out

    def with_overrides(self, overrides: Mapping[str, Any]) -> "SimConfig":
        merged = _deep_merge(self.to_dict(), overrides)
        return SimConfig.from_dict(merged)

    def fingerprint(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    def validate(self) -> None:
        scene = self.scene
        lo, hi = scene.workspace_min_mm, scene.workspace_max_mm
        if any(a >= b for a, b in zip(lo, hi)):
            raise ConfigError("scene.workspace_min_mm must be below workspace_max_mm on every axis")
        if scene.step_mm <= 0 or scene.step_deg <= 0:
            raise ConfigError("scene step magnitudes must be positive")
        mix = scene.object_mix
        if not mix or any(p < 0 for p in mix.values()):
            raise ConfigError("scene.object_mix must hold non-negative probabilities")
        if abs(sum(mix.values()) - 1.0) > 1e-9:
            raise ConfigError("scene.object_mix probabilities must sum to 1")
        _require_pair("scene.object_height_mm", scene.object_height_mm)
        _require_pair("scene.gripper_height_mm", scene.gripper_height_mm)
        if scene.scale_range is not None:
            _require_pair("scene.scale_range", scene.scale_range, positive=True)
        if scene.surface_density <= 0 or scene.sphere_radius_mm <= 0:
            raise ConfigError("scene surface_density and sphere_radius_mm must be positive")
        rand = self.randomization
        _require_pair("randomization.object_scale", rand.object_scale, positive=True)
        _require_pair("randomization.cutout_amount", rand.cutout_amount)
        if rand.cutout_amount[1] > 1.0:
            raise ConfigError("randomization.cutout_amount must lie in [0, 1]")
        _require_pair("randomization.cutout_size_px", rand.cutout_size_px)
        if rand.blur_kernel < 1 or rand.blur_kernel % 2 == 0:
            raise ConfigError("randomization.blur_kernel must be an odd integer >= 1")
        if rand.blur_sigma < 0 or rand.depth_noise < 0 or rand.action_noise < 0:
            raise ConfigError("randomization noise magnitudes must be non-negative")
        perception = self.perception
        if perception.voxel_resolution < 1:
            raise ConfigError("perception.voxel_resolution must be at least 1")
        if perception.filter_radius <= 0:
            raise ConfigError("perception.filter_radius must be positive")
        if perception.filter_min_neighbors < 0 or perception.inflation < 0:
            raise ConfigError("perception filter_min_neighbors and inflation must be non-negative")
        if self.camera.focal_px <= 0 or self.camera.baseline_mm <= 0:
            raise ConfigError("camera focal_px and baseline_mm must be positive")
        if self.camera.pixel_scale <= 0:
            raise ConfigError("camera.pixel_scale must be positive")
        control = self.control
        if control.c_dis <= 0:
            raise ConfigError("control.c_dis must be positive")
        if not 0 <= control.h_begin <= self.task.h_max:
            raise ConfigError("control.h_begin must lie in [0, h_max]")
        for name in ("alpha_xyz", "alpha_theta"):
            value = getattr(control, name)
            if not 0 < value <= 1:
                raise ConfigError(f"control.{name} must lie in (0, 1]")
        if self.task.h_max < 1:
            raise ConfigError("task.h_max must be at least 1")
        if self.task.max_grasp_attempts < 1:
            raise ConfigError("task.max_grasp_attempts must be at least 1")
        if not 0 < self.dsa.zoom <= self.perception.voxel_resolution:
            raise ConfigError("dsa.zoom must lie in (0, voxel_resolution]")
        if self.stereo.block < 3 or self.stereo.block % 2 == 0:
            raise ConfigError("stereo.block must be an odd integer >= 3")
        if self.stereo.search_range < 1:
            raise ConfigError("stereo.search_range must be at least 1")
        if any(c < 1 for c in self.stereo.texture_cells):
            raise ConfigError("stereo.texture_cells must be at least 1")
        if self.harness.workers < 1:
            raise ConfigError("harness.workers must be at least 1")


def _require_pair(key: str, pair: Tuple[float, float], positive: bool = False) -> None:
    lo, hi = pair
    if lo > hi:
        raise ConfigError(f"{key} must be an ordered [low, high] pair")
    if lo < 0 or (positive and lo <= 0):
        raise ConfigError(f"{key} must be {'positive' if positive else 'non-negative'}")


def _build_section(name: str, section_cls: type, values: Any) -> Any:
    if not isinstance(values, Mapping):
        raise ConfigError(f"config section '{name}' must be an object")
    defaults = section_cls()
    known = {f.name for f in dataclasses.fields(section_cls)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in '{name}': {', '.join(unknown)}")
    kwargs = {}
    for key, value in values.items():
        kwargs[key] = _coerce(f"{name}.{key}", getattr(defaults, key), value)
    return section_cls(**kwargs)


def _coerce(key: str, default: Any, value: Any) -> Any:
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be a boolean")
        return value
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{key} must be an integer")
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key} must be a number")
        return float(value)
    if isinstance(default, str):
        if not isinstance(value, str):
            raise ConfigError(f"{key} must be a string")
        return value
    if isinstance(default, dict):
        if not isinstance(value, Mapping):
            raise ConfigError(f"{key} must be an object")
        return {str(k): _coerce(f"{key}.{k}", 0.0, v) for k, v in value.items()}
    if isinstance(default, tuple) or default is None:
        if default is None and value is None:
            return None
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{key} must be a list")
        if default is not None and len(value) != len(default):
            raise ConfigError(f"{key} must have {len(default)} elements")
        template = default if default is not None else (0.0,) * len(value)
        return tuple(_coerce(f"{key}[{i}]", d, v) for i, (d, v) in enumerate(zip(template, value)))
    raise ConfigError(f"{key} has an unsupported type")


def _plain(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def _deep_merge(base: Dict[str, Any], overrides: Mapping[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict) and key != "object_mix":
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged
