"""
Episode Loop
============
randomize -> render -> (stereo) -> corrupt -> perceive -> control ->
actuate -> FSM, until the FSM terminates. Each episode seed is split into
independent streams for the scene, the randomization, the policy and the
stereo texture.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Protocol, Tuple

import numpy as np

from grasp.config import SimConfig
from grasp.control.hybrid import ControlInput, HybridController
from grasp.control.phases import Phase
from grasp.control.policies import Policy
from grasp.dsa.encode import DsaImage
from grasp.geometry.camera import CameraModel, look_at_camera
from grasp.perception.pipeline import Perception, perceive
from grasp.rand.corruption import corrupt_depth, cutout_masks
from grasp.rand.samplers import (
    CameraNoise,
    MovingCamera,
    perturb_action,
    sample_camera_noise,
    sample_object_scale,
)
from grasp.render.raster import MaskSet, render_depth_and_masks
from grasp.render.stereo_pair import stereo_pair_from_depth
from grasp.scene.world import apply_action, reset
from grasp.stereo.depth import disparity_to_depth
from grasp.stereo.matcher import match_disparity
from grasp.task.fsm import StepEvents, TaskFsm, TaskState, discounted_return, step_fsm
from .metrics import grasping_score

STREAMS = ("scene", "rand", "policy", "texture")


@dataclass(frozen=True)
class EpisodeStep:
    t: int
    phase: Phase
    source: str
    action: Optional[int]
    command: Tuple[float, ...]
    reward: float
    state: TaskState
    system: Tuple[float, float, float]
    dsa_ref: str
    events: Tuple[str, ...] = ()


@dataclass(frozen=True)
class EpisodeRecord:
    seed: int
    kind: str
    scale: float
    fingerprint: str
    gamma: float
    h_max: int
    steps: Tuple[EpisodeStep, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def rewards(self) -> Tuple[float, ...]:
        return tuple(s.reward for s in self.steps)

    @property
    def final_state(self) -> TaskState:
        return self.steps[-1].state if self.steps else TaskState.NORMAL

    @property
    def terminated(self) -> bool:
        return self.final_state.terminal

    @property
    def success(self) -> bool:
        return self.final_state is TaskState.SUCCESS

    @property
    def discounted_return(self) -> float:
        return discounted_return(self.rewards, self.gamma)

    @property
    def score(self) -> float:
        return grasping_score(self.length, self.h_max, self.success)

    def as_row(self) -> Dict[str, object]:
        return {
            "seed": self.seed,
            "kind": self.kind,
            "scale": self.scale,
            "steps": self.length,
            "success": int(self.success),
            "score": self.score,
            "discounted_return": self.discounted_return,
            "final_state": self.final_state.name,
        }


class FrameSink(Protocol):
    """Receives images of one episode; dsa() returns the reference stored in the step."""

    def dsa(self, t: int, image: DsaImage) -> str:
        ...

    def first_frame(self, frames: Dict[str, np.ndarray]) -> None:
        ...


def dsa_digest(image: DsaImage) -> str:
    return "sha256:" + hashlib.sha256(image.tobytes()).hexdigest()[:16]


def episode_streams(seed: int) -> Dict[str, np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(len(STREAMS))
    return {name: np.random.default_rng(ss) for name, ss in zip(STREAMS, children)}


def run_episode(cfg: SimConfig, policy: Policy, seed: int, sink: Optional[FrameSink] = None,
                log: Optional[Callable[..., None]] = None) -> EpisodeRecord:
    rngs = episode_streams(seed)
    rand_cfg = cfg.randomization
    dr = rand_cfg.enabled

    if cfg.scene.scale_range is not None or dr:
        scale = sample_object_scale(rand_cfg, rngs["rand"], cfg.scene.scale_range)
    else:
        scale = 1.0
    scene = reset(cfg.scene, rngs["scene"], scale)
    texture_seed = int(rngs["texture"].integers(2**31))

    base_cam = look_at_camera(cfg.camera)
    noise = sample_camera_noise(rand_cfg, rngs["rand"]) if dr else CameraNoise()
    moving = MovingCamera(rand_cfg, noise) if cfg.harness.moving_camera else None

    fsm = TaskFsm.start(cfg.task)
    controller = HybridController(cfg, log)
    policy.reset()
    steps = []
    if log:
        log("episode", f"seed={seed} start", {"kind": scene.target.kind, "scale": scale})

    while not fsm.terminated:
        if moving is not None and fsm.t > 0:
            noise = moving.advance(rngs["rand"])
        render_cam = noise.apply(base_cam, cfg.camera.look_at_mm)
        depth, masks = render_depth_and_masks(scene, render_cam)
        raw = (depth, masks)
        if cfg.stereo.enabled:
            depth = _stereo_depth(depth, render_cam, cfg, texture_seed)
        if dr:
            depth = corrupt_depth(depth, rngs["rand"], rand_cfg.depth_noise, rand_cfg.blur_kernel, rand_cfg.blur_sigma)
            masks = MaskSet(*cutout_masks(masks.as_list(), rngs["rand"], rand_cfg.cutout_amount, rand_cfg.cutout_size_px))
        perception = perceive(depth, masks, base_cam, scene.workspace, cfg.perception)

        ctrl = controller.step(
            ControlInput(fsm.t, perception, scene.jaw_open, fsm.state, scene.yaw_rad), policy, rngs["policy"]
        )
        command = perturb_action(ctrl.command, rngs["rand"], rand_cfg.action_noise) if dr else ctrl.command
        scene = apply_action(scene, command)
        events = StepEvents(
            jaw_closed=scene.jaw_just_closed,
            grasp_ok=scene.grasp_ok,
            clamped=scene.last_clamped,
            below_safe_height=ctrl.events.below_safe_height,
            target_lost=ctrl.events.target_lost,
            gripper_lost=ctrl.events.gripper_lost,
        )
        t = fsm.t
        fsm, reward, _ = step_fsm(fsm, events)

        if sink is not None and t == 0:
            sink.first_frame(_first_frame(raw, render_cam, perception, cfg, texture_seed))
        steps.append(EpisodeStep(
            t=t,
            phase=ctrl.phase,
            source=ctrl.source,
            action=ctrl.action,
            command=command.values,
            reward=reward,
            state=fsm.state,
            system=ctrl.system.as_tuple(),
            dsa_ref=sink.dsa(t, ctrl.dsa) if sink is not None else dsa_digest(ctrl.dsa),
            events=_event_names(events),
        ))

    if log:
        log("episode", f"seed={seed} end", {"state": fsm.state.name, "steps": fsm.t})
    return EpisodeRecord(
        seed=seed,
        kind=scene.target.kind,
        scale=float(scale),
        fingerprint=cfg.fingerprint(),
        gamma=cfg.task.gamma,
        h_max=cfg.task.h_max,
        steps=tuple(steps),
    )


def _stereo_depth(depth: np.ndarray, cam: CameraModel, cfg: SimConfig, texture_seed: int) -> np.ndarray:
    st = cfg.stereo
    left, right = stereo_pair_from_depth(depth, cam, texture_seed, st.texture_cells)
    disparity = match_disparity(left, right, st.block, st.search_range, st.uniqueness, st.lr_tolerance)
    return disparity_to_depth(disparity, cam, st.min_disparity_px)


def _event_names(events: StepEvents) -> Tuple[str, ...]:
    names = ("jaw_closed", "grasp_ok", "clamped", "below_safe_height", "target_lost", "gripper_lost")
    return tuple(name for name in names if getattr(events, name))


def _first_frame(raw, cam: CameraModel, perception: Perception, cfg: SimConfig,
                 texture_seed: int) -> Dict[str, np.ndarray]:
    depth, masks = raw
    left, right = stereo_pair_from_depth(depth, cam, texture_seed, cfg.stereo.texture_cells)
    return {
        "depth": depth,
        "mask_gripper": masks.gripper,
        "mask_target": masks.target,
        "stereo_left": left,
        "stereo_right": right,
        "ortho_depth_gripper": perception.gripper.ortho.depth,
        "ortho_mask_gripper": perception.gripper.ortho.mask,
        "ortho_depth_target": perception.target.ortho.depth,
        "ortho_mask_target": perception.target.ortho.mask,
    }
