"""Per-step dispatcher over the virtual clutch, the proportional approach
and the policy, with the safe-height lift layered on top. One instance
per episode: the pending lift is controller state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Deque, Optional

import numpy as np

from grasp.config import SimConfig
from grasp.dsa.encode import DsaImage, encode_observation
from grasp.errors import GripperLostError, TargetLostError
from grasp.scene.command import Command
from grasp.task.fsm import TaskState
from grasp.task.states import SystemStates, system_states
from .phases import Phase, classify_phase
from .policies import Policy, PolicyInput
from .subpolicies import idle_action, pid_action, safe_height_correct, scale_rl_action

SOURCE_IDLE = "idle"
SOURCE_PID = "pid"
SOURCE_POLICY = "policy"
SOURCE_LIFT = "safe_lift"


@dataclass(frozen=True)
class ControlInput:
    t: int
    perception: object
    jaw_open: bool
    fsm_state: TaskState
    yaw_rad: float = 0.0


@dataclass(frozen=True)
class ControlEvents:
    below_safe_height: bool = False
    target_lost: bool = False
    gripper_lost: bool = False


@dataclass(frozen=True)
class ControlStep:
    command: Command
    phase: Phase
    source: str
    action: Optional[int]
    events: ControlEvents
    dsa: DsaImage
    system: SystemStates


class HybridController:
    def __init__(self, cfg: SimConfig, log: Optional[Callable[..., None]] = None):
        self._cfg = cfg
        self._log = log
        self._lift: Deque[Command] = deque()

    def reset(self) -> None:
        self._lift.clear()

    @property
    def lift_pending(self) -> int:
        return len(self._lift)

    def step(self, obs: ControlInput, policy: Policy, rng: np.random.Generator) -> ControlStep:
        ctrl = self._cfg.control
        gripper_c = obs.perception.gripper.centroid
        target_c = obs.perception.target.centroid
        target_lost = gripper_lost = False
        try:
            phase = classify_phase(obs.t, gripper_c, target_c, ctrl)
        except TargetLostError:
            phase, target_lost = Phase.PID, True
        except GripperLostError:
            phase, gripper_lost = Phase.PID, True
        lost = target_lost or gripper_lost

        system = system_states(obs.fsm_state, obs.jaw_open, phase)
        dsa = encode_observation(obs.perception, system, self._cfg.dsa)

        below_safe = False
        if not lost and not self._lift and gripper_c is not None and target_c is not None:
            correction = safe_height_correct(
                gripper_c[2], target_c[2], ctrl.z_safe, self._cfg.scene.step_mm,
                ctrl.safe_lift_mm, obs.jaw_open,
            )
            if correction:
                below_safe = True
                self._lift.extend(correction)
                if self._log:
                    self._log("safe_height", f"lift queued at t={obs.t}", {"moves": len(correction)})

        action: Optional[int] = None
        if phase is Phase.BEGIN or lost:
            command, source = idle_action(), SOURCE_IDLE
        elif self._lift:
            command, source = self._lift.popleft(), SOURCE_LIFT
        elif phase is Phase.PID and ctrl.pid_enabled:
            aim = np.asarray(target_c) + (np.asarray(ctrl.offsets) if ctrl.pid_uses_offset else 0.0)
            command, source = pid_action(gripper_c, aim, ctrl.k_p, ctrl.pid_verbatim_sign), SOURCE_PID
        else:
            action = int(policy.act(
                PolicyInput(obs.t, phase, dsa, system, obs.jaw_open, obs.perception, obs.yaw_rad), rng
            ))
            command, source = scale_rl_action(action, obs.jaw_open, ctrl), SOURCE_POLICY

        if lost and self._log:
            self._log("perception", f"{'target' if target_lost else 'gripper'} lost at t={obs.t}", {})
        return ControlStep(
            command=command,
            phase=phase,
            source=source,
            action=action,
            events=ControlEvents(below_safe, target_lost, gripper_lost),
            dsa=dsa,
            system=system,
        )
