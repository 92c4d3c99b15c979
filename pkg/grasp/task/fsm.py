"""Sparse-reward task FSM. Termination is decided here only: a jaw closure
or the horizon.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Iterable, Tuple

from grasp.config import TaskConfig
from grasp.errors import FsmContractError


class TaskState(IntEnum):
    NORMAL = 0
    ABNORMAL = 1
    SUCCESS = 2
    FAILED = 3

    @property
    def terminal(self) -> bool:
        return self in (TaskState.SUCCESS, TaskState.FAILED)


@dataclass(frozen=True)
class StepEvents:
    jaw_closed: bool = False
    grasp_ok: bool = False
    clamped: bool = False
    below_safe_height: bool = False
    target_lost: bool = False
    gripper_lost: bool = False

    @property
    def abnormal(self) -> bool:
        return self.clamped or self.below_safe_height or self.target_lost or self.gripper_lost


@dataclass(frozen=True)
class TaskFsm:
    state: TaskState = TaskState.NORMAL
    t: int = 0
    h_max: int = 80
    gamma: float = 0.99
    reward_success: float = 1.0
    reward_failure: float = -0.1
    reward_abnormal: float = -0.01
    reward_step: float = -0.001
    max_grasp_attempts: int = 1
    grasp_attempts: int = 0

    @classmethod
    def start(cls, cfg: TaskConfig) -> "TaskFsm":
        return cls(
            h_max=cfg.h_max,
            gamma=cfg.gamma,
            reward_success=cfg.reward_success,
            reward_failure=cfg.reward_failure,
            reward_abnormal=cfg.reward_abnormal,
            reward_step=cfg.reward_step,
            max_grasp_attempts=cfg.max_grasp_attempts,
        )

    @property
    def terminated(self) -> bool:
        return self.state.terminal

    @property
    def reward_constants(self) -> Tuple[float, float, float, float]:
        return (self.reward_success, self.reward_failure, self.reward_abnormal, self.reward_step)


def step_fsm(fsm: TaskFsm, events: StepEvents) -> Tuple[TaskFsm, float, bool]:
    """Advance one timestep; returns (next fsm, reward, terminated)."""
    if fsm.terminated:
        raise FsmContractError(f"cannot step a terminal FSM (state={fsm.state.name})")
    t = fsm.t + 1
    attempts = fsm.grasp_attempts + (1 if events.jaw_closed else 0)

    if events.jaw_closed and events.grasp_ok:
        state, reward = TaskState.SUCCESS, fsm.reward_success
    elif events.jaw_closed and attempts >= fsm.max_grasp_attempts:
        state, reward = TaskState.FAILED, fsm.reward_failure
    elif t >= fsm.h_max:
        state, reward = TaskState.FAILED, fsm.reward_failure
    elif events.jaw_closed or events.abnormal:
        state, reward = TaskState.ABNORMAL, fsm.reward_abnormal
    else:
        state, reward = TaskState.NORMAL, fsm.reward_step

    nxt = replace(fsm, state=state, t=t, grasp_attempts=attempts)
    return nxt, reward, state.terminal


def discounted_return(rewards: Iterable[float], gamma: float) -> float:
    total = 0.0
    weight = 1.0
    for r in rewards:
        total += weight * r
        weight *= gamma
    return total
