from .actions import N_ACTIONS, DiscreteAction, decode_action
from .fsm import StepEvents, TaskFsm, TaskState, discounted_return, step_fsm
from .states import SystemStates, system_states

__all__ = [
    "DiscreteAction",
    "N_ACTIONS",
    "StepEvents",
    "SystemStates",
    "TaskFsm",
    "TaskState",
    "decode_action",
    "discounted_return",
    "step_fsm",
    "system_states",
]
