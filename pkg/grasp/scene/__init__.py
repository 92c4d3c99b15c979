from .command import IDLE, Command
from .models import KINDS, ObjectModel, spawn_object
from .world import SceneState, Workspace, apply_action, check_grasp, reset, sample_object_kind

__all__ = [
    "Command",
    "IDLE",
    "KINDS",
    "ObjectModel",
    "SceneState",
    "Workspace",
    "apply_action",
    "check_grasp",
    "reset",
    "sample_object_kind",
    "spawn_object",
]
