from .expert import ScriptedExpert, capture_offset, scripted_expert
from .hybrid import ControlEvents, ControlInput, ControlStep, HybridController
from .phases import Phase, classify_phase, distance_metric
from .policies import ExternalPolicy, Policy, PolicyInput, RandomPolicy, ReplayPolicy, recorded_actions
from .subpolicies import idle_action, pid_action, safe_height_correct, scale_rl_action

__all__ = [
    "ControlEvents",
    "ControlInput",
    "ControlStep",
    "ExternalPolicy",
    "HybridController",
    "Phase",
    "Policy",
    "PolicyInput",
    "RandomPolicy",
    "ReplayPolicy",
    "ScriptedExpert",
    "capture_offset",
    "classify_phase",
    "distance_metric",
    "idle_action",
    "pid_action",
    "recorded_actions",
    "safe_height_correct",
    "scale_rl_action",
    "scripted_expert",
]
