from __future__ import annotations


class SimError(Exception):
    """Base exception for simulator errors."""


class ConfigError(SimError):
    """Invalid or inconsistent configuration."""


class GeometryError(SimError):
    """Projection or unprojection outside the valid domain."""


class CommandError(SimError):
    """Robot command with elements outside [-1, 1]."""


class UnknownObjectError(SimError):
    """Requested object kind is not one of the known primitives."""


class ObjectScaleError(SimError):
    """Object scale factor is not positive."""


class FsmContractError(SimError):
    """A terminal task state machine was stepped again."""


class TargetLostError(SimError):
    """The target object has no identified voxels."""


class GripperLostError(SimError):
    """The gripper has no identified voxels."""


class ShapeError(SimError):
    """Image or array dimensions do not match."""


class EmptyEvaluationError(SimError):
    """Evaluation requested with zero episodes."""


class ScoreRangeError(SimError):
    """Terminated timestep outside [1, H_max]."""


class PolicyError(SimError):
    """Policy could not produce an action."""


class ReplayFormatError(SimError):
    """Malformed replay file."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        self.message = message
        super().__init__(f"line {line_no}: {message}")


class ReplayVersionError(SimError):
    """Replay file written by an incompatible format version."""

    def __init__(self, found: int, expected: int):
        self.found = found
        self.expected = expected
        super().__init__(f"replay version {found} is not supported (expected {expected})")
