from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from grasp.errors import CommandError


@dataclass(frozen=True)
class Command:
    """Normalized robot command [dx, dy, dz, dyaw, jaw]; jaw > 0 opens."""

    values: Tuple[float, float, float, float, float]

    def __post_init__(self) -> None:
        vals = tuple(float(v) for v in self.values)
        if len(vals) != 5:
            raise CommandError(f"command needs 5 elements, got {len(vals)}")
        if not all(np.isfinite(v) and -1.0 <= v <= 1.0 for v in vals):
            raise CommandError(f"command elements must lie in [-1, 1]: {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, elements: Iterable[float]) -> "Command":
        return cls(tuple(elements))

    @property
    def translation(self) -> np.ndarray:
        return np.array(self.values[:3])

    @property
    def rotation(self) -> float:
        return self.values[3]

    @property
    def opens_jaw(self) -> bool:
        return self.values[4] > 0

    @property
    def is_idle(self) -> bool:
        return self.values == (0.0, 0.0, 0.0, 0.0, 1.0)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


IDLE = Command((0.0, 0.0, 0.0, 0.0, 1.0))
