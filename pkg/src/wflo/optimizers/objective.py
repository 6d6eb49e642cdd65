from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


class NonFiniteObjective(ArithmeticError):
    """The objective returned NaN or an infinity."""


@dataclass
class ObjectiveHandle:
    """Counts and records every call of a scalar objective.

    ``history`` holds ``(theta, value, seconds_since_creation)`` tuples in call
    order.
    """

    evaluate: Callable[[np.ndarray], float]
    history: list[tuple[np.ndarray, float, float]] = field(default_factory=list)

    def __post_init__(self):
        self._t0 = time.perf_counter()

    @property
    def evaluation_count(self) -> int:
        return len(self.history)

    def __call__(self, theta) -> float:
        theta = np.array(theta, dtype=float, copy=True).ravel()
        value = float(self.evaluate(theta))
        if not math.isfinite(value):
            raise NonFiniteObjective(
                f"objective returned {value} at evaluation {self.evaluation_count + 1}, theta={theta.tolist()}"
            )
        self.history.append((theta, value, time.perf_counter() - self._t0))
        return value

    def best(self) -> tuple[np.ndarray, float]:
        if not self.history:
            raise ValueError("objective has not been evaluated")
        theta, value, _ = min(self.history, key=lambda h: h[1])
        return theta.copy(), value

    def trace(self) -> list[tuple[int, float, float]]:
        """``(iteration, value, wall_time)`` rows for export."""
        return [(n, v, t) for n, (_, v, t) in enumerate(self.history)]


def as_handle(objective) -> ObjectiveHandle:
    return objective if isinstance(objective, ObjectiveHandle) else ObjectiveHandle(objective)
