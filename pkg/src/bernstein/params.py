"""Parameter containers shared by every layer of the package."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class OperatorParams:
    """The pair (gamma, epsilon) selecting one member of the operator family."""

    gamma: float
    epsilon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and math.isfinite(self.epsilon)):
            raise ValueError(f"non-finite operator parameters: {self}")

    def as_tuple(self) -> tuple[float, float]:
        return (self.gamma, self.epsilon)


@dataclass(frozen=True)
class ScalingParams:
    """Amplitude ``a`` and coordinate factor ``b`` of the map u -> a*u(b*x, b*y)."""

    a: float
    b: float

    def __post_init__(self) -> None:
        for name in ("a", "b"):
            v = getattr(self, name)
            if not math.isfinite(v) or v == 0.0:
                raise ValueError(f"scaling factor {name} must be finite and nonzero, got {v}")
