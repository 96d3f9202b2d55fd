from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

Triplet = tuple[int, int, int]


class DualVector(BaseModel):
    """Master multipliers in the all-nonnegative sign convention.

    ``epsilon[k]`` belongs to the order row of position k (k >= 1); entry 0 is
    always zero. ``zeta`` maps a cut (i, j, k) to its multiplier; absent cuts
    are zero.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    delta: float = 0.0
    epsilon: np.ndarray
    zeta: dict[Triplet, float] = Field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @classmethod
    def zeros(cls, n: int) -> DualVector:
        return cls(
            alpha=np.zeros(n),
            beta=np.zeros(n),
            gamma=np.zeros(n),
            delta=0.0,
            epsilon=np.zeros(n),
        )

    def combine(self, other: DualVector, weight: float) -> DualVector:
        """weight * self + (1 - weight) * other, component-wise."""
        rest = 1.0 - weight
        keys = sorted(set(self.zeta) | set(other.zeta))
        return DualVector(
            alpha=weight * self.alpha + rest * other.alpha,
            beta=weight * self.beta + rest * other.beta,
            gamma=weight * self.gamma + rest * other.gamma,
            delta=weight * self.delta + rest * other.delta,
            epsilon=weight * self.epsilon + rest * other.epsilon,
            zeta={
                c: weight * self.zeta.get(c, 0.0) + rest * other.zeta.get(c, 0.0)
                for c in keys
            },
        )
