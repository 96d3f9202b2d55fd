from __future__ import annotations

from enum import Enum
from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveInt, model_validator

from ..errors import ERR_DIMENSION_MISMATCH, ERR_INVALID_CARDINALITY


class WeightsKind(str, Enum):
    RANDOM = "random"
    MEDIAN = "median"
    CENTER = "center"
    K_CENTRUM = "k_centrum"


class Instance(BaseModel):
    """A DOMP instance: n clients that are also the n candidate sites."""

    model_config = ConfigDict(frozen=True)

    n: PositiveInt
    p: PositiveInt
    costs: list[list[NonNegativeInt]]
    weights: list[NonNegativeInt]

    @model_validator(mode="after")
    def _check_shape(self) -> Instance:
        if self.p > self.n:
            raise ValueError(ERR_INVALID_CARDINALITY)
        if len(self.costs) != self.n or any(len(row) != self.n for row in self.costs):
            raise ValueError(f"{ERR_DIMENSION_MISMATCH}: costs must be {self.n}x{self.n}")
        if len(self.weights) != self.n:
            raise ValueError(f"{ERR_DIMENSION_MISMATCH}: weights must have {self.n} entries")
        return self

    @cached_property
    def cost_array(self) -> np.ndarray:
        return np.asarray(self.costs, dtype=np.int64)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.int64)


class RankMatrix(BaseModel):
    """Global sorted position (1..n²) of every cost c_ij."""

    model_config = ConfigDict(frozen=True)

    ranks: list[list[PositiveInt]]

    @model_validator(mode="after")
    def _check_permutation(self) -> RankMatrix:
        n = len(self.ranks)
        if any(len(row) != n for row in self.ranks):
            raise ValueError("rank matrix must be square")
        seen = sorted(r for row in self.ranks for r in row)
        if seen != list(range(1, n * n + 1)):
            raise ValueError("ranks must be a permutation of 1..n^2")
        return self

    @property
    def n(self) -> int:
        return len(self.ranks)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.ranks, dtype=np.int64)

    @cached_property
    def cells(self) -> list[tuple[int, int]]:
        """(i, j) pairs in increasing rank order."""
        out: list[tuple[int, int]] = [(0, 0)] * (self.n * self.n)
        for i, row in enumerate(self.ranks):
            for j, r in enumerate(row):
                out[r - 1] = (i, j)
        return out

    def facility_order(self, j: int) -> list[int]:
        """Clients sorted by rank toward facility j."""
        return sorted(range(self.n), key=lambda i: self.ranks[i][j])
