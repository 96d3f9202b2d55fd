from __future__ import annotations

from collections.abc import Iterable
from functools import cached_property

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .column import Column, Couple

Triplet = tuple[int, int, int]


class PricingMatrix(BaseModel):
    """D_j: d[l][k] is the contribution of couple (order[l], k) to facility j."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    facility: int
    order: tuple[int, ...]
    d: np.ndarray


class PricingResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    facility: int
    reduced_cost: float
    couples: tuple[Couple, ...]


class ZetaSums(BaseModel):
    """Cut-dual sums indexed by [position k, rank]; rank column 0 is unused."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    first: np.ndarray
    second: np.ndarray

    def prefix(self, rank: int, k: int) -> float:
        """Sum of zeta over level-k cuts with rank <= ``rank``."""
        return float(self.first[k, rank])

    def suffix(self, rank: int, k: int) -> float:
        """Sum of zeta over level-k cuts with rank >= ``rank``."""
        return float(self.second[k, rank])


class FixingMask(BaseModel):
    """Original-variable fixings x_ij^k = 0 / x_ij^k = 1 active in a node."""

    model_config = ConfigDict(frozen=True)

    zeros: frozenset[Triplet] = Field(default_factory=frozenset)
    ones: frozenset[Triplet] = Field(default_factory=frozenset)

    @model_validator(mode="after")
    def _check_consistent(self) -> FixingMask:
        if self.zeros & self.ones:
            raise ValueError("a triplet cannot be fixed to both 0 and 1")
        clients = [i for i, _, _ in self.ones]
        positions = [k for _, _, k in self.ones]
        if len(set(clients)) != len(clients) or len(set(positions)) != len(positions):
            raise ValueError("fixed-to-one triplets must use distinct clients and positions")
        return self

    @cached_property
    def _one_by_client(self) -> dict[int, tuple[int, int]]:
        return {i: (j, k) for i, j, k in self.ones}

    @cached_property
    def _one_by_position(self) -> dict[int, tuple[int, int]]:
        return {k: (i, j) for i, j, k in self.ones}

    def with_zero(self, triplet: Triplet) -> FixingMask:
        return FixingMask(zeros=self.zeros | {triplet}, ones=self.ones)

    def with_one(self, triplet: Triplet) -> FixingMask:
        return FixingMask(zeros=self.zeros, ones=self.ones | {triplet})

    def with_zeros(self, triplets: Iterable[Triplet]) -> FixingMask:
        return FixingMask(zeros=self.zeros | frozenset(triplets), ones=self.ones)

    def can_fix_one(self, triplet: Triplet) -> bool:
        i, _, k = triplet
        if triplet in self.zeros:
            return False
        return (
            self._one_by_client.get(i, triplet[1:]) == triplet[1:]
            and self._one_by_position.get(k, triplet[:2]) == triplet[:2]
        )

    def blocks(self, i: int, j: int, k: int) -> bool:
        """True when couple (i, k) may not appear in a column of facility j."""
        if (i, j, k) in self.zeros:
            return True
        fixed = self._one_by_client.get(i)
        if fixed is not None and fixed != (j, k):
            return True
        fixed = self._one_by_position.get(k)
        return fixed is not None and fixed != (i, j)

    def allows(self, column: Column) -> bool:
        j = column.facility
        return not any(self.blocks(i, j, k) for i, k in column.couples)

    def __bool__(self) -> bool:
        return bool(self.zeros or self.ones)
