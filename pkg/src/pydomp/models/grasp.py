from __future__ import annotations

from pydantic import BaseModel, Field, PositiveInt

from .column import Column, FacilitySet


class GraspConfig(BaseModel):
    replications: PositiveInt = 20
    local_search_iterations: PositiveInt = 10
    # None means floor(p / 2)
    partial_size: int | None = None
    seed: int = 1


class GraspResult(BaseModel):
    best_set: FacilitySet
    best_value: int
    harvested_columns: list[Column] = Field(default_factory=list)
    replication_values: list[int] = Field(default_factory=list)
