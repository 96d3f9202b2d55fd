from __future__ import annotations

from pydantic import BaseModel, Field

from .column import FacilitySet


class OracleResult(BaseModel):
    best_value: int
    best_sets: list[FacilitySet] = Field(default_factory=list)
    subsets_evaluated: int = 0
