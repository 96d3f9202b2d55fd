from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field, PositiveInt


class CgStatus(str, Enum):
    CONVERGED = "converged"
    ITERATION_LIMIT = "iteration_limit"
    INFEASIBLE = "infeasible"
    FATHOMED = "fathomed"


class StabConfig(BaseModel):
    delta_init: float = Field(0.6, gt=0.0, le=1.0)
    eps_gap: float = Field(1e-6, gt=0.0)
    enabled: bool = True
    hurry_first: bool = True
    max_iterations: PositiveInt = 10_000


class CgIteration(BaseModel):
    iteration: int
    lp_value: float | None
    lower_bound: float
    delta: float
    columns_added: int
    farkas: bool = False


class CgReport(BaseModel):
    status: CgStatus
    lp_value: float | None = None
    iterations: int = 0
    columns_added: int = 0
    lagrangian_bound: float = 0.0
    lb1: float | None = None
    lb2: float | None = None
    facility_minima: list[float] = Field(default_factory=list)
    trace: list[CgIteration] = Field(default_factory=list)
