from __future__ import annotations

from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"


class RowSense(str, Enum):
    GE = ">="
    LE = "<="
    EQ = "="


class Basis(BaseModel):
    """Simplex basis. Structural variables are ids >= 0, the slack of row r is -(r+1)."""

    model_config = ConfigDict(frozen=True)

    basic: tuple[int, ...]
    at_upper: frozenset[int] = frozenset()


class LpOutcome(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    status: LpStatus
    objective: float | None = None
    x: np.ndarray
    duals: np.ndarray | None = None
    reduced_costs: np.ndarray | None = None
    dual_objective: float | None = None
    farkas: np.ndarray | None = None
    iterations: int = 0
    basis: Basis | None = None
