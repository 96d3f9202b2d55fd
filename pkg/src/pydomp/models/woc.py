from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict


class MappedPoint(BaseModel):
    """WOC point f(y): x has shape (n, n, n) indexed [i, j, k], y has shape (n,)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: np.ndarray
    y: np.ndarray


class GapReport(BaseModel):
    reference_value: float
    mp_lp_value: float
    woc_lp_value: float
    gap_mp_pct: float
    gap_woc_pct: float
    vars_mp: int
    vars_woc: int
