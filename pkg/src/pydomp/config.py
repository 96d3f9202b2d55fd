from __future__ import annotations

import os

from pydantic import BaseModel, Field


class DOMPConfig(BaseModel):
    time_limit: float = Field(
        default_factory=lambda: float(os.getenv("DOMP_TIME_LIMIT", "1800"))
    )
    threads: int = Field(default_factory=lambda: int(os.getenv("DOMP_THREADS", "1")))
    seed: int = Field(default_factory=lambda: int(os.getenv("DOMP_SEED", "1")))
    oracle_limit: int = Field(
        default_factory=lambda: int(os.getenv("DOMP_ORACLE_LIMIT", "10000000"))
    )
    woc_max_n: int = Field(
        default_factory=lambda: int(os.getenv("DOMP_WOC_MAX_N", "60"))
    )
    lp_max_iterations: int = Field(
        default_factory=lambda: int(os.getenv("DOMP_LP_MAX_ITERATIONS", "50000"))
    )
    log_level: str = Field(
        default_factory=lambda: os.getenv("DOMP_LOG_LEVEL", "WARNING")
    )
    feasibility_tol: float = 1e-7
    optimality_tol: float = 1e-6
    integrality_tol: float = 1e-6
    cut_tol: float = 1e-4

    @classmethod
    def from_env(cls) -> DOMPConfig:
        return cls()
