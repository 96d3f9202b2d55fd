from __future__ import annotations

from enum import Enum, IntEnum

from pydantic import BaseModel, Field, NonNegativeInt, PositiveInt

from ..config import DOMPConfig
from .column import FacilitySet
from .grasp import GraspConfig
from .stabilization import StabConfig

Triplet = tuple[int, int, int]


class NodeStatus(str, Enum):
    OPEN = "open"
    BRANCHED = "branched"
    PRUNED_BOUND = "pruned_bound"
    PRUNED_INFEASIBLE = "pruned_infeasible"
    INTEGRAL = "integral"


class SolveStatus(str, Enum):
    OPTIMAL = "Optimal"
    TIME_LIMIT = "TimeLimit"


class BranchStrategy(IntEnum):
    # argmin of theta * s_minus + (1 - theta) * s_plus
    WEIGHTED = 1
    MIN = 2
    MAX = 3


class NodeRecord(BaseModel):
    id: int
    parent: int | None = None
    depth: int = 0
    fixing: Triplet | None = None
    fixed_value: int | None = None
    lower_bound: float
    lp_value: float | None = None
    status: NodeStatus = NodeStatus.OPEN


class BoundEvent(BaseModel):
    nodes: int
    lower_bound: float
    upper_bound: float


class SolveParams(BaseModel):
    time_limit: float = 1800.0
    use_grasp: bool = True
    grasp: GraspConfig = Field(default_factory=GraspConfig)
    stab: StabConfig = Field(default_factory=StabConfig)
    use_cuts: bool = True
    branch_strategy: BranchStrategy = BranchStrategy.WEIGHTED
    theta: float = Field(0.5, ge=0.0, le=1.0)
    max_cut_rounds_root: NonNegativeInt = 50
    max_cut_rounds_node: NonNegativeInt = 1
    max_cuts_per_round: PositiveInt = 100
    fixings: list[Triplet] = Field(default_factory=list)
    threads: PositiveInt = 1
    integrality_tol: float = 1e-6
    cut_tol: float = 1e-4

    @classmethod
    def from_config(cls, cfg: DOMPConfig, **overrides: object) -> SolveParams:
        base: dict[str, object] = {
            "time_limit": cfg.time_limit,
            "threads": cfg.threads,
            "grasp": GraspConfig(seed=cfg.seed),
            "integrality_tol": cfg.integrality_tol,
            "cut_tol": cfg.cut_tol,
        }
        base.update(overrides)
        return cls.model_validate(base)


class SolveReport(BaseModel):
    n: int
    p: int
    status: SolveStatus
    best_value: int | None = None
    best_set: FacilitySet | None = None
    lower_bound: float
    gap_pct: float
    nodes: int = 0
    columns: int = 0
    cuts: int = 0
    time_s: float = 0.0
    root_lp_value: float | None = None
    root_lp_value_after_cuts: float | None = None
    node_records: list[NodeRecord] = Field(default_factory=list)
    bound_history: list[BoundEvent] = Field(default_factory=list)

    def summary_line(self) -> str:
        """`n p status best_value lower_bound gap_pct nodes columns cuts time_s`."""
        value = "NA" if self.best_value is None else str(self.best_value)
        return "\t".join(
            [
                str(self.n),
                str(self.p),
                self.status.value,
                value,
                f"{self.lower_bound:.6f}",
                f"{self.gap_pct:.4f}",
                str(self.nodes),
                str(self.columns),
                str(self.cuts),
                f"{self.time_s:.3f}",
            ]
        )
