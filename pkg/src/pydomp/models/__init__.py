from __future__ import annotations

from .bpc import (
    BoundEvent,
    BranchStrategy,
    NodeRecord,
    NodeStatus,
    SolveParams,
    SolveReport,
    SolveStatus,
)
from .column import Column, Couple, FacilitySet
from .duals import DualVector
from .grasp import GraspConfig, GraspResult
from .instance import Instance, RankMatrix, WeightsKind
from .lp import Basis, LpOutcome, LpStatus, RowSense
from .oracle import OracleResult
from .pricing import FixingMask, PricingMatrix, PricingResult, ZetaSums
from .stabilization import CgIteration, CgReport, CgStatus, StabConfig
from .woc import GapReport, MappedPoint

__all__ = [
    "Basis",
    "BoundEvent",
    "BranchStrategy",
    "CgIteration",
    "CgReport",
    "CgStatus",
    "Column",
    "Couple",
    "DualVector",
    "FacilitySet",
    "FixingMask",
    "GapReport",
    "GraspConfig",
    "GraspResult",
    "Instance",
    "LpOutcome",
    "LpStatus",
    "MappedPoint",
    "NodeRecord",
    "NodeStatus",
    "OracleResult",
    "PricingMatrix",
    "PricingResult",
    "RankMatrix",
    "RowSense",
    "SolveParams",
    "SolveReport",
    "SolveStatus",
    "StabConfig",
    "WeightsKind",
    "ZetaSums",
]
