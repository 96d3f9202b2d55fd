from __future__ import annotations

from .config import DOMPConfig
from .services.bpc import BranchPriceAndCut
from .services.evaluation import Evaluation
from .services.grasp import Grasp
from .services.instances import Instances
from .services.oracle import Oracle
from .services.woc import Relaxations


class DOMPSolver:
    def __init__(self, config: DOMPConfig | None = None):
        cfg = config or DOMPConfig.from_env()
        self.config = cfg
        self.instances = Instances(cfg)
        self.evaluation = Evaluation(cfg)

        # Heuristic and exact solvers
        self.oracle = Oracle(cfg)
        self.grasp = Grasp(cfg)
        self.bpc = BranchPriceAndCut(cfg)

        # Relaxation comparisons
        self.relaxations = Relaxations(cfg)
