from __future__ import annotations

import logging
import math

import numpy as np

from ..errors import OracleLimitExceededError
from ..models.column import FacilitySet
from ..models.instance import Instance
from ..models.oracle import OracleResult
from ._base import _Service

logger = logging.getLogger(__name__)

DEFAULT_LIMIT = 10**7


def solve_exhaustive(inst: Instance, limit: int = DEFAULT_LIMIT) -> OracleResult:
    """Enumerate every p-subset in lexicographic order and keep all minimizers."""
    n, p = inst.n, inst.p
    count = math.comb(n, p)
    if count > limit:
        raise OracleLimitExceededError(count, limit)
    costs = inst.cost_array
    weights = inst.weight_array
    best_value: int | None = None
    best_sets: list[FacilitySet] = []
    evaluated = 0
    chosen: list[int] = []

    def visit(start: int, mins: np.ndarray | None) -> None:
        nonlocal best_value, best_sets, evaluated
        if len(chosen) == p:
            assert mins is not None
            value = int(np.sort(mins) @ weights)
            evaluated += 1
            if best_value is None or value < best_value:
                best_value = value
                best_sets = [FacilitySet(open=tuple(chosen))]
            elif value == best_value:
                best_sets.append(FacilitySet(open=tuple(chosen)))
            return
        for j in range(start, n - (p - len(chosen)) + 1):
            chosen.append(j)
            visit(j + 1, costs[:, j] if mins is None else np.minimum(mins, costs[:, j]))
            chosen.pop()

    visit(0, None)
    assert best_value is not None
    logger.debug("oracle: %d subsets, best value %d", evaluated, best_value)
    return OracleResult(best_value=best_value, best_sets=best_sets, subsets_evaluated=evaluated)


class Oracle(_Service):
    def solve_exhaustive(self, inst: Instance, limit: int | None = None) -> OracleResult:
        """Brute-force optimum; refuses instances beyond the subset limit."""
        return solve_exhaustive(inst, self.cfg.oracle_limit if limit is None else limit)
