from __future__ import annotations

import logging

from .._random import RandomStream
from ..errors import InvalidFacilitySetError, InvalidPartialSizeError
from ..models.column import Column, FacilitySet
from ..models.grasp import GraspConfig, GraspResult
from ..models.instance import Instance, RankMatrix
from ..utils import validate_grasp_config
from ._base import _Service
from .evaluation import set_value, solution_to_columns
from .instances import compute_ranks

logger = logging.getLogger(__name__)

ColumnPool = dict[tuple[int, tuple[tuple[int, int], ...]], Column]


def construct_randomized_partial(inst: Instance, q: int, rng: RandomStream) -> FacilitySet:
    """q distinct facilities drawn uniformly without replacement."""
    if not 0 <= q <= inst.p:
        raise InvalidPartialSizeError()
    return FacilitySet.of(rng.sample(range(inst.n), q))


def construct_greedy(inst: Instance, partial: FacilitySet) -> FacilitySet:
    """Complete ``partial`` to p facilities, each time adding the cheapest one."""
    if len(partial) > inst.p:
        raise InvalidFacilitySetError()
    current = list(partial.open)
    while len(current) < inst.p:
        best_j, best_value = -1, None
        for j in range(inst.n):
            if j in current:
                continue
            value = set_value(inst, current + [j])
            if best_value is None or value < best_value:
                best_j, best_value = j, value
        current.append(best_j)
    return FacilitySet.of(current)


def _harvest(pool: ColumnPool, columns: list[Column]) -> None:
    for col in columns:
        pool.setdefault(col.key, col)


def local_search(
    inst: Instance,
    J: FacilitySet,
    n2: int,
    harvest: bool = False,
    ranks: RankMatrix | None = None,
) -> tuple[FacilitySet, list[Column]]:
    """Swap neighborhood with first-improvement acceptance.

    Each slot of J is scanned against the facilities closed when the slot
    scan starts; an accepted swap replaces the slot occupant and the scan
    continues from the next candidate.
    """
    if len(J) != inst.p:
        raise InvalidFacilitySetError()
    if harvest and ranks is None:
        ranks = compute_ranks(inst)
    pool: ColumnPool = {}
    current = list(J.open)
    value = set_value(inst, current)
    if harvest:
        _harvest(pool, solution_to_columns(inst, current, ranks))

    for _ in range(n2):
        improved = False
        for slot in range(len(current)):
            closed = [j for j in range(inst.n) if j not in current]
            for j2 in closed:
                candidate = current.copy()
                candidate[slot] = j2
                candidate_value = set_value(inst, candidate)
                if candidate_value < value:
                    current, value, improved = candidate, candidate_value, True
                    if harvest:
                        _harvest(pool, solution_to_columns(inst, current, ranks))
        if not improved:
            break
    return FacilitySet.of(current), list(pool.values())


def run_grasp(
    inst: Instance, cfg: GraspConfig, ranks: RankMatrix | None = None
) -> GraspResult:
    """Multistart randomized greedy plus local search, harvesting columns."""
    validate_grasp_config(cfg, inst.p)
    ranks = ranks or compute_ranks(inst)
    q = inst.p // 2 if cfg.partial_size is None else cfg.partial_size
    pool: ColumnPool = {}
    best_set: FacilitySet | None = None
    best_value: int | None = None
    values: list[int] = []
    for rep in range(cfg.replications):
        rng = RandomStream(cfg.seed + rep)
        partial = construct_randomized_partial(inst, q, rng)
        start = construct_greedy(inst, partial)
        J, columns = local_search(
            inst, start, cfg.local_search_iterations, harvest=True, ranks=ranks
        )
        _harvest(pool, columns)
        value = set_value(inst, J)
        values.append(value)
        logger.debug("grasp replication %d: %s -> %d", rep, J.open, value)
        if best_value is None or value < best_value:
            best_set, best_value = J, value
    assert best_set is not None and best_value is not None
    logger.info("grasp best value %d with %d harvested columns", best_value, len(pool))
    return GraspResult(
        best_set=best_set,
        best_value=best_value,
        harvested_columns=list(pool.values()),
        replication_values=values,
    )


class Grasp(_Service):
    def run(self, inst: Instance, cfg: GraspConfig | None = None) -> GraspResult:
        """Run GRASP; the default configuration uses the configured seed."""
        return run_grasp(inst, cfg or GraspConfig(seed=self.cfg.seed))

    def construct_randomized_partial(
        self, inst: Instance, q: int, rng: RandomStream
    ) -> FacilitySet:
        return construct_randomized_partial(inst, q, rng)

    def construct_greedy(self, inst: Instance, partial: FacilitySet) -> FacilitySet:
        return construct_greedy(inst, partial)

    def local_search(
        self, inst: Instance, J: FacilitySet, n2: int, harvest: bool = False
    ) -> tuple[FacilitySet, list[Column]]:
        return local_search(inst, J, n2, harvest)
