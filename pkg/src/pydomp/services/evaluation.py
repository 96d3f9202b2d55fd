from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from ..errors import EmptyFacilitySetError, InvalidColumnError, InvalidFacilitySetError
from ..models.column import Column, Couple, FacilitySet
from ..models.instance import Instance, RankMatrix
from ..utils import valid_facility_set
from ._base import _Service
from .instances import compute_ranks


def _facilities(J: FacilitySet | Iterable[int]) -> list[int]:
    return list(J.open) if isinstance(J, FacilitySet) else sorted(set(J))


def allocation_costs(
    inst: Instance, J: FacilitySet | Iterable[int]
) -> tuple[list[int], list[int]]:
    """Cheapest cost of each client towards J and the facility attaining it.

    Equal costs go to the facility of smaller rank, which under the (i, j)
    tie-break is the smaller index.
    """
    open_ = _facilities(J)
    if not open_:
        raise EmptyFacilitySetError()
    sub = inst.cost_array[:, open_]
    best = np.argmin(sub, axis=1)
    costs = [int(sub[i, b]) for i, b in enumerate(best)]
    serving = [open_[int(b)] for b in best]
    return costs, serving


def set_value(inst: Instance, J: FacilitySet | Iterable[int]) -> int:
    """Ordered median value of any nonempty facility set."""
    open_ = _facilities(J)
    if not open_:
        raise EmptyFacilitySetError()
    sorted_costs = np.sort(inst.cost_array[:, open_].min(axis=1))
    return int(sorted_costs @ inst.weight_array)


def ordered_value(inst: Instance, J: FacilitySet | Iterable[int]) -> int:
    open_ = _facilities(J)
    if not open_:
        raise EmptyFacilitySetError()
    if not valid_facility_set(open_, inst.n, inst.p):
        raise InvalidFacilitySetError()
    return set_value(inst, open_)


def column_cost(inst: Instance, facility: int, couples: Iterable[Couple]) -> int:
    return sum(inst.weights[k] * inst.costs[i][facility] for i, k in couples)


def validate_column(col: Column, ranks: RankMatrix) -> None:
    """Raise when positions do not follow the ranks toward the column's facility."""
    j = col.facility
    if j >= ranks.n or any(i >= ranks.n or k >= ranks.n for i, k in col.couples):
        raise InvalidColumnError("column index out of range")
    col_ranks = [ranks.ranks[i][j] for i, _ in col.couples]
    if any(a >= b for a, b in zip(col_ranks, col_ranks[1:])):
        raise InvalidColumnError("ranks must increase with position")


def make_column(
    inst: Instance, ranks: RankMatrix, facility: int, couples: Iterable[Couple]
) -> Column:
    ordered = tuple(sorted(((int(i), int(k)) for i, k in couples), key=lambda c: c[1]))
    col = Column(
        facility=int(facility),
        couples=ordered,
        cost=column_cost(inst, facility, ordered),
    )
    validate_column(col, ranks)
    return col


def solution_to_columns(
    inst: Instance, J: FacilitySet | Iterable[int], ranks: RankMatrix | None = None
) -> list[Column]:
    """Columns of the sorted assignment induced by J, one per serving facility."""
    ranks = ranks or compute_ranks(inst)
    _, serving = allocation_costs(inst, J)
    clients = sorted(range(inst.n), key=lambda i: ranks.ranks[i][serving[i]])
    grouped: dict[int, list[Couple]] = {}
    for k, i in enumerate(clients):
        grouped.setdefault(serving[i], []).append((i, k))
    return [make_column(inst, ranks, j, grouped[j]) for j in sorted(grouped)]


class Evaluation(_Service):
    def allocation_costs(
        self, inst: Instance, J: FacilitySet | Sequence[int]
    ) -> tuple[list[int], list[int]]:
        """Per-client allocation costs and serving facilities."""
        return allocation_costs(inst, J)

    def ordered_value(self, inst: Instance, J: FacilitySet | Sequence[int]) -> int:
        """Objective value of a complete solution."""
        return ordered_value(inst, J)

    def solution_to_columns(
        self, inst: Instance, J: FacilitySet | Sequence[int]
    ) -> list[Column]:
        """Master columns encoding the solution J."""
        if len(_facilities(J)) != inst.p:
            raise InvalidFacilitySetError()
        return solution_to_columns(inst, J)
