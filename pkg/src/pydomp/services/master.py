from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np

from .._simplex import LinearProgram
from ..errors import DuplicateCutError, InvalidCutError, MasterNotOptimalError
from ..models.column import Column
from ..models.duals import DualVector, Triplet
from ..models.instance import Instance, RankMatrix
from ..models.lp import LpOutcome, LpStatus, RowSense
from ..models.pricing import FixingMask

logger = logging.getLogger(__name__)

_OTHER_ROWS = 3


class RestrictedMaster:
    """Restricted master LP over a pool of columns.

    Row layout: client rows (>= 1), position rows (>= 1), facility rows (<= 1),
    the cardinality row (<= p), order rows for positions 1..n-1 (<= n^2), then
    cut rows (<= 1) in the order they were separated.
    """

    def __init__(
        self,
        inst: Instance,
        ranks: RankMatrix,
        *,
        feasibility_tol: float = 1e-7,
        optimality_tol: float = 1e-6,
        max_iterations: int = 50_000,
    ) -> None:
        self.inst = inst
        self.ranks = ranks
        self.n = inst.n
        self.lp = LinearProgram(
            feasibility_tol=feasibility_tol,
            optimality_tol=optimality_tol,
            max_iterations=max_iterations,
        )
        self.columns: list[Column] = []
        self._index: dict[tuple[int, tuple[tuple[int, int], ...]], int] = {}
        self.cuts: list[Triplet] = []
        self._cut_rows: dict[Triplet, int] = {}
        self._disabled: set[int] = set()
        self.last: LpOutcome | None = None

        n, nn = self.n, self.n * self.n
        # degenerate covering ties resolve on positions p..n-1 first, then on
        # clients, then on the leading positions the open sites themselves fill
        for i in range(n):
            self.lp.add_row(RowSense.GE, 1.0, name=f"client_{i}", priority=1)
        for k in range(n):
            self.lp.add_row(
                RowSense.GE, 1.0, name=f"position_{k}", priority=0 if k >= inst.p else 2
            )
        for j in range(n):
            self.lp.add_row(RowSense.LE, 1.0, name=f"facility_{j}", priority=_OTHER_ROWS)
        self.lp.add_row(
            RowSense.LE, float(inst.p), name="cardinality", priority=_OTHER_ROWS
        )
        for k in range(1, n):
            self.lp.add_row(RowSense.LE, float(nn), name=f"order_{k}", priority=_OTHER_ROWS)

    @classmethod
    def build(
        cls,
        inst: Instance,
        ranks: RankMatrix,
        initial_columns: Iterable[Column] = (),
        **lp_options: Any,
    ) -> RestrictedMaster:
        rm = cls(inst, ranks, **lp_options)
        rm.add_columns(initial_columns)
        return rm

    # row indices

    def client_row(self, i: int) -> int:
        return i

    def position_row(self, k: int) -> int:
        return self.n + k

    def facility_row(self, j: int) -> int:
        return 2 * self.n + j

    @property
    def cardinality_row(self) -> int:
        return 3 * self.n

    def order_row(self, k: int) -> int:
        """Row of the order constraint linking positions k-1 and k (k >= 1)."""
        return 3 * self.n + k

    # coefficients

    def cut_coefficient(self, cut: Triplet, col: Column) -> int:
        ci, cj, ck = cut
        rho = self.ranks.ranks[ci][cj]
        j = col.facility
        value = 0
        for i, k in col.couples:
            r = self.ranks.ranks[i][j]
            if k == ck and r <= rho:
                value += 1
            elif k == ck - 1 and r >= rho:
                value += 1
        return value

    def coefficients(self, col: Column) -> dict[int, float]:
        n, nn = self.n, self.n * self.n
        j = col.facility
        coefs: dict[int, float] = {}
        for i, k in col.couples:
            coefs[self.client_row(i)] = coefs.get(self.client_row(i), 0.0) + 1.0
            coefs[self.position_row(k)] = coefs.get(self.position_row(k), 0.0) + 1.0
        coefs[self.facility_row(j)] = 1.0
        coefs[self.cardinality_row] = 1.0
        for i, k in col.couples:
            r = self.ranks.ranks[i][j]
            if k >= 1:
                row = self.order_row(k)
                coefs[row] = coefs.get(row, 0.0) + float(nn - r + 1)
            if k <= n - 2:
                row = self.order_row(k + 1)
                coefs[row] = coefs.get(row, 0.0) + float(r)
        for cut, row in self._cut_rows.items():
            value = self.cut_coefficient(cut, col)
            if value:
                coefs[row] = float(value)
        return coefs

    # pool management

    def has_column(self, col: Column) -> bool:
        return col.key in self._index

    def add_column(self, col: Column) -> int | None:
        """Add a column; returns None when an identical column is pooled."""
        if col.key in self._index:
            return None
        idx = self.lp.add_column(float(col.cost), self.coefficients(col))
        self.columns.append(col)
        self._index[col.key] = idx
        return idx

    def add_columns(self, cols: Iterable[Column]) -> list[int]:
        added = []
        for col in cols:
            idx = self.add_column(col)
            if idx is not None:
                added.append(idx)
        return added

    def add_cut(self, i: int, j: int, k: int) -> int:
        cut = (i, j, k)
        if k < 1 or k >= self.n:
            raise InvalidCutError()
        if cut in self._cut_rows:
            raise DuplicateCutError()
        coefs: dict[int, float] = {}
        for idx, col in enumerate(self.columns):
            value = self.cut_coefficient(cut, col)
            if value:
                coefs[idx] = float(value)
        row = self.lp.add_row(
            RowSense.LE, 1.0, coefs, name=f"cut_{i}_{j}_{k}", priority=_OTHER_ROWS
        )
        self.cuts.append(cut)
        self._cut_rows[cut] = row
        return row

    def has_cut(self, cut: Triplet) -> bool:
        return cut in self._cut_rows

    def apply_mask(self, mask: FixingMask) -> int:
        """Disable pooled columns incompatible with ``mask``, re-enable the rest."""
        for idx, col in enumerate(self.columns):
            allowed = mask.allows(col)
            if allowed and idx in self._disabled:
                self.lp.fix_column_bounds(idx, 0.0, math.inf)
                self._disabled.discard(idx)
            elif not allowed and idx not in self._disabled:
                self.lp.fix_column_bounds(idx, 0.0, 0.0)
                self._disabled.add(idx)
        return len(self._disabled)

    # solving

    def solve(self) -> LpOutcome:
        """Solve warm from the last basis, retrying cold when that stalls."""
        warm = self.lp.basis is not None
        outcome = self.lp.solve()
        if warm and outcome.status is LpStatus.ITERATION_LIMIT:
            logger.warning("master re-solve from the slack basis after a stalled warm start")
            self.lp.reset_basis()
            outcome = self.lp.solve()
        self.last = outcome
        return outcome

    @property
    def status(self) -> LpStatus | None:
        return None if self.last is None else self.last.status

    @property
    def objective(self) -> float:
        if self.last is None or self.last.status is not LpStatus.OPTIMAL:
            raise MasterNotOptimalError()
        assert self.last.objective is not None
        return self.last.objective

    def _dual_vector(self, y: np.ndarray) -> DualVector:
        n = self.n
        epsilon = np.zeros(n)
        for k in range(1, n):
            epsilon[k] = -y[self.order_row(k)]
        return DualVector(
            alpha=np.maximum(y[0:n], 0.0),
            beta=np.maximum(y[n : 2 * n], 0.0),
            gamma=np.maximum(-y[2 * n : 3 * n], 0.0),
            delta=max(float(-y[self.cardinality_row]), 0.0),
            epsilon=np.maximum(epsilon, 0.0),
            zeta={cut: max(float(-y[row]), 0.0) for cut, row in self._cut_rows.items()},
        )

    def duals(self) -> DualVector:
        """Row duals of the last optimal solve in the nonnegative convention."""
        if self.last is None or self.last.status is not LpStatus.OPTIMAL:
            raise MasterNotOptimalError()
        assert self.last.duals is not None
        return self._dual_vector(self.last.duals)

    def farkas_duals(self) -> DualVector:
        """Infeasibility certificate of the last solve in the dual convention."""
        if self.last is None or self.last.farkas is None:
            raise MasterNotOptimalError("restricted master has no infeasibility certificate")
        return self._dual_vector(self.last.farkas)

    def primal_values(self) -> np.ndarray:
        if self.last is None or self.last.status is not LpStatus.OPTIMAL:
            raise MasterNotOptimalError()
        return self.last.x

    def aggregate_x(self) -> np.ndarray:
        """x[i, j, k] = sum of y over pooled columns of j containing (i, k)."""
        n = self.n
        x = np.zeros((n, n, n))
        for value, col in zip(self.primal_values(), self.columns):
            if value > 1e-12:
                for i, k in col.couples:
                    x[i, col.facility, k] += value
        return x

    # dual-side evaluation

    def row_duals(self, duals: DualVector) -> np.ndarray:
        """LP row multipliers corresponding to ``duals``."""
        n = self.n
        y = np.zeros(self.lp.num_rows)
        y[0:n] = duals.alpha
        y[n : 2 * n] = duals.beta
        y[2 * n : 3 * n] = -duals.gamma
        y[self.cardinality_row] = -duals.delta
        for k in range(1, n):
            y[self.order_row(k)] = -duals.epsilon[k]
        for cut, row in self._cut_rows.items():
            y[row] = -duals.zeta.get(cut, 0.0)
        return y

    def reduced_cost(self, col: Column, duals: DualVector) -> float:
        y = self.row_duals(duals)
        value = float(col.cost)
        for row, coef in self.coefficients(col).items():
            value -= y[row] * coef
        return value

    def dual_objective(self, duals: DualVector) -> float:
        n = self.n
        value = float(duals.alpha.sum() + duals.beta.sum())
        value -= float(duals.gamma.sum()) + self.inst.p * duals.delta
        value -= n * n * float(duals.epsilon[1:].sum())
        value -= sum(duals.zeta.get(cut, 0.0) for cut in self.cuts)
        return value

    def lp_bound_pair(self, minima: Sequence[float]) -> tuple[float, float]:
        """Lagrangian bounds from per-facility minimum reduced costs."""
        z = self.objective
        clipped = [min(0.0, v) for v in minima]
        lb1 = z + self.inst.p * min(clipped, default=0.0)
        lb2 = z + sum(clipped)
        return lb1, lb2

    def dump(self) -> str:
        """Human-readable LP text plus the column legend."""
        legend = [
            f"\\ x{idx}: facility {col.facility} couples {list(col.couples)} cost {col.cost}"
            for idx, col in enumerate(self.columns)
        ]
        return "\n".join(legend) + ("\n" if legend else "") + self.lp.to_text()
