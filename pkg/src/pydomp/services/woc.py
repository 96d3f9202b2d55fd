"""Compact weak-order formulation and its comparison with the master LP."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from .._simplex import LinearProgram
from ..errors import MasterNotOptimalError, ModelTooLargeError
from ..models.column import FacilitySet
from ..models.instance import Instance, RankMatrix
from ..models.lp import LpStatus, RowSense
from ..models.stabilization import CgStatus, StabConfig
from ..models.woc import GapReport, MappedPoint
from ._base import _Service
from .bpc import separate_cuts
from .evaluation import solution_to_columns
from .grasp import construct_greedy
from .instances import compute_ranks
from .master import RestrictedMaster
from .pricing import Pricer
from .stabilization import ColumnGeneration

logger = logging.getLogger(__name__)


class WocModel:
    """LP relaxation over x[i, j, k] and y[j], all in [0, 1]."""

    def __init__(self, inst: Instance, ranks: RankMatrix, *, strong: bool = False):
        self.inst = inst
        self.ranks = ranks
        self.strong = strong
        self.n = n = inst.n
        nn = n * n
        self.lp = LinearProgram()

        self.client_rows = [
            self.lp.add_row(RowSense.EQ, 1.0, name=f"client_{i}") for i in range(n)
        ]
        self.position_rows = [
            self.lp.add_row(RowSense.EQ, 1.0, name=f"position_{k}") for k in range(n)
        ]
        self.linking_rows = [
            self.lp.add_row(RowSense.LE, 0.0, name=f"link_{i}_{j}")
            for i in range(n)
            for j in range(n)
        ]
        self.cardinality_row = self.lp.add_row(
            RowSense.EQ, float(inst.p), name="cardinality"
        )
        self.order_rows = [
            self.lp.add_row(RowSense.LE, float(nn), name=f"order_{k}")
            for k in range(1, n)
        ]
        # strong_rows[(k - 1) * nn + (rank - 1)]
        self.strong_rows: list[int] = []
        if strong:
            for k in range(1, n):
                for i, j in ranks.cells:
                    self.strong_rows.append(
                        self.lp.add_row(RowSense.LE, 1.0, name=f"strong_{i}_{j}_{k}")
                    )

        for i in range(n):
            for j in range(n):
                r = ranks.ranks[i][j]
                for k in range(n):
                    coefs = {
                        self.client_rows[i]: 1.0,
                        self.position_rows[k]: 1.0,
                        self.linking_rows[i * n + j]: 1.0,
                    }
                    if k >= 1:
                        coefs[self.order_rows[k - 1]] = float(nn - r + 1)
                    if k <= n - 2:
                        coefs[self.order_rows[k]] = float(r)
                    if strong:
                        for rho in range(1, nn + 1):
                            if k >= 1 and r <= rho:
                                coefs[self.strong_rows[(k - 1) * nn + rho - 1]] = 1.0
                            if k <= n - 2 and r >= rho:
                                coefs[self.strong_rows[k * nn + rho - 1]] = 1.0
                    self.lp.add_column(
                        float(inst.weights[k] * inst.costs[i][j]),
                        coefs,
                        upper=1.0,
                        name=f"x_{i}_{j}_{k}",
                    )
        for j in range(n):
            coefs = {self.linking_rows[i * n + j]: -1.0 for i in range(n)}
            coefs[self.cardinality_row] = 1.0
            self.lp.add_column(0.0, coefs, upper=1.0, name=f"y_{j}")

    def x_index(self, i: int, j: int, k: int) -> int:
        return (i * self.n + j) * self.n + k

    def y_index(self, j: int) -> int:
        return self.n**3 + j

    @property
    def num_variables(self) -> int:
        return self.lp.num_columns

    @property
    def num_rows(self) -> int:
        return self.lp.num_rows

    def solve(self) -> float:
        outcome = self.lp.solve()
        if outcome.status is not LpStatus.OPTIMAL or outcome.objective is None:
            raise MasterNotOptimalError(f"WOC relaxation ended {outcome.status.value}")
        return outcome.objective

    def vector(self, point: MappedPoint) -> np.ndarray:
        return np.concatenate([np.asarray(point.x).reshape(-1), np.asarray(point.y)])


def build_woc(
    inst: Instance,
    strong: bool = False,
    *,
    ranks: RankMatrix | None = None,
    max_n: int = 60,
) -> WocModel:
    if inst.n > max_n:
        raise ModelTooLargeError(f"n={inst.n} exceeds the WOC guard of {max_n}")
    return WocModel(inst, ranks or compute_ranks(inst), strong=strong)


def map_master_point(rm: RestrictedMaster) -> MappedPoint:
    """x from summed column values per couple, y from summed column values per facility."""
    y = np.zeros(rm.n)
    for value, col in zip(rm.primal_values(), rm.columns):
        y[col.facility] += value
    return MappedPoint(x=rm.aggregate_x(), y=y)


def woc_violations(model: WocModel, point: MappedPoint, relaxed: bool = True) -> float:
    """Largest row violation of ``point``.

    Relaxed mode reads client and position rows as >= and the cardinality row
    as <=, the senses the master uses for the same rows.
    """
    activity = model.lp.dense_matrix() @ model.vector(point)
    covering = set(model.client_rows) | set(model.position_rows)
    worst = 0.0
    for r, value in enumerate(activity):
        sense, rhs = model.lp.row(r)
        if sense is RowSense.LE:
            gap = value - rhs
        elif sense is RowSense.GE:
            gap = rhs - value
        elif relaxed and r in covering:
            gap = rhs - value
        elif relaxed and r == model.cardinality_row:
            gap = value - rhs
        else:
            gap = abs(value - rhs)
        worst = max(worst, float(gap))
    return worst


def export_woc(model: WocModel, path: str | Path) -> None:
    Path(path).write_text(model.lp.to_text(), encoding="utf-8")


def gap_pct(reference: float, lp_value: float) -> float:
    return 100.0 * (reference - lp_value) / reference if reference > 0 else 0.0


def master_root(
    inst: Instance,
    strong: bool = False,
    *,
    ranks: RankMatrix | None = None,
    stab: StabConfig | None = None,
    max_cut_rounds: int = 50,
    cut_tol: float = 1e-4,
) -> RestrictedMaster:
    """Master LP at the root, optionally closed under order cuts."""
    ranks = ranks or compute_ranks(inst)
    greedy = construct_greedy(inst, FacilitySet(open=()))
    rm = RestrictedMaster.build(inst, ranks, solution_to_columns(inst, greedy, ranks))
    cg = ColumnGeneration(rm, Pricer(inst, ranks), stab)
    report = cg.run()
    rounds = max_cut_rounds if strong else 0
    for _ in range(rounds):
        if report.status is not CgStatus.CONVERGED:
            break
        cuts = separate_cuts(rm.aggregate_x(), ranks, tol=cut_tol, existing=rm.has_cut)
        if not cuts:
            break
        for (i, j, k), _violation in cuts:
            rm.add_cut(i, j, k)
        report = cg.run()
    if report.status is not CgStatus.CONVERGED:
        raise MasterNotOptimalError(f"root column generation ended {report.status.value}")
    return rm


def gap_report(
    inst: Instance,
    reference_value: float,
    *,
    strong: bool = False,
    max_n: int = 60,
) -> GapReport:
    """Integrality gaps of the master and WOC relaxations against a known value."""
    ranks = compute_ranks(inst)
    model = build_woc(inst, strong, ranks=ranks, max_n=max_n)
    woc_value = model.solve()
    rm = master_root(inst, strong, ranks=ranks)
    mp_value = rm.objective
    logger.info("relaxations: mp=%.6f woc=%.6f ref=%s", mp_value, woc_value, reference_value)
    return GapReport(
        reference_value=reference_value,
        mp_lp_value=mp_value,
        woc_lp_value=woc_value,
        gap_mp_pct=gap_pct(reference_value, mp_value),
        gap_woc_pct=gap_pct(reference_value, woc_value),
        vars_mp=len(rm.columns),
        vars_woc=model.num_variables,
    )


class Relaxations(_Service):
    def build_woc(self, inst: Instance, strong: bool = False) -> WocModel:
        """Compact relaxation, guarded by the configured size limit."""
        return build_woc(inst, strong, max_n=self.cfg.woc_max_n)

    def master_root(self, inst: Instance, strong: bool = False) -> RestrictedMaster:
        """Root master LP solved by column generation."""
        return master_root(inst, strong, cut_tol=self.cfg.cut_tol)

    def gap_report(
        self, inst: Instance, reference_value: float, strong: bool = False
    ) -> GapReport:
        return gap_report(inst, reference_value, strong=strong, max_n=self.cfg.woc_max_n)

    def export_woc(self, model: WocModel, path: str | Path) -> None:
        export_woc(model, path)
