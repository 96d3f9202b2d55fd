from __future__ import annotations

import logging
import math
import time
from collections.abc import Sequence

from ..errors import LPIterationLimitError, MasterNotOptimalError
from ..models.column import Column
from ..models.duals import DualVector
from ..models.lp import LpStatus
from ..models.pricing import FixingMask, PricingResult
from ..models.stabilization import CgIteration, CgReport, CgStatus, StabConfig
from .master import RestrictedMaster
from .pricing import Pricer

logger = logging.getLogger(__name__)

_BOUND_TOL = 1e-6


def bound_reaches(bound: float, cutoff: float) -> bool:
    """True when a lower bound proves nothing below ``cutoff`` exists.

    Objective values are integers, so the bound may be rounded up first.
    """
    if math.isinf(cutoff):
        return False
    return bound >= cutoff - _BOUND_TOL or math.ceil(bound - _BOUND_TOL) >= cutoff


class ColumnGeneration:
    """Stabilized column generation over one restricted master.

    Pricing runs at a convex combination of the master duals and the best
    dual vector seen so far. Convergence is only declared after an exact
    pricing round at the master duals finds no negative column.
    """

    def __init__(
        self,
        rm: RestrictedMaster,
        pricer: Pricer,
        cfg: StabConfig | None = None,
        *,
        optimality_tol: float = 1e-6,
    ) -> None:
        self.rm = rm
        self.pricer = pricer
        self.cfg = cfg or StabConfig()
        self.optimality_tol = optimality_tol

    def _keep(
        self, results: Sequence[PricingResult], duals: DualVector
    ) -> list[Column]:
        """Columns negative at the pricing point that are also negative at ``duals``."""
        tol = self.optimality_tol
        kept: dict[tuple[int, tuple[tuple[int, int], ...]], Column] = {}
        for result in results:
            if not result.couples or result.reduced_cost >= -tol:
                continue
            col = self.pricer.to_column(result)
            if self.rm.has_column(col) or col.key in kept:
                continue
            if self.rm.reduced_cost(col, duals) < -tol:
                kept[col.key] = col
        return list(kept.values())

    def _farkas_round(self, mask: FixingMask | None) -> int:
        farkas = self.rm.farkas_duals()
        zeta_sums = self.pricer.zeta_sums(farkas, self.rm.cuts)
        results = self.pricer.farkas_pricer(farkas, mask, zeta_sums)
        cols = [
            self.pricer.to_column(r)
            for r in results
            if r.couples and r.reduced_cost < -self.optimality_tol
        ]
        return len(self.rm.add_columns(cols))

    def run(
        self,
        mask: FixingMask | None = None,
        cutoff: float = math.inf,
        *,
        deadline: float | None = None,
    ) -> CgReport:
        """Solve the master LP under ``mask`` to optimality by column generation."""
        cfg, rm = self.cfg, self.rm
        pi_bar = DualVector.zeros(rm.n)
        lb_bar = 0.0
        delta = cfg.delta_init if cfg.enabled else 1.0
        trace: list[CgIteration] = []
        total_added = 0
        z: float | None = None
        lb1: float | None = None
        lb2: float | None = None
        minima: list[float] = []

        def report(status: CgStatus, iterations: int) -> CgReport:
            return CgReport(
                status=status,
                lp_value=z,
                iterations=iterations,
                columns_added=total_added,
                lagrangian_bound=lb_bar,
                lb1=lb1,
                lb2=lb2,
                facility_minima=minima,
                trace=trace,
            )

        for it in range(1, cfg.max_iterations + 1):
            if deadline is not None and time.monotonic() > deadline:
                return report(CgStatus.ITERATION_LIMIT, it - 1)
            outcome = rm.solve()
            if outcome.status is LpStatus.INFEASIBLE:
                added = self._farkas_round(mask)
                total_added += added
                trace.append(
                    CgIteration(
                        iteration=it,
                        lp_value=None,
                        lower_bound=lb_bar,
                        delta=delta,
                        columns_added=added,
                        farkas=True,
                    )
                )
                logger.debug("cg %d: infeasible master, %d farkas columns", it, added)
                if added == 0:
                    z = None
                    return report(CgStatus.INFEASIBLE, it)
                continue
            if outcome.status is LpStatus.ITERATION_LIMIT:
                raise LPIterationLimitError()
            if outcome.status is not LpStatus.OPTIMAL:
                raise MasterNotOptimalError("restricted master is unbounded")

            z = rm.objective
            pi = rm.duals()
            zs_pi = self.pricer.zeta_sums(pi, rm.cuts)
            if delta < 1.0:
                pi_st = pi.combine(pi_bar, delta)
                zs_st = self.pricer.zeta_sums(pi_st, rm.cuts)
            else:
                pi_st, zs_st = pi, zs_pi

            kept: list[Column] = []
            exact_st: list[PricingResult] | None = None
            if cfg.hurry_first:
                kept = self._keep(self.pricer.hurry_pricer(pi_st, mask, zs_st), pi)
            if not kept:
                exact_st = self.pricer.price_exact(pi_st, mask, zs_st)
                kept = self._keep(exact_st, pi)

            candidates: list[tuple[float, DualVector]] = []
            if exact_st is not None:
                minima = [r.reduced_cost for r in exact_st]
                bound = rm.dual_objective(pi_st) + sum(min(0.0, v) for v in minima)
                candidates.append((bound, pi_st))

            certified = False
            if not kept:
                if pi_st is pi and exact_st is not None:
                    exact_pi = exact_st
                else:
                    exact_pi = self.pricer.price_exact(pi, mask, zs_pi)
                minima = [r.reduced_cost for r in exact_pi]
                lb1, lb2 = rm.lp_bound_pair(minima)
                candidates.append((max(lb1, lb2), pi))
                kept = self._keep(exact_pi, pi)
                certified = not kept

            for bound, point in candidates:
                if bound > lb_bar:
                    lb_bar, pi_bar = bound, point

            added = len(rm.add_columns(kept))
            total_added += added
            gap = (z - lb_bar) / z if z > 0 else 0.0
            trace.append(
                CgIteration(
                    iteration=it,
                    lp_value=z,
                    lower_bound=lb_bar,
                    delta=delta,
                    columns_added=added,
                )
            )
            logger.debug(
                "cg %d: z=%.6f lb=%.6f delta=%.3f added=%d", it, z, lb_bar, delta, added
            )

            if certified:
                return report(CgStatus.CONVERGED, it)
            if bound_reaches(lb_bar, cutoff):
                logger.debug("cg %d: bound %.6f reaches cutoff %s", it, lb_bar, cutoff)
                return report(CgStatus.FATHOMED, it)
            if cfg.enabled:
                delta = 1.0 if gap <= cfg.eps_gap else min(1.0, max(delta, 1.0 - gap))

        return report(CgStatus.ITERATION_LIMIT, cfg.max_iterations)
