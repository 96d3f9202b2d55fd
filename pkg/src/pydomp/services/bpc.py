from __future__ import annotations

import heapq
import logging
import math
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConsistencyError, InvalidFixingError, NoFractionalVariableError
from ..models.bpc import (
    BoundEvent,
    BranchStrategy,
    NodeRecord,
    NodeStatus,
    SolveParams,
    SolveReport,
    SolveStatus,
)
from ..models.column import Column, FacilitySet
from ..models.duals import Triplet
from ..models.instance import Instance, RankMatrix
from ..models.lp import Basis
from ..models.pricing import FixingMask
from ..models.stabilization import CgReport, CgStatus
from ..utils import validate_fixings
from ._base import _Service
from .evaluation import ordered_value, solution_to_columns
from .grasp import run_grasp
from .instances import compute_ranks
from .master import RestrictedMaster
from .pricing import Pricer
from .stabilization import ColumnGeneration, bound_reaches

logger = logging.getLogger(__name__)


def aggregate_x(rm: RestrictedMaster) -> np.ndarray:
    """Original-variable values x[i, j, k] of the last master solution."""
    return rm.aggregate_x()


def is_integral(values: np.ndarray, tol: float = 1e-6) -> bool:
    return bool(np.all(np.minimum(np.abs(values), np.abs(values - 1.0)) <= tol))


def select_branching_variable(
    x: np.ndarray,
    inst: Instance,
    strategy: BranchStrategy = BranchStrategy.WEIGHTED,
    theta: float = 0.5,
    tol: float = 1e-6,
) -> Triplet:
    """Fractional triplet minimizing the strategy's score; ties go to the smallest."""
    fractional = np.argwhere((x > tol) & (x < 1.0 - tol))
    if len(fractional) == 0:
        raise NoFractionalVariableError()
    best: Triplet | None = None
    best_score = math.inf
    for i, j, k in fractional.tolist():
        value = float(x[i, j, k])
        weight = float(inst.weights[k] * inst.costs[i][j])
        down, up = weight / value, weight / (1.0 - value)
        if strategy is BranchStrategy.WEIGHTED:
            score = theta * down + (1.0 - theta) * up
        elif strategy is BranchStrategy.MIN:
            score = min(down, up)
        else:
            score = max(down, up)
        if score < best_score:
            best, best_score = (i, j, k), score
    assert best is not None
    return best


def cut_lhs(x: np.ndarray, ranks: RankMatrix) -> np.ndarray:
    """lhs[k, r - 1] of the order cut at position k and rank r (row 0 unused)."""
    n = ranks.n
    by_rank = np.array([[x[i, j, k] for i, j in ranks.cells] for k in range(n)])
    lhs = np.zeros((n, n * n))
    prefix = np.cumsum(by_rank, axis=1)
    suffix = np.cumsum(by_rank[:, ::-1], axis=1)[:, ::-1]
    lhs[1:] = prefix[1:] + suffix[:-1]
    return lhs


def separate_cuts(
    x: np.ndarray,
    ranks: RankMatrix,
    max_cuts: int = 100,
    tol: float = 1e-4,
    existing: Callable[[Triplet], bool] | None = None,
) -> list[tuple[Triplet, float]]:
    """Violated order cuts as (triplet, violation), most violated first."""
    lhs = cut_lhs(x, ranks)
    found: list[tuple[Triplet, float]] = []
    for k in range(1, ranks.n):
        for r in np.nonzero(lhs[k] > 1.0 + tol)[0].tolist():
            i, j = ranks.cells[r]
            cut = (i, j, k)
            if existing is not None and existing(cut):
                continue
            found.append((cut, float(lhs[k, r] - 1.0)))
    found.sort(key=lambda item: (-item[1], item[0]))
    return found[:max_cuts]


def decode_incumbent(x: np.ndarray, inst: Instance, tol: float = 1e-6) -> FacilitySet:
    """Facilities serving at least one client, padded with the smallest unused ones."""
    used = [j for j in range(inst.n) if x[:, j, :].sum() >= 1.0 - tol]
    if len(used) > inst.p:
        raise ConsistencyError(f"integral point opens {len(used)} > p facilities")
    for j in range(inst.n):
        if len(used) == inst.p:
            break
        if j not in used:
            used.append(j)
    return FacilitySet.of(used)


def load_fixings(path: str | Path) -> list[Triplet]:
    """Read zero-fixings, one ``i j k`` triplet per line; ``#`` starts a comment."""
    fixings: list[Triplet] = []
    text = Path(path).read_text(encoding="utf-8")
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            values = [int(v) for v in parts]
        except ValueError:
            raise InvalidFixingError(f"line {number}: expected integers") from None
        if len(values) != 3 or min(values) < 0:
            raise InvalidFixingError(f"line {number}: expected three indices i j k")
        fixings.append((values[0], values[1], values[2]))
    return fixings


@dataclass(order=True)
class _Node:
    bound: float
    # x = 1 children sort first among equal bounds
    down: int
    id: int
    mask: FixingMask = field(compare=False)
    parent: int | None = field(default=None, compare=False)
    depth: int = field(default=0, compare=False)
    fixing: Triplet | None = field(default=None, compare=False)
    fixed_value: int | None = field(default=None, compare=False)
    # final LP basis of the parent; children warm start from it
    basis: Basis | None = field(default=None, compare=False)


class _Tree:
    """Sequential owner of the pool, the LP, the incumbent and the open nodes."""

    def __init__(self, inst: Instance, params: SolveParams, lp_max_iterations: int):
        self.inst = inst
        self.params = params
        self.ranks = compute_ranks(inst)
        self.rm = RestrictedMaster(inst, self.ranks, max_iterations=lp_max_iterations)
        self.pricer = Pricer(inst, self.ranks, threads=params.threads)
        self.cg = ColumnGeneration(self.rm, self.pricer, params.stab)
        self.best_value: float = math.inf
        self.best_set: FacilitySet | None = None
        self.lower_bound = -math.inf
        self.records: list[NodeRecord] = []
        self.history: list[BoundEvent] = []
        self.open: list[_Node] = []
        self.next_id = 0
        self.processed = 0
        self.root_lp_value: float | None = None
        self.root_lp_value_after_cuts: float | None = None

    def offer(self, J: FacilitySet, columns: list[Column] | None = None) -> None:
        value = ordered_value(self.inst, J)
        if value < self.best_value:
            logger.debug("new incumbent %s -> %d", J.open, value)
            self.best_value, self.best_set = value, J
        self.rm.add_columns(columns if columns is not None else [])

    def push(self, node: _Node) -> None:
        heapq.heappush(self.open, node)

    def new_id(self) -> int:
        self.next_id += 1
        return self.next_id - 1

    def refresh_bound(self) -> None:
        bound = min((node.bound for node in self.open), default=self.best_value)
        bound = min(bound, self.best_value)
        if bound > self.lower_bound:
            self.lower_bound = bound
            self.history.append(
                BoundEvent(
                    nodes=self.processed,
                    lower_bound=bound,
                    upper_bound=self.best_value,
                )
            )

    def column_generation(self, mask: FixingMask, deadline: float) -> CgReport:
        return self.cg.run(mask, self.best_value, deadline=deadline)

    def process(self, node: _Node, deadline: float) -> NodeStatus | None:
        """Solve one node; returns None when the deadline interrupted it."""
        params, rm = self.params, self.rm
        rm.apply_mask(node.mask)
        if node.basis is not None:
            rm.lp.basis = node.basis
        report = self.column_generation(node.mask, deadline)
        is_root = node.parent is None
        rounds = params.max_cut_rounds_root if is_root else params.max_cut_rounds_node
        if params.use_cuts:
            for _ in range(rounds):
                if report.status is not CgStatus.CONVERGED:
                    break
                if is_root and self.root_lp_value is None:
                    self.root_lp_value = report.lp_value
                cuts = separate_cuts(
                    rm.aggregate_x(),
                    self.ranks,
                    params.max_cuts_per_round,
                    params.cut_tol,
                    rm.has_cut,
                )
                if not cuts:
                    break
                for (i, j, k), _violation in cuts:
                    rm.add_cut(i, j, k)
                logger.debug("node %d: added %d cuts", node.id, len(cuts))
                report = self.column_generation(node.mask, deadline)

        status = report.status
        if status is CgStatus.ITERATION_LIMIT and time.monotonic() > deadline:
            return None
        if status is CgStatus.INFEASIBLE:
            self.record(node, NodeStatus.PRUNED_INFEASIBLE, node.bound, None)
            return NodeStatus.PRUNED_INFEASIBLE
        if status is CgStatus.FATHOMED:
            bound = max(node.bound, report.lagrangian_bound)
            self.record(node, NodeStatus.PRUNED_BOUND, bound, report.lp_value)
            return NodeStatus.PRUNED_BOUND

        if report.lp_value is None:
            raise ConsistencyError("column generation ended without an LP solution")
        if status is CgStatus.CONVERGED:
            bound = max(node.bound, report.lp_value)
        else:
            logger.warning("node %d: column generation hit its iteration cap", node.id)
            bound = max(node.bound, report.lagrangian_bound)
        if is_root:
            if self.root_lp_value is None:
                self.root_lp_value = report.lp_value
            self.root_lp_value_after_cuts = report.lp_value

        x = rm.aggregate_x()
        tol = params.integrality_tol
        if is_integral(x, tol):
            if not is_integral(rm.primal_values(), tol):
                raise ConsistencyError("integral x with fractional master values")
            J = decode_incumbent(x, self.inst, tol)
            value = ordered_value(self.inst, J)
            if value > report.lp_value + 1e-6:
                raise ConsistencyError(
                    f"decoded value {value} exceeds node LP value {report.lp_value}"
                )
            self.offer(J)
            self.record(node, NodeStatus.INTEGRAL, bound, report.lp_value)
            return NodeStatus.INTEGRAL
        if bound_reaches(bound, self.best_value):
            self.record(node, NodeStatus.PRUNED_BOUND, bound, report.lp_value)
            return NodeStatus.PRUNED_BOUND

        triplet = select_branching_variable(
            x, self.inst, params.branch_strategy, params.theta, tol
        )
        logger.debug("node %d: branch on %s (x=%.4f)", node.id, triplet, x[triplet])
        if node.mask.can_fix_one(triplet):
            self.push(
                _Node(
                    bound,
                    0,
                    self.new_id(),
                    node.mask.with_one(triplet),
                    node.id,
                    node.depth + 1,
                    triplet,
                    1,
                    rm.lp.basis,
                )
            )
        self.push(
            _Node(
                bound,
                1,
                self.new_id(),
                node.mask.with_zero(triplet),
                node.id,
                node.depth + 1,
                triplet,
                0,
                rm.lp.basis,
            )
        )
        self.record(node, NodeStatus.BRANCHED, bound, report.lp_value)
        return NodeStatus.BRANCHED

    def record(
        self, node: _Node, status: NodeStatus, bound: float, lp_value: float | None
    ) -> None:
        self.records.append(
            NodeRecord(
                id=node.id,
                parent=node.parent,
                depth=node.depth,
                fixing=node.fixing,
                fixed_value=node.fixed_value,
                lower_bound=bound,
                lp_value=lp_value,
                status=status,
            )
        )


def solve(
    inst: Instance, params: SolveParams | None = None, *, lp_max_iterations: int = 50_000
) -> SolveReport:
    """Branch-price-and-cut to proven optimality or the time limit."""
    params = params or SolveParams()
    fixings = validate_fixings(params.fixings, inst.n)
    start = time.monotonic()
    deadline = start + params.time_limit
    tree = _Tree(inst, params, lp_max_iterations)

    if params.use_grasp:
        warm = run_grasp(inst, params.grasp, tree.ranks)
        tree.offer(warm.best_set, warm.harvested_columns)
        tree.rm.add_columns(solution_to_columns(inst, warm.best_set, tree.ranks))

    root_mask = FixingMask(zeros=frozenset(fixings))
    tree.push(_Node(0.0, 0, tree.new_id(), root_mask))
    status = SolveStatus.OPTIMAL
    while tree.open:
        if time.monotonic() > deadline:
            status = SolveStatus.TIME_LIMIT
            break
        node = heapq.heappop(tree.open)
        if bound_reaches(node.bound, tree.best_value) and node.parent is not None:
            tree.record(node, NodeStatus.PRUNED_BOUND, node.bound, None)
            continue
        tree.processed += 1
        outcome = tree.process(node, deadline)
        if outcome is None:
            tree.push(node)
            status = SolveStatus.TIME_LIMIT
            break
        tree.refresh_bound()

    tree.refresh_bound()
    lower = tree.lower_bound
    upper = tree.best_value
    if math.isinf(upper):
        gap = 100.0
    elif upper > 0:
        gap = max(0.0, 100.0 * (upper - lower) / upper)
    else:
        gap = 0.0
    report = SolveReport(
        n=inst.n,
        p=inst.p,
        status=status,
        best_value=None if math.isinf(upper) else int(upper),
        best_set=tree.best_set,
        lower_bound=0.0 if math.isinf(lower) else float(lower),
        gap_pct=gap,
        nodes=tree.processed,
        columns=len(tree.rm.columns),
        cuts=len(tree.rm.cuts),
        time_s=time.monotonic() - start,
        root_lp_value=tree.root_lp_value,
        root_lp_value_after_cuts=tree.root_lp_value_after_cuts,
        node_records=tree.records,
        bound_history=tree.history,
    )
    logger.info(
        "solve n=%d p=%d: %s value=%s lb=%.6f nodes=%d",
        inst.n,
        inst.p,
        status.value,
        report.best_value,
        report.lower_bound,
        report.nodes,
    )
    return report


class BranchPriceAndCut(_Service):
    def solve(self, inst: Instance, params: SolveParams | None = None) -> SolveReport:
        """Solve an instance to optimality; defaults derive from the configuration."""
        params = params or SolveParams.from_config(self.cfg)
        return solve(inst, params, lp_max_iterations=self.cfg.lp_max_iterations)

    def load_fixings(self, path: str | Path) -> list[Triplet]:
        return load_fixings(path)
