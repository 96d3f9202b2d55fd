from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..models.column import Column, Couple
from ..models.duals import DualVector, Triplet
from ..models.instance import Instance, RankMatrix
from ..models.pricing import FixingMask, PricingMatrix, PricingResult, ZetaSums
from .evaluation import make_column

logger = logging.getLogger(__name__)

# DP move codes
_EMPTY, _START, _DIAG, _LEFT, _UP, _TAKE = range(6)


def build_zeta_sums(
    n: int, ranks: RankMatrix, cuts: Sequence[Triplet], zeta: Mapping[Triplet, float]
) -> ZetaSums:
    """Prefix/suffix sums of cut duals per level, filled for every rank.

    Sums accumulate in ascending rank (prefix) and descending rank (suffix)
    order so each lookup equals the plain sum over the same cuts.
    """
    size = n * n + 2
    first = np.zeros((n, size))
    second = np.zeros((n, size))
    is_cut = np.zeros((n, size), dtype=bool)
    registry = sorted(cuts, key=lambda c: (c[2], ranks.ranks[c[0]][c[1]]))

    level, running = -1, 0.0
    for cut in registry:
        i, j, k = cut
        if k != level:
            level, running = k, 0.0
        running = running + zeta.get(cut, 0.0)
        first[k, ranks.ranks[i][j]] = running
        is_cut[k, ranks.ranks[i][j]] = True

    level, running = -1, 0.0
    for cut in reversed(registry):
        i, j, k = cut
        if k != level:
            level, running = k, 0.0
        running = running + zeta.get(cut, 0.0)
        second[k, ranks.ranks[i][j]] = running

    for k in sorted({c[2] for c in registry}):
        current = 0.0
        for r in range(1, n * n + 1):
            if is_cut[k, r]:
                current = first[k, r]
            else:
                first[k, r] = current
        current = 0.0
        for r in range(n * n, 0, -1):
            if is_cut[k, r]:
                current = second[k, r]
            else:
                second[k, r] = current
    return ZetaSums(first=first, second=second)


def _dp(d: list[list[float]]) -> tuple[float, list[tuple[int, int]]]:
    """Best chain of cells with strictly increasing row and column in d."""
    n = len(d)
    g = [[0.0] * n for _ in range(n)]
    move = [[_EMPTY] * n for _ in range(n)]

    if d[0][0] < 0:
        g[0][0], move[0][0] = d[0][0], _START
    for k in range(1, n):
        if d[0][k] < g[0][k - 1]:
            g[0][k], move[0][k] = d[0][k], _START
        else:
            g[0][k], move[0][k] = g[0][k - 1], _LEFT
    for l in range(1, n):
        if d[l][0] < g[l - 1][0]:
            g[l][0], move[l][0] = d[l][0], _START
        else:
            g[l][0], move[l][0] = g[l - 1][0], _UP
    for l in range(1, n):
        above, row = g[l - 1], g[l]
        for k in range(1, n):
            diag = above[k - 1]
            take = diag + d[l][k]
            best = min(take, diag, row[k - 1], above[k])
            if best == diag:
                row[k], move[l][k] = diag, _DIAG
            elif best == row[k - 1]:
                row[k], move[l][k] = row[k - 1], _LEFT
            elif best == above[k]:
                row[k], move[l][k] = above[k], _UP
            else:
                row[k], move[l][k] = take, _TAKE

    cells: list[tuple[int, int]] = []
    l = k = n - 1
    while l >= 0 and k >= 0:
        step = move[l][k]
        if step == _EMPTY:
            break
        if step == _START:
            cells.append((l, k))
            break
        if step == _TAKE:
            cells.append((l, k))
            l, k = l - 1, k - 1
        elif step == _DIAG:
            l, k = l - 1, k - 1
        elif step == _LEFT:
            k -= 1
        else:
            l -= 1
    cells.reverse()
    return g[n - 1][n - 1], cells


class Pricer:
    """Reduced-cost machinery for the restricted master of one instance."""

    def __init__(
        self,
        inst: Instance,
        ranks: RankMatrix,
        *,
        optimality_tol: float = 1e-6,
        threads: int = 1,
    ) -> None:
        self.inst = inst
        self.ranks = ranks
        self.n = inst.n
        self.optimality_tol = optimality_tol
        self.threads = max(1, threads)
        self._orders = [ranks.facility_order(j) for j in range(self.n)]
        costs = inst.cost_array.astype(float)
        weights = inst.weight_array.astype(float)
        # weighted[j][i, k] = lambda^k * c_ij
        self._weighted = [np.outer(costs[:, j], weights) for j in range(self.n)]

    def zeta_sums(self, duals: DualVector, cuts: Sequence[Triplet]) -> ZetaSums | None:
        if not cuts:
            return None
        return build_zeta_sums(self.n, self.ranks, cuts, duals.zeta)

    def d_coefficient(
        self,
        duals: DualVector,
        i: int,
        j: int,
        k: int,
        zeta_sums: ZetaSums | None = None,
        *,
        with_costs: bool = True,
    ) -> float:
        n, nn = self.n, self.n * self.n
        r = self.ranks.ranks[i][j]
        value = self._weighted[j][i, k] if with_costs else 0.0
        value = value - duals.alpha[i] - duals.beta[k]
        if k >= 1:
            value += (nn - r + 1) * duals.epsilon[k]
            if zeta_sums is not None:
                value += zeta_sums.suffix(r, k)
        if k <= n - 2:
            value += r * duals.epsilon[k + 1]
            if zeta_sums is not None:
                value += zeta_sums.prefix(r, k + 1)
        return float(value)

    def d_matrix(
        self,
        duals: DualVector,
        j: int,
        zeta_sums: ZetaSums | None = None,
        *,
        with_costs: bool = True,
    ) -> np.ndarray:
        """d[i, k] for facility j, rows in client order."""
        n, nn = self.n, self.n * self.n
        r = self.ranks.array[:, j]
        base = self._weighted[j] if with_costs else np.zeros((n, n))
        d = base - duals.alpha[:, None] - duals.beta[None, :]
        if n == 1:
            return d
        d[:, 1:] += (nn - r + 1)[:, None] * duals.epsilon[None, 1:]
        if zeta_sums is not None:
            d[:, 1:] += zeta_sums.second[1:, r].T
        d[:, :-1] += r[:, None] * duals.epsilon[None, 1:]
        if zeta_sums is not None:
            d[:, :-1] += zeta_sums.first[1:, r].T
        return d

    def build_pricing_matrix(
        self,
        duals: DualVector,
        j: int,
        mask: FixingMask | None = None,
        zeta_sums: ZetaSums | None = None,
        *,
        with_costs: bool = True,
    ) -> PricingMatrix:
        order = self._orders[j]
        d = self.d_matrix(duals, j, zeta_sums, with_costs=with_costs)[order, :]
        if mask:
            for l, i in enumerate(order):
                for k in range(self.n):
                    if mask.blocks(i, j, k):
                        d[l, k] = math.inf
        return PricingMatrix(facility=j, order=tuple(order), d=d)

    def exact_pricer(self, pm: PricingMatrix, duals: DualVector) -> PricingResult:
        """Minimum reduced cost over all feasible couple sets of pm's facility."""
        g, cells = _dp(pm.d.tolist())
        couples = tuple((pm.order[l], k) for l, k in cells)
        return PricingResult(
            facility=pm.facility,
            reduced_cost=float(g + duals.delta + duals.gamma[pm.facility]),
            couples=couples,
        )

    def price_exact(
        self,
        duals: DualVector,
        mask: FixingMask | None = None,
        zeta_sums: ZetaSums | None = None,
        *,
        with_costs: bool = True,
        facilities: Iterable[int] | None = None,
    ) -> list[PricingResult]:
        """Exact pricing of every facility; one result per facility, in order."""
        targets = list(range(self.n) if facilities is None else facilities)

        def price(j: int) -> PricingResult:
            pm = self.build_pricing_matrix(duals, j, mask, zeta_sums, with_costs=with_costs)
            return self.exact_pricer(pm, duals)

        if self.threads > 1 and len(targets) > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                return list(pool.map(price, targets))
        return [price(j) for j in targets]

    def farkas_pricer(
        self,
        farkas: DualVector,
        mask: FixingMask | None = None,
        zeta_sums: ZetaSums | None = None,
    ) -> list[PricingResult]:
        """Price against an infeasibility certificate with column costs zeroed."""
        return self.price_exact(farkas, mask, zeta_sums, with_costs=False)

    def hurry_pricer(
        self,
        duals: DualVector,
        mask: FixingMask | None = None,
        zeta_sums: ZetaSums | None = None,
        facilities: Iterable[int] | None = None,
    ) -> list[PricingResult]:
        """Greedy scan for negative columns; finding none proves nothing."""
        n = self.n
        has_cuts = zeta_sums is not None
        found = []
        for j in range(n) if facilities is None else sorted(facilities):
            plain = self.d_matrix(duals, j)
            ranks_j = self.ranks.array[:, j]
            total = 0.0
            couples: list[Couple] = []
            last, l = -1, 0
            while last != n - 1 and l < n:
                i = self._orders[j][l]
                for k in range(last + 1, n):
                    if mask and mask.blocks(i, j, k):
                        continue
                    value = float(plain[i, k])
                    if value >= 0:
                        continue
                    if has_cuts:
                        assert zeta_sums is not None
                        r = int(ranks_j[i])
                        if k >= 1:
                            value += zeta_sums.suffix(r, k)
                        if k <= n - 2:
                            value += zeta_sums.prefix(r, k + 1)
                        if value >= 0:
                            continue
                    total += value
                    couples.append((i, k))
                    last = k
                    break
                l += 1
            reduced = total + duals.delta + float(duals.gamma[j])
            if couples and reduced < -self.optimality_tol:
                found.append(
                    PricingResult(facility=j, reduced_cost=reduced, couples=tuple(couples))
                )
        return found

    def to_column(self, result: PricingResult) -> Column:
        return make_column(self.inst, self.ranks, result.facility, result.couples)
