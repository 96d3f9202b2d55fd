"""Dense bounded-variable simplex kernel.

Every row r receives a slack s_r so that ``a_r x + s_r = b_r`` with
``s_r`` in ``[0, inf)`` for <= rows, ``(-inf, 0]`` for >= rows and ``[0, 0]``
for = rows. Structural variables carry box bounds ``[lower, upper]``.

Row duals follow the minimization convention: ``y_r >= 0`` on >= rows and
``y_r <= 0`` on <= rows.

A solve starts from the previous basis when one is available. An
infeasible basis that is dual feasible goes through the dual simplex; any
other infeasible basis goes through a primal phase minimizing the sum of
infeasibilities, whose duals become the Farkas certificate when that sum
stays positive. Ratio tests follow Harris with a relative pivot tolerance.
Dantzig pricing switches to Bland's rule after a streak of degenerate
pivots and stays there until the objective moves by more than the
tolerance. The basis inverse is kept explicitly, updated in place per
pivot and rebuilt every ``_REFACTOR_EVERY`` pivots.

Ties between equally attractive rows are broken by the row priority given
to :meth:`LinearProgram.add_row` (smaller first), then by row index.
"""

from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import InvalidBoundsError, LPDimensionError, LPNumericalError
from .models.lp import Basis, LpOutcome, LpStatus, RowSense

logger = logging.getLogger(__name__)

_PIVOT_ABS = 1e-9
_PIVOT_REL = 1e-7
_TIE_TOL = 1e-12
_SINGULAR_TOL = 1e-11
_DEGENERATE_STREAK = 50
_REFACTOR_EVERY = 64
_DUAL_BUDGET = 20
_INITIAL_CAPACITY = 16


class _SingularBasis(Exception):
    pass


class _DualStalled(Exception):
    pass


@dataclass
class _Inverse:
    """Basis inverse left behind by the last solve."""

    basic: tuple[int, ...]
    rows: int
    matrix: np.ndarray
    updates: int


def _grown(values: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=values.dtype)
    out[: values.size] = values
    return out


class LinearProgram:
    """Minimization LP built incrementally by rows and columns."""

    def __init__(
        self,
        *,
        feasibility_tol: float = 1e-7,
        optimality_tol: float = 1e-6,
        max_iterations: int = 50_000,
    ) -> None:
        self.feasibility_tol = feasibility_tol
        self.optimality_tol = optimality_tol
        self.max_iterations = max_iterations
        self._m = 0
        self._n = 0
        # column-major storage: self._at[j, r] is the coefficient of column j in row r
        self._at = np.zeros((_INITIAL_CAPACITY, _INITIAL_CAPACITY))
        self._cost = np.zeros(_INITIAL_CAPACITY)
        self._lower = np.zeros(_INITIAL_CAPACITY)
        self._upper = np.zeros(_INITIAL_CAPACITY)
        self._rhs = np.zeros(_INITIAL_CAPACITY)
        self._priority = np.zeros(_INITIAL_CAPACITY, dtype=np.int64)
        self._senses: list[RowSense] = []
        self._col_names: list[str] = []
        self._row_names: list[str] = []
        self._inverse: _Inverse | None = None
        self.basis: Basis | None = None

    @property
    def num_rows(self) -> int:
        return self._m

    @property
    def num_columns(self) -> int:
        return self._n

    def _reserve(self, columns: int, rows: int) -> None:
        col_cap, row_cap = self._at.shape
        if columns > col_cap:
            col_cap = max(columns, 2 * col_cap)
            self._cost = _grown(self._cost, col_cap)
            self._lower = _grown(self._lower, col_cap)
            self._upper = _grown(self._upper, col_cap)
        if rows > row_cap:
            row_cap = max(rows, 2 * row_cap)
            self._rhs = _grown(self._rhs, row_cap)
            self._priority = _grown(self._priority, row_cap)
        if (col_cap, row_cap) != self._at.shape:
            at = np.zeros((col_cap, row_cap))
            at[: self._n, : self._m] = self._at[: self._n, : self._m]
            self._at = at

    def add_row(
        self,
        sense: RowSense,
        rhs: float,
        coefficients: Mapping[int, float] | None = None,
        *,
        name: str | None = None,
        priority: int = 0,
    ) -> int:
        """Append a row; ``coefficients`` maps existing column indices to values."""
        coefficients = coefficients or {}
        for j in coefficients:
            if not 0 <= j < self._n:
                raise LPDimensionError(f"column {j} out of range")
        r = self._m
        self._reserve(self._n, r + 1)
        self._senses.append(RowSense(sense))
        self._rhs[r] = float(rhs)
        self._priority[r] = priority
        self._row_names.append(name or f"r{r}")
        for j, value in coefficients.items():
            self._at[j, r] = float(value)
        self._m += 1
        return r

    def add_column(
        self,
        cost: float,
        coefficients: Mapping[int, float] | None = None,
        *,
        lower: float = 0.0,
        upper: float = math.inf,
        name: str | None = None,
    ) -> int:
        """Append a column; ``coefficients`` maps existing row indices to values."""
        coefficients = coefficients or {}
        for r in coefficients:
            if not 0 <= r < self._m:
                raise LPDimensionError(f"row {r} out of range")
        if lower > upper:
            raise InvalidBoundsError()
        j = self._n
        self._reserve(j + 1, self._m)
        self._cost[j] = float(cost)
        self._lower[j] = float(lower)
        self._upper[j] = float(upper)
        self._at[j, : self._m] = 0.0
        for r, value in coefficients.items():
            self._at[j, r] = float(value)
        self._col_names.append(name or f"x{j}")
        self._n += 1
        return j

    def _check_column(self, index: int) -> None:
        if not 0 <= index < self._n:
            raise LPDimensionError(f"column {index} out of range")

    def fix_column_bounds(self, index: int, lower: float, upper: float) -> None:
        self._check_column(index)
        if lower > upper:
            raise InvalidBoundsError()
        self._lower[index] = float(lower)
        self._upper[index] = float(upper)

    def column_bounds(self, index: int) -> tuple[float, float]:
        self._check_column(index)
        return float(self._lower[index]), float(self._upper[index])

    def column_coefficients(self, index: int) -> dict[int, float]:
        self._check_column(index)
        column = self._at[index, : self._m]
        return {int(r): float(column[r]) for r in np.flatnonzero(column)}

    def column_cost(self, index: int) -> float:
        self._check_column(index)
        return float(self._cost[index])

    def row(self, index: int) -> tuple[RowSense, float]:
        return self._senses[index], float(self._rhs[index])

    def dense_matrix(self) -> np.ndarray:
        return self._at[: self._n, : self._m].T.copy()

    def slack_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lower = np.array(
            [-math.inf if s is RowSense.GE else 0.0 for s in self._senses], dtype=float
        )
        upper = np.array(
            [math.inf if s is RowSense.LE else 0.0 for s in self._senses], dtype=float
        )
        return lower, upper

    def solve(self, warm_basis: Basis | None = None) -> LpOutcome:
        """Solve from ``warm_basis`` or, when omitted, from the last basis.

        Raises:
            LPNumericalError: when neither the warm basis nor the slack basis
                leads to a numerically sound solve.
        """
        start = warm_basis if warm_basis is not None else self.basis
        outcome = _Simplex(self, start).run()
        self.basis = outcome.basis
        logger.debug(
            "lp solve: %s rows=%d cols=%d iterations=%d objective=%s",
            outcome.status.value,
            self._m,
            self._n,
            outcome.iterations,
            outcome.objective,
        )
        return outcome

    def reset_basis(self) -> None:
        self.basis = None
        self._inverse = None

    def to_text(self) -> str:
        """Plain-text LP with Minimize / Subject To / Bounds sections."""
        objective = {j: float(c) for j, c in enumerate(self._cost[: self._n]) if c != 0}
        lines = ["Minimize", " obj: " + _linear(objective, self._col_names)]
        lines.append("Subject To")
        dense = self.dense_matrix()
        for r in range(self._m):
            coefs = {int(j): float(dense[r, j]) for j in np.flatnonzero(dense[r])}
            lines.append(
                f" {self._row_names[r]}: {_linear(coefs, self._col_names)} "
                f"{self._senses[r].value} {_number(self._rhs[r])}"
            )
        lines.append("Bounds")
        for j, name in enumerate(self._col_names):
            lo, up = float(self._lower[j]), float(self._upper[j])
            if math.isinf(up):
                lines.append(f" {name} >= {_number(lo)}")
            else:
                lines.append(f" {_number(lo)} <= {name} <= {_number(up)}")
        lines.append("End")
        return "\n".join(lines) + "\n"


def _number(value: float) -> str:
    value = float(value)
    return str(int(value)) if value.is_integer() else repr(value)


def _linear(coefs: Mapping[int, float], names: list[str]) -> str:
    if not coefs:
        return "0"
    terms = []
    for idx, (j, value) in enumerate(sorted(coefs.items())):
        sign = "-" if value < 0 else "+"
        body = f"{_number(abs(value))} {names[j]}"
        terms.append(("- " if sign == "-" else "") + body if idx == 0 else f"{sign} {body}")
    return " ".join(terms)


def farkas_violation(
    lp: LinearProgram, certificate: np.ndarray, *, coefficient_tol: float = _PIVOT_ABS
) -> float:
    """Margin by which ``certificate`` proves infeasibility (positive = proof).

    Computes ``y'b - max over the variable box of sum_j (y'A_j) v_j`` with the
    row slacks included as variables.
    """
    y = np.asarray(certificate, dtype=float)
    n, m = lp.num_columns, lp.num_rows
    slack_lower, slack_upper = lp.slack_bounds()
    coefs = np.concatenate([lp._at[:n, :m] @ y, y])
    lower = np.concatenate([lp._lower[:n], slack_lower])
    upper = np.concatenate([lp._upper[:n], slack_upper])
    best = 0.0
    for coef, lo, up in zip(coefs, lower, upper):
        if abs(coef) <= coefficient_tol:
            continue
        best += coef * up if coef > 0 else coef * lo
    return float(y @ lp._rhs[:m] - best)


class _Simplex:
    def __init__(self, lp: LinearProgram, basis: Basis | None) -> None:
        self.lp = lp
        self.m = m = lp.num_rows
        self.n = n = lp.num_columns
        self.ftol = lp.feasibility_tol
        self.otol = lp.optimality_tol
        self.max_iterations = lp.max_iterations
        self.at = lp._at[:n, :m]
        slack_lower, slack_upper = lp.slack_bounds()
        self.cost = np.concatenate([lp._cost[:n], np.zeros(m)])
        self.lower = np.concatenate([lp._lower[:n], slack_lower])
        self.upper = np.concatenate([lp._upper[:n], slack_upper])
        self.finite_lower = np.isfinite(self.lower)
        self.finite_upper = np.isfinite(self.upper)
        self.movable = self.upper > self.lower
        self.b = lp._rhs[:m].copy()
        self.priority = lp._priority[:m].copy()
        self.iterations = 0
        self.updates = 0
        self.farkas: np.ndarray | None = None
        self._warm = basis

    # basis bookkeeping

    def _var_id(self, v: int) -> int:
        return v if v < self.n else -(v - self.n + 1)

    def _full_index(self, var_id: int) -> int:
        if var_id >= 0:
            if var_id >= self.n:
                raise _SingularBasis
            return var_id
        row = -var_id - 1
        if row >= self.m:
            raise _SingularBasis
        return self.n + row

    def _set_basis(
        self, basic: list[int], at_upper: set[int], cached: _Inverse | None = None
    ) -> None:
        if len(basic) != self.m or len(set(basic)) != self.m:
            raise _SingularBasis
        total = self.n + self.m
        self.basic = np.asarray(basic, dtype=np.int64)
        self.is_basic = np.zeros(total, dtype=bool)
        self.is_basic[self.basic] = True
        flags = np.zeros(total, dtype=bool)
        flags[list(at_upper)] = True
        self.at_upper = (
            (flags & self.finite_upper) | (~self.finite_lower & self.finite_upper)
        ) & ~self.is_basic
        if cached is None:
            self._refactor()
        else:
            self.binv = cached.matrix.copy()
            self.updates = cached.updates
            self._recompute()

    def _slack_basis(self) -> None:
        self._set_basis(list(range(self.n, self.n + self.m)), set())

    def _load(self, basis: Basis) -> None:
        basic = [self._full_index(v) for v in basis.basic]
        # rows appended after the basis was taken enter with their slacks
        basic.extend(self.n + r for r in range(len(basis.basic), self.m))
        at_upper = set()
        for v in basis.at_upper:
            try:
                at_upper.add(self._full_index(v))
            except _SingularBasis:
                continue
        cached = self.lp._inverse
        if cached is not None and (cached.rows != self.m or cached.basic != basis.basic):
            cached = None
        self._set_basis(basic, at_upper, cached)

    def _start(self, basis: Basis | None) -> None:
        if basis is None:
            self._slack_basis()
            return
        try:
            self._load(basis)
        except _SingularBasis:
            logger.debug("warm basis rejected, starting from the slack basis")
            self._slack_basis()

    # linear algebra

    def _refactor(self) -> None:
        matrix = np.zeros((self.m, self.m))
        structural = np.flatnonzero(self.basic < self.n)
        matrix[:, structural] = self.at[self.basic[structural]].T
        slack = np.flatnonzero(self.basic >= self.n)
        matrix[self.basic[slack] - self.n, slack] = 1.0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", LinAlgWarning)
            lu, piv = lu_factor(matrix, check_finite=False)
        diag = np.abs(np.diag(lu))
        if not np.all(np.isfinite(diag)) or diag.min() < _SINGULAR_TOL * max(1.0, diag.max()):
            raise _SingularBasis
        self.binv = lu_solve((lu, piv), np.eye(self.m), check_finite=False)
        self.updates = 0
        self._recompute()

    def _recompute(self) -> None:
        x = np.where(self.at_upper, self.upper, np.where(self.finite_lower, self.lower, 0.0))
        x[self.basic] = 0.0
        activity = self.at.T @ x[: self.n] + x[self.n :]
        x[self.basic] = self.binv @ (self.b - activity)
        self.x = x

    def _column(self, v: int) -> np.ndarray:
        if v < self.n:
            return np.asarray(self.at[v])
        unit = np.zeros(self.m)
        unit[v - self.n] = 1.0
        return unit

    def _row_products(self, y: np.ndarray) -> np.ndarray:
        """``y'a_v`` for every structural and slack variable."""
        return np.concatenate([self.at @ y, y])

    def _reduced(self) -> tuple[np.ndarray, np.ndarray]:
        y = self.cost[self.basic] @ self.binv
        d = self.cost - self._row_products(y)
        d[self.basic] = 0.0
        return y, d

    def _entering_sets(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        nonbasic = ~self.is_basic & self.movable
        at_lower = nonbasic & ~self.at_upper & self.finite_lower
        at_upper = nonbasic & self.at_upper
        free = nonbasic & ~self.finite_lower & ~self.finite_upper
        return at_lower, at_upper, free

    def _dual_infeasible(self, d: np.ndarray) -> np.ndarray:
        at_lower, at_upper, free = self._entering_sets()
        return (
            (at_lower & (d < -self.otol))
            | (at_upper & (d > self.otol))
            | (free & (np.abs(d) > self.otol))
        )

    def _primal_feasible(self) -> bool:
        xb = self.x[self.basic]
        return bool(
            np.all(xb >= self.lower[self.basic] - self.ftol)
            and np.all(xb <= self.upper[self.basic] + self.ftol)
        )

    def _first(self, slots: np.ndarray) -> int:
        order = np.lexsort((slots, self.priority[slots]))
        return int(slots[order[0]])

    def _pivot(self, slot: int, entering: int, w: np.ndarray, leaves_at_upper: bool) -> None:
        leaving = int(self.basic[slot])
        self.basic[slot] = entering
        self.is_basic[leaving] = False
        self.is_basic[entering] = True
        self.at_upper[leaving] = leaves_at_upper
        self.at_upper[entering] = False
        self.x[leaving] = self.upper[leaving] if leaves_at_upper else self.lower[leaving]
        row = self.binv[slot] / w[slot]
        self.binv -= np.outer(w, row)
        self.binv[slot] = row
        self.updates += 1
        self.iterations += 1
        if self.updates >= _REFACTOR_EVERY:
            self._refactor()

    # phases

    def run(self) -> LpOutcome:
        if self.m == 0:
            return self._without_rows()
        start = self._warm
        while True:
            try:
                self._start(start)
                return self._outcome(self._optimize())
            except _SingularBasis:
                if start is None:
                    raise LPNumericalError() from None
                logger.debug("numerical trouble from the warm basis, restarting cold")
                start = None

    def _optimize(self) -> LpStatus:
        while True:
            if not self._primal_feasible():
                status = self._restore_feasibility()
                if status is not None:
                    return status
            status = self._primal(phase_one=False)
            if status is not LpStatus.OPTIMAL or self.updates == 0:
                return status
            self._refactor()
            if self._primal_feasible() and not self._dual_infeasible(self._reduced()[1]).any():
                return status

    def _restore_feasibility(self) -> LpStatus | None:
        if not self._dual_infeasible(self._reduced()[1]).any():
            try:
                return self._dual()
            except _DualStalled:
                logger.debug("dual simplex stalled, continuing with the primal phase")
        return self._primal(phase_one=True)

    def _dual(self) -> LpStatus | None:
        """Dual simplex; None once the basis is primal feasible."""
        budget = self.iterations + _DUAL_BUDGET * (self.m + self.n)
        streak = 0
        bland = False
        while True:
            if self.iterations >= self.max_iterations:
                return LpStatus.ITERATION_LIMIT
            if self.iterations >= budget:
                raise _DualStalled
            xb = self.x[self.basic]
            below = self.lower[self.basic] - xb
            above = xb - self.upper[self.basic]
            infeasibility = np.maximum(below, above)
            rows = np.flatnonzero(infeasibility > self.ftol)
            if rows.size == 0:
                return None
            if bland:
                slot = int(rows[np.argmin(self.basic[rows])])
            else:
                worst = float(infeasibility[rows].max())
                slot = self._first(rows[infeasibility[rows] >= worst - _TIE_TOL * max(1.0, worst)])
            increase = bool(below[slot] > self.ftol)

            rho = self.binv[slot].copy()
            alpha = self._row_products(rho)
            alpha[self.basic] = 0.0
            _, d = self._reduced()
            at_lower, at_upper, free = self._entering_sets()
            tol = max(_PIVOT_ABS, _PIVOT_REL * float(np.abs(alpha).max()))
            # moving x_j by t changes x_B[slot] by -alpha_j * t
            if increase:
                eligible = (at_lower & (alpha < -tol)) | (at_upper & (alpha > tol))
            else:
                eligible = (at_lower & (alpha > tol)) | (at_upper & (alpha < -tol))
            eligible |= free & (np.abs(alpha) > tol)
            columns = np.flatnonzero(eligible)
            if columns.size == 0:
                self.farkas = -rho if increase else rho
                return LpStatus.INFEASIBLE

            slack = np.where(self.at_upper[columns], -d[columns], d[columns])
            slack = np.maximum(np.where(free[columns], 0.0, slack), 0.0)
            magnitude = np.abs(alpha[columns])
            ratios = slack / magnitude
            if bland:
                best = float(ratios.min())
                pick = int(np.flatnonzero(ratios <= best + _TIE_TOL)[0])
            else:
                relaxed = float(((slack + self.otol) / magnitude).min())
                pool = np.flatnonzero(ratios <= relaxed)
                pick = int(pool[np.argmax(magnitude[pool])])
            entering = int(columns[pick])

            w = self.binv @ self._column(entering)
            leaving = int(self.basic[slot])
            target = self.lower[leaving] if increase else self.upper[leaving]
            step = (xb[slot] - target) / w[slot]
            self.x[self.basic] -= w * step
            self.x[entering] += step
            self._pivot(slot, entering, w, leaves_at_upper=not increase)

            if ratios[pick] * infeasibility[slot] > self.otol:
                streak = 0
                bland = False
            else:
                streak += 1
                bland = bland or streak >= _DEGENERATE_STREAK

    def _primal(self, *, phase_one: bool) -> LpStatus | None:
        """Primal simplex; phase one returns None once the basis is feasible."""
        streak = 0
        bland = False
        while True:
            if self.iterations >= self.max_iterations:
                return LpStatus.ITERATION_LIMIT
            xb = self.x[self.basic]
            lo = self.lower[self.basic]
            up = self.upper[self.basic]
            if phase_one:
                below = xb < lo - self.ftol
                above = xb > up + self.ftol
                if not (below.any() or above.any()):
                    return None
                y = (above.astype(float) - below.astype(float)) @ self.binv
                d = -self._row_products(y)
                d[self.basic] = 0.0
            else:
                below = above = np.zeros(self.m, dtype=bool)
                y, d = self._reduced()
            candidates = np.flatnonzero(self._dual_infeasible(d))
            if candidates.size == 0:
                if phase_one:
                    self.farkas = y
                    return LpStatus.INFEASIBLE
                return LpStatus.OPTIMAL
            if bland:
                entering = int(candidates[0])
            else:
                entering = int(candidates[np.argmax(np.abs(d[candidates]))])
            sigma = 1.0 if d[entering] < 0 else -1.0

            w = self.binv @ self._column(entering)
            rate = sigma * w
            slot, theta, leaves_at_upper = self._ratio_test(rate, xb, lo, up, below, above, bland)
            flip = self.upper[entering] - self.lower[entering]
            if math.isfinite(flip) and flip <= theta:
                self.x[self.basic] -= rate * flip
                self.at_upper[entering] = sigma > 0
                self.x[entering] = self.upper[entering] if sigma > 0 else self.lower[entering]
                self.iterations += 1
                moved = flip
            elif slot < 0:
                if phase_one:
                    raise _SingularBasis
                return LpStatus.UNBOUNDED
            else:
                self.x[self.basic] -= rate * theta
                self.x[entering] += sigma * theta
                self._pivot(slot, entering, w, leaves_at_upper)
                moved = theta

            if moved * abs(d[entering]) > self.ftol:
                streak = 0
                bland = False
            else:
                streak += 1
                bland = bland or streak >= _DEGENERATE_STREAK

    def _ratio_test(
        self,
        rate: np.ndarray,
        xb: np.ndarray,
        lo: np.ndarray,
        up: np.ndarray,
        below: np.ndarray,
        above: np.ndarray,
        bland: bool,
    ) -> tuple[int, float, bool]:
        """Blocking slot, step length and the bound the leaving variable takes.

        Basic variable i moves by ``-rate[i] * t``. Infeasible basics in phase
        one block at the bound they are heading back to.
        """
        magnitude = np.abs(rate)
        tol = max(_PIVOT_ABS, _PIVOT_REL * float(magnitude.max(initial=0.0)))
        falling = rate > tol
        rising = rate < -tol
        gap = np.full(self.m, math.inf)
        down = falling & ~below
        gap[down] = np.where(above[down], xb[down] - up[down], xb[down] - lo[down])
        upward = rising & ~above
        gap[upward] = np.where(below[upward], lo[upward] - xb[upward], up[upward] - xb[upward])
        to_upper = (falling & above) | (rising & ~below)

        limited = np.flatnonzero(np.isfinite(gap))
        if limited.size == 0:
            return -1, math.inf, False
        ratios = np.maximum(gap[limited], 0.0) / magnitude[limited]
        if bland:
            best = float(ratios.min())
            pool = limited[ratios <= best + _TIE_TOL]
            slot = int(pool[np.argmin(self.basic[pool])])
        else:
            relaxed = float(((gap[limited] + self.ftol) / magnitude[limited]).min())
            pool = limited[ratios <= relaxed]
            largest = float(magnitude[pool].max())
            slot = self._first(pool[magnitude[pool] >= largest * (1.0 - _TIE_TOL)])
        theta = max(float(gap[slot]), 0.0) / float(magnitude[slot])
        return slot, theta, bool(to_upper[slot])

    def _snapshot(self) -> Basis:
        return Basis(
            basic=tuple(self._var_id(int(v)) for v in self.basic),
            at_upper=frozenset(self._var_id(int(v)) for v in np.flatnonzero(self.at_upper)),
        )

    def _outcome(self, status: LpStatus) -> LpOutcome:
        structural = self.x[: self.n].copy()
        basis = self._snapshot()
        self.lp._inverse = _Inverse(
            basic=basis.basic, rows=self.m, matrix=self.binv, updates=self.updates
        )
        if status is not LpStatus.OPTIMAL:
            return LpOutcome(
                status=status,
                x=structural,
                farkas=self.farkas,
                iterations=self.iterations,
                basis=basis,
            )
        y, d = self._reduced()
        nonbasic = ~self.is_basic
        return LpOutcome(
            status=status,
            objective=float(self.cost[: self.n] @ structural),
            x=structural,
            duals=y,
            reduced_costs=d[: self.n].copy(),
            dual_objective=float(self.b @ y + d[nonbasic] @ self.x[nonbasic]),
            iterations=self.iterations,
            basis=basis,
        )

    def _without_rows(self) -> LpOutcome:
        cost = self.cost[: self.n]
        x = np.where(cost >= 0, self.lower, self.upper)
        if not np.all(np.isfinite(x)):
            return LpOutcome(status=LpStatus.UNBOUNDED, x=np.zeros(self.n))
        return LpOutcome(
            status=LpStatus.OPTIMAL,
            objective=float(cost @ x),
            x=x,
            duals=np.zeros(0),
            reduced_costs=cost.copy(),
            dual_objective=float(cost @ x),
            basis=Basis(basic=()),
        )
