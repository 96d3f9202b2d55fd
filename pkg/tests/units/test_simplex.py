"""Unit tests for the bounded-variable simplex kernel."""

import math

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from pydomp._simplex import LinearProgram, _SingularBasis, _Simplex, farkas_violation
from pydomp.errors import InvalidBoundsError, LPDimensionError, LPNumericalError
from pydomp.models.lp import LpStatus, RowSense


def covering_lp():
    """min x + y  s.t.  x + 2y >= 2,  3x + y >= 3."""
    lp = LinearProgram()
    c1 = lp.add_row(RowSense.GE, 2.0, name="c1")
    c2 = lp.add_row(RowSense.GE, 3.0, name="c2")
    lp.add_column(1.0, {c1: 1.0, c2: 3.0}, name="x")
    lp.add_column(1.0, {c1: 2.0, c2: 1.0}, name="y")
    return lp


class TestSolve:
    """Test optimal, infeasible and unbounded outcomes."""

    def test_covering_optimum(self):
        """Primal values, duals and dual objective of a small covering LP."""
        outcome = covering_lp().solve()
        assert outcome.status is LpStatus.OPTIMAL
        assert outcome.objective == pytest.approx(1.4)
        assert outcome.x == pytest.approx([0.8, 0.6])
        assert outcome.duals == pytest.approx([0.4, 0.2])
        assert outcome.dual_objective == pytest.approx(1.4)
        assert outcome.reduced_costs == pytest.approx([0.0, 0.0], abs=1e-9)

    def test_le_row_dual_is_nonpositive(self):
        """Duals of <= rows are nonpositive when minimizing."""
        lp = LinearProgram()
        r = lp.add_row(RowSense.LE, 3.0)
        lp.add_column(-1.0, {r: 1.0})
        outcome = lp.solve()
        assert outcome.objective == pytest.approx(-3.0)
        assert outcome.duals == pytest.approx([-1.0])

    def test_equality_row(self):
        """Equality rows are honored exactly."""
        lp = LinearProgram()
        r = lp.add_row(RowSense.EQ, 1.0)
        lp.add_column(1.0, {r: 1.0})
        lp.add_column(2.0, {r: 1.0})
        outcome = lp.solve()
        assert outcome.objective == pytest.approx(1.0)
        assert outcome.x == pytest.approx([1.0, 0.0])

    def test_infeasible_with_certificate(self):
        """An upper bound below a covering row yields a Farkas certificate."""
        lp = LinearProgram()
        r = lp.add_row(RowSense.GE, 2.0)
        lp.add_column(1.0, {r: 1.0}, upper=1.0)
        outcome = lp.solve()
        assert outcome.status is LpStatus.INFEASIBLE
        assert outcome.farkas is not None
        assert farkas_violation(lp, outcome.farkas) > 0

    def test_unbounded(self):
        """A negative cost without an upper limit is unbounded."""
        lp = LinearProgram()
        r = lp.add_row(RowSense.GE, 1.0)
        lp.add_column(-1.0, {r: 1.0})
        assert lp.solve().status is LpStatus.UNBOUNDED

    def test_upper_bound_binds(self):
        """Column bounds can be tighter than the rows."""
        lp = LinearProgram()
        r = lp.add_row(RowSense.LE, 5.0)
        lp.add_column(-1.0, {r: 1.0}, upper=1.0)
        outcome = lp.solve()
        assert outcome.objective == pytest.approx(-1.0)
        assert outcome.x == pytest.approx([1.0])

    def test_no_rows(self):
        """Without rows every variable sits at its cheaper bound."""
        lp = LinearProgram()
        lp.add_column(2.0, lower=1.0, upper=4.0)
        lp.add_column(-1.0, upper=3.0)
        outcome = lp.solve()
        assert outcome.status is LpStatus.OPTIMAL
        assert outcome.objective == pytest.approx(-1.0)
        assert outcome.x == pytest.approx([1.0, 3.0])

    def test_infeasible_from_dual_infeasible_start(self):
        """Phase one duals certify infeasibility when costs rule out the dual simplex."""
        lp = LinearProgram()
        r = lp.add_row(RowSense.GE, 2.0)
        lp.add_column(-1.0, {r: 1.0}, upper=1.0)
        outcome = lp.solve()
        assert outcome.status is LpStatus.INFEASIBLE
        assert farkas_violation(lp, outcome.farkas) == pytest.approx(1.0)

    def test_iteration_limit(self):
        """The pivot cap stops the solve with its own status."""
        lp = LinearProgram(max_iterations=1)
        c1 = lp.add_row(RowSense.GE, 2.0)
        c2 = lp.add_row(RowSense.GE, 3.0)
        lp.add_column(1.0, {c1: 1.0, c2: 3.0})
        lp.add_column(1.0, {c1: 2.0, c2: 1.0})
        assert lp.solve().status is LpStatus.ITERATION_LIMIT

    def test_singular_basis_raises_typed_error(self, mocker):
        """A basis that never factors surfaces as an LP error, warm or cold."""
        lp = covering_lp()
        basis = lp.solve().basis
        lp.reset_basis()
        refactor = mocker.patch.object(_Simplex, "_refactor", side_effect=_SingularBasis)
        with pytest.raises(LPNumericalError):
            lp.solve(warm_basis=basis)
        assert refactor.call_count == 2
        with pytest.raises(LPNumericalError):
            lp.solve()


def assignment_lp(cost):
    """Assignment LP with one equality row per row and per column of ``cost``."""
    n = len(cost)
    lp = LinearProgram()
    for _ in range(2 * n):
        lp.add_row(RowSense.EQ, 1.0)
    for i in range(n):
        for j in range(n):
            lp.add_column(float(cost[i][j]), {i: 1.0, n + j: 1.0})
    return lp


class TestDegeneracy:
    """Test termination on degenerate and cycling-prone programs."""

    def test_classic_cycling_example(self):
        """Dantzig pricing with a textbook ratio test cycles here."""
        lp = LinearProgram()
        r1 = lp.add_row(RowSense.LE, 0.0)
        r2 = lp.add_row(RowSense.LE, 0.0)
        r3 = lp.add_row(RowSense.LE, 1.0)
        lp.add_column(-0.75, {r1: 0.25, r2: 0.5})
        lp.add_column(150.0, {r1: -60.0, r2: -90.0})
        lp.add_column(-0.02, {r1: -0.04, r2: -0.02, r3: 1.0})
        lp.add_column(6.0, {r1: 9.0, r2: 3.0})
        outcome = lp.solve()
        assert outcome.status is LpStatus.OPTIMAL
        assert outcome.objective == pytest.approx(-0.05)
        assert outcome.x == pytest.approx([0.04, 0.0, 1.0, 0.0], abs=1e-9)

    @pytest.mark.parametrize("seed", range(5))
    def test_assignment_matches_hungarian(self, seed):
        """Every vertex of the assignment polytope is degenerate."""
        cost = np.random.default_rng(seed).integers(1, 20, size=(8, 8))
        outcome = assignment_lp(cost).solve()
        rows, cols = linear_sum_assignment(cost)
        assert outcome.status is LpStatus.OPTIMAL
        assert outcome.objective == pytest.approx(cost[rows, cols].sum())
        assert outcome.iterations < 1000

    @pytest.mark.parametrize("seed", range(5))
    def test_warm_resolve_after_fixings_matches_cold(self, seed):
        """Zero-fixing cells and re-solving warm agrees with a fresh solve."""
        rng = np.random.default_rng(100 + seed)
        cost = rng.integers(1, 20, size=(8, 8))
        lp = assignment_lp(cost)
        lp.solve()
        blocked = cost.astype(float)
        for cell in rng.choice(64, size=12, replace=False):
            i, j = divmod(int(cell), 8)
            lp.fix_column_bounds(int(cell), 0.0, 0.0)
            blocked[i, j] = 1e6
        warm = lp.solve()
        rows, cols = linear_sum_assignment(blocked)
        assert blocked[rows, cols].sum() < 1e6
        assert warm.objective == pytest.approx(blocked[rows, cols].sum())
        lp.reset_basis()
        assert lp.solve().objective == pytest.approx(warm.objective)

    def test_row_priority_breaks_ties(self):
        """Equally violated rows are resolved in priority order."""
        for priority, expected in ((0, [1.0, 0.0]), (-1, [0.0, 1.0])):
            lp = LinearProgram()
            lp.add_row(RowSense.GE, 1.0)
            lp.add_row(RowSense.GE, 1.0, priority=priority)
            lp.add_column(1.0, {0: 1.0, 1: 1.0})
            assert lp.solve().duals == pytest.approx(expected)

    def test_storage_grows_past_initial_capacity(self):
        """Rows and columns beyond the preallocated block keep their entries."""
        lp = assignment_lp(np.ones((12, 12)))
        assert (lp.num_rows, lp.num_columns) == (24, 144)
        assert lp.column_coefficients(143) == {11: 1.0, 23: 1.0}
        assert lp.dense_matrix().sum() == 288
        assert lp.solve().objective == pytest.approx(12.0)


class TestWarmStart:
    """Test re-solving after the model grows."""

    def test_add_column_after_solve(self):
        """A cheaper column added later is picked up from the old basis."""
        lp = covering_lp()
        first = lp.solve()
        assert lp.basis is not None
        lp.add_column(0.1, {0: 1.0, 1: 1.0}, name="z")
        second = lp.solve()
        assert second.status is LpStatus.OPTIMAL
        assert second.objective == pytest.approx(0.3)
        assert second.objective < first.objective

    def test_add_row_after_solve(self):
        """A new covering row is restored by the dual phase."""
        lp = covering_lp()
        lp.solve()
        lp.add_row(RowSense.GE, 2.0, {0: 1.0})
        outcome = lp.solve()
        assert outcome.status is LpStatus.OPTIMAL
        assert outcome.x[0] >= 2.0 - 1e-7
        assert outcome.objective == pytest.approx(2.0)

    def test_fix_bounds_then_release(self):
        """Fixing a column to zero and releasing it restores the optimum."""
        lp = covering_lp()
        lp.fix_column_bounds(0, 0.0, 0.0)
        assert lp.solve().objective == pytest.approx(3.0)
        lp.fix_column_bounds(0, 0.0, math.inf)
        assert lp.solve().objective == pytest.approx(1.4)

    def test_reset_basis(self):
        """A cold start reaches the same optimum."""
        lp = covering_lp()
        lp.solve()
        lp.reset_basis()
        assert lp.basis is None
        assert lp.solve().objective == pytest.approx(1.4)


class TestModelBuilding:
    """Test model construction and export."""

    def test_dimension_errors(self):
        """Coefficients must reference existing rows and columns."""
        lp = LinearProgram()
        with pytest.raises(LPDimensionError):
            lp.add_column(1.0, {0: 1.0})
        lp.add_column(1.0)
        with pytest.raises(LPDimensionError):
            lp.add_row(RowSense.GE, 1.0, {3: 1.0})

    def test_invalid_bounds(self):
        """Lower bounds above upper bounds are rejected."""
        lp = LinearProgram()
        with pytest.raises(InvalidBoundsError):
            lp.add_column(1.0, lower=2.0, upper=1.0)

    def test_dense_matrix_and_slacks(self):
        """Dense view and slack boxes follow the row senses."""
        lp = covering_lp()
        lp.add_row(RowSense.LE, 4.0, {1: 1.0})
        lp.add_row(RowSense.EQ, 1.0, {0: 1.0})
        assert lp.dense_matrix().tolist() == [[1, 2], [3, 1], [0, 1], [1, 0]]
        lower, upper = lp.slack_bounds()
        assert np.isneginf(lower[0]) and upper[0] == 0
        assert lower[2] == 0 and np.isposinf(upper[2])
        assert lower[3] == 0 and upper[3] == 0

    def test_to_text(self):
        """The text export lists objective, rows and bounds."""
        lp = covering_lp()
        lp.fix_column_bounds(1, 0.0, 1.0)
        text = lp.to_text()
        assert text.splitlines() == [
            "Minimize",
            " obj: 1 x + 1 y",
            "Subject To",
            " c1: 1 x + 2 y >= 2",
            " c2: 3 x + 1 y >= 3",
            "Bounds",
            " x >= 0",
            " 0 <= y <= 1",
            "End",
        ]
