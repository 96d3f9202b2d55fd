"""Unit tests for the GRASP heuristic."""

import pytest
from pydantic import ValidationError

from pydomp._random import RandomStream
from pydomp.config import DOMPConfig
from pydomp.errors import InvalidFacilitySetError, InvalidPartialSizeError
from pydomp.models.column import FacilitySet
from pydomp.models.grasp import GraspConfig
from pydomp.models.instance import Instance
from pydomp.services.evaluation import ordered_value
from pydomp.services.grasp import (
    Grasp,
    construct_greedy,
    construct_randomized_partial,
    local_search,
    run_grasp,
)
from pydomp.services.instances import compute_ranks, generate
from pydomp.services.oracle import solve_exhaustive


def example_instance():
    return Instance(
        n=3, p=2, costs=[[1, 3, 6], [3, 1, 8], [6, 8, 1]], weights=[4, 2, 1]
    )


class TestConstruction:
    """Test the randomized and greedy construction steps."""

    def test_greedy_from_empty(self):
        """The first pick is the best singleton, then the best completion."""
        assert construct_greedy(example_instance(), FacilitySet(open=())).open == (0, 2)

    def test_greedy_from_partial(self):
        """Ties keep the smallest facility index."""
        J = construct_greedy(example_instance(), FacilitySet.of([2]))
        assert J.open == (0, 2)

    def test_greedy_complete_partial_unchanged(self):
        """A partial set of size p is returned as is."""
        assert construct_greedy(example_instance(), FacilitySet.of([0, 1])).open == (0, 1)

    def test_randomized_partial_size(self):
        """The partial set has q distinct facilities."""
        inst = generate(10, 4, seed=1)
        partial = construct_randomized_partial(inst, 2, RandomStream(5))
        assert len(partial) == 2
        assert all(0 <= j < 10 for j in partial.open)

    def test_randomized_partial_bounds(self):
        """q outside 0..p is rejected."""
        with pytest.raises(InvalidPartialSizeError):
            construct_randomized_partial(example_instance(), 3, RandomStream(1))

    def test_randomized_partial_deterministic(self):
        """Equal seeds draw equal partial sets."""
        inst = generate(12, 5, seed=1)
        a = construct_randomized_partial(inst, 3, RandomStream(42))
        b = construct_randomized_partial(inst, 3, RandomStream(42))
        assert a == b


class TestLocalSearch:
    """Test the swap neighborhood."""

    def test_example_improvement(self):
        """From {0, 1} a single swap reaches an optimum."""
        J, _ = local_search(example_instance(), FacilitySet.of([0, 1]), 10)
        assert J.open == (1, 2)
        assert ordered_value(example_instance(), J) == 9

    def test_zero_iterations(self):
        """No passes leave the solution untouched."""
        J, cols = local_search(example_instance(), FacilitySet.of([0, 1]), 0)
        assert J.open == (0, 1)
        assert cols == []

    def test_harvest_collects_visited_solutions(self):
        """Harvested columns encode the start and every accepted move."""
        inst = example_instance()
        _, cols = local_search(inst, FacilitySet.of([0, 1]), 10, harvest=True)
        keys = {c.key for c in cols}
        assert keys == {
            (0, ((0, 0), (2, 2))),
            (1, ((1, 1),)),
            (1, ((1, 0), (0, 2))),
            (2, ((2, 1),)),
        }
        assert len(keys) == len(cols)

    def test_never_worse(self):
        """Local search never returns a worse solution."""
        inst = generate(12, 4, seed=6)
        start = FacilitySet.of([0, 1, 2, 3])
        J, _ = local_search(inst, start, 5)
        assert ordered_value(inst, J) <= ordered_value(inst, start)

    def test_wrong_size(self):
        """The start must hold p facilities."""
        with pytest.raises(InvalidFacilitySetError):
            local_search(example_instance(), FacilitySet.of([0]), 3)


class TestRunGrasp:
    """Test the multistart driver."""

    def test_example(self):
        """GRASP finds the optimum of the worked example."""
        result = run_grasp(example_instance(), GraspConfig(replications=3))
        assert result.best_value == 9
        assert len(result.replication_values) == 3
        assert result.harvested_columns

    def test_deterministic(self):
        """Identical configurations give identical results."""
        inst = generate(15, 4, seed=3)
        cfg = GraspConfig(replications=5, seed=7)
        a, b = run_grasp(inst, cfg), run_grasp(inst, cfg)
        assert a.best_value == b.best_value
        assert a.replication_values == b.replication_values

    def test_replications_are_seeded_independently(self, mocker):
        """Replication r reproduces alone from seed + r."""
        inst = generate(15, 4, seed=3)
        streams = mocker.patch("pydomp.services.grasp.RandomStream", wraps=RandomStream)
        result = run_grasp(inst, GraspConfig(replications=5, seed=7))
        assert [c.args[0] for c in streams.call_args_list] == [7, 8, 9, 10, 11]
        for rep, value in enumerate(result.replication_values):
            single = run_grasp(inst, GraspConfig(replications=1, seed=7 + rep))
            assert single.replication_values == [value]

    def test_upper_bounds_oracle(self):
        """GRASP values never beat the exact optimum."""
        for seed in range(4):
            inst = generate(9, 3, seed=seed)
            result = run_grasp(inst, GraspConfig(replications=5))
            assert result.best_value >= solve_exhaustive(inst).best_value
            assert result.best_value == min(result.replication_values)

    def test_harvested_columns_valid(self):
        """Harvested columns respect the instance ranks and are unique."""
        inst = generate(10, 3, seed=2)
        ranks = compute_ranks(inst)
        result = run_grasp(inst, GraspConfig(replications=4), ranks)
        keys = [c.key for c in result.harvested_columns]
        assert len(keys) == len(set(keys))
        for col in result.harvested_columns:
            col_ranks = [ranks.ranks[i][col.facility] for i, _ in col.couples]
            assert col_ranks == sorted(col_ranks)

    @pytest.mark.parametrize("field", ["replications", "local_search_iterations"])
    def test_counts_must_be_positive(self, field):
        """At least one replication and one local search pass are required."""
        with pytest.raises(ValidationError, match="greater than 0"):
            GraspConfig(**{field: 0})

    def test_partial_size_too_large(self):
        """The configured partial size must not exceed p."""
        with pytest.raises(InvalidPartialSizeError):
            run_grasp(example_instance(), GraspConfig(partial_size=3))


class TestGraspService:
    """Test the GRASP service."""

    def test_default_config_uses_seed(self, mocker):
        """The service seeds GRASP from the configuration."""
        service = Grasp(DOMPConfig(seed=13))
        mock_run = mocker.patch("pydomp.services.grasp.run_grasp")
        service.run(example_instance())
        cfg = mock_run.call_args.args[1]
        assert cfg.seed == 13
