"""Unit tests for configuration and the solver facade."""

import pytest
from pydantic import ValidationError

from pydomp import DOMPConfig, DOMPSolver
from pydomp.services.bpc import BranchPriceAndCut
from pydomp.services.woc import Relaxations


class TestConfig:
    """Test environment-driven configuration."""

    def test_defaults(self, monkeypatch):
        """Without environment variables the documented defaults apply."""
        for name in ("DOMP_TIME_LIMIT", "DOMP_THREADS", "DOMP_SEED", "DOMP_LOG_LEVEL"):
            monkeypatch.delenv(name, raising=False)
        cfg = DOMPConfig.from_env()
        assert cfg.time_limit == 1800
        assert cfg.threads == 1
        assert cfg.seed == 1
        assert cfg.log_level == "WARNING"
        assert cfg.cut_tol == 1e-4

    def test_environment(self, monkeypatch):
        """Environment variables are read at construction time."""
        monkeypatch.setenv("DOMP_TIME_LIMIT", "12.5")
        monkeypatch.setenv("DOMP_THREADS", "4")
        monkeypatch.setenv("DOMP_SEED", "77")
        monkeypatch.setenv("DOMP_ORACLE_LIMIT", "1000")
        monkeypatch.setenv("DOMP_WOC_MAX_N", "20")
        cfg = DOMPConfig.from_env()
        assert cfg.time_limit == 12.5
        assert cfg.threads == 4
        assert cfg.seed == 77
        assert cfg.oracle_limit == 1000
        assert cfg.woc_max_n == 20

    def test_explicit_values_win(self, monkeypatch):
        """Keyword arguments override the environment."""
        monkeypatch.setenv("DOMP_SEED", "77")
        assert DOMPConfig(seed=3).seed == 3

    def test_invalid_environment(self, monkeypatch):
        """Non-numeric values are rejected."""
        monkeypatch.setenv("DOMP_THREADS", "many")
        with pytest.raises(ValueError):
            DOMPConfig.from_env()

    def test_type_validation(self):
        """Field types are enforced."""
        with pytest.raises(ValidationError):
            DOMPConfig(threads="x")


class TestSolver:
    """Test the facade wiring."""

    def test_services_share_config(self):
        """Every service sees the same configuration."""
        cfg = DOMPConfig(seed=4)
        solver = DOMPSolver(cfg)
        assert solver.config is cfg
        assert isinstance(solver.bpc, BranchPriceAndCut)
        assert isinstance(solver.relaxations, Relaxations)
        for service in (
            solver.instances,
            solver.evaluation,
            solver.oracle,
            solver.grasp,
            solver.bpc,
            solver.relaxations,
        ):
            assert service.cfg is cfg

    def test_default_config_from_env(self, monkeypatch):
        """Without a config the environment is read."""
        monkeypatch.setenv("DOMP_SEED", "9")
        assert DOMPSolver().config.seed == 9

    def test_end_to_end(self):
        """Generate, solve and evaluate through the facade."""
        solver = DOMPSolver(DOMPConfig(seed=2, time_limit=600))
        inst = solver.instances.generate(6, 2)
        report = solver.bpc.solve(inst)
        assert report.best_value == solver.oracle.solve_exhaustive(inst).best_value
        assert solver.evaluation.ordered_value(inst, report.best_set) == report.best_value
