"""Unit tests for the command-line interface."""

import io

import pytest

from pydomp.cli import COMPARE_HEADER, build_parser, main
from pydomp.models.instance import Instance
from pydomp.services.instances import dumps, parse


def example_instance():
    return Instance(
        n=3, p=2, costs=[[1, 3, 6], [3, 1, 8], [6, 8, 1]], weights=[4, 2, 1]
    )


@pytest.fixture
def instance_file(tmp_path):
    """Worked example written to disk."""
    path = tmp_path / "example.domp"
    path.write_text(dumps(example_instance()))
    return path


def run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


class TestParser:
    """Test argument parsing."""

    def test_solver_defaults(self):
        """Solve options default to the full algorithm."""
        args = build_parser().parse_args(["solve", "--instance", "a.domp"])
        assert args.format == "human"
        assert args.branch_strategy == 1
        assert args.theta == 0.5
        assert not args.no_grasp and not args.no_stab and not args.no_cuts

    def test_usage_errors(self, instance_file):
        """Bad invocations exit with status 2."""
        assert main([], out=io.StringIO()) == 2
        assert main(["solve"], out=io.StringIO()) == 2
        assert main(["solve", "--instance", str(instance_file), "--branch-strategy", "4"]) == 2

    def test_stab_options_exclusive(self, instance_file):
        """--no-stab and --stab-delta cannot be combined."""
        code, _ = run(
            ["solve", "--instance", str(instance_file), "--no-stab", "--stab-delta", "0.5"]
        )
        assert code == 2


class TestCommands:
    """Test each subcommand end to end."""

    def test_generate_deterministic(self):
        """Equal seeds print equal instances."""
        argv = ["generate", "--n", "6", "--p", "2", "--seed", "3"]
        (code_a, first), (code_b, second) = run(argv), run(argv)
        assert code_a == code_b == 0
        assert first == second
        assert first.startswith("DOMP 1\n6 2\n")
        assert parse(first).n == 6

    def test_generate_to_file(self, tmp_path):
        """--out writes the instance file."""
        path = tmp_path / "inst.domp"
        code, output = run(
            ["generate", "--n", "4", "--p", "2", "--weights", "median", "--out", str(path)]
        )
        assert code == 0
        assert output == ""
        assert parse(path.read_text()).weights == [1, 1, 1, 1]

    def test_oracle_tsv(self, instance_file):
        """The oracle prints n, p, value and all optimal sets."""
        code, output = run(["oracle", "--instance", str(instance_file), "--format", "tsv"])
        assert code == 0
        assert output == "3\t2\t9\t0 2;1 2\n"

    def test_oracle_limit(self, instance_file):
        """Refusing an instance is a domain error."""
        code, _ = run(["oracle", "--instance", str(instance_file), "--limit", "1"])
        assert code == 1

    def test_grasp(self, instance_file):
        """GRASP reports its best value."""
        code, output = run(["grasp", "--instance", str(instance_file), "--replications", "2"])
        assert code == 0
        assert output.splitlines()[0].startswith("value: 9  open: ")

    def test_solve_tsv(self, instance_file):
        """The summary line carries status and value."""
        code, output = run(
            ["solve", "--instance", str(instance_file), "--format", "tsv", "--time-limit", "600"]
        )
        assert code == 0
        fields = output.strip().split("\t")
        assert fields[:4] == ["3", "2", "Optimal", "9"]
        assert len(fields) == 10

    def test_solve_human(self, instance_file):
        """Human output lists value and bound before the summary."""
        code, output = run(
            ["solve", "--instance", str(instance_file), "--no-grasp", "--no-cuts", "--no-stab"]
        )
        assert code == 0
        lines = output.splitlines()
        assert lines[0] == "status: Optimal"
        assert lines[1].startswith("value: 9  open: ")
        assert lines[-1].startswith("3\t2\tOptimal\t9\t")

    def test_solve_with_fix_file(self, instance_file, tmp_path):
        """Fixing files are read and applied."""
        fix = tmp_path / "fix.txt"
        fix.write_text("0 1 0\n")
        code, output = run(
            ["solve", "--instance", str(instance_file), "--fix-file", str(fix), "--format", "tsv"]
        )
        assert code == 0
        assert output.split("\t")[2] == "Optimal"

    def test_relax(self, instance_file, tmp_path):
        """Both relaxations report value, size and gap."""
        export = tmp_path / "woc.lp"
        code, output = run(
            [
                "relax",
                "--instance",
                str(instance_file),
                "--formulation",
                "woc",
                "--format",
                "tsv",
                "--export",
                str(export),
            ]
        )
        assert code == 0
        fields = output.strip().split("\t")
        assert fields[0] == "woc"
        assert fields[2] == "30"
        assert float(fields[1]) <= 9.0 + 1e-6
        assert export.read_text().startswith("Minimize")
        code, output = run(
            ["relax", "--instance", str(instance_file), "--formulation", "mp", "--format", "tsv"]
        )
        assert code == 0
        assert output.startswith("mp\t")

    def test_compare(self, instance_file):
        """One row per instance under the header."""
        code, output = run(["compare", "--dir", str(instance_file.parent)])
        assert code == 0
        lines = output.splitlines()
        assert lines[0].split("\t") == COMPARE_HEADER.split()
        row = lines[1].split("\t")
        assert row[:2] == ["3", "2"]
        assert row[5] == "30"
        assert row[6] == "9"


class TestExitCodes:
    """Test error reporting."""

    def test_missing_instance(self, tmp_path):
        """Unreadable files exit with status 2."""
        code, _ = run(["solve", "--instance", str(tmp_path / "missing.domp")])
        assert code == 2

    def test_malformed_instance(self, tmp_path, capsys):
        """Malformed instances are domain errors."""
        path = tmp_path / "bad.domp"
        path.write_text("DOMP 1\n3 2\n1 2\n")
        code, _ = run(["oracle", "--instance", str(path)])
        assert code == 1
        assert "domp:" in capsys.readouterr().err

    def test_bad_parameter_value(self, instance_file):
        """Out-of-range option values fail validation."""
        code, _ = run(["solve", "--instance", str(instance_file), "--theta", "2"])
        assert code == 2
