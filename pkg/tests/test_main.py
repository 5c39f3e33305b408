"""Tests for main CLI module."""

import json
import sys
from unittest.mock import patch

import pytest

from girthguard.cli import main, parse_arguments, parse_vertex_list, run
from girthguard.config import (
    BRUTE_MAX_N_ENV_VAR,
    EXIT_INPUT_FORMAT,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION,
)
from girthguard.generators import gen_cage, gen_cycle, gen_star
from girthguard.graph import parse_edge_list
from girthguard.utils import PreconditionError


@pytest.fixture(autouse=True)
def disable_runtime_config(monkeypatch):
    """Avoid reading developer-local config files during CLI tests."""
    monkeypatch.setattr("girthguard.cli.load_runtime_configuration", lambda: None)


@pytest.fixture
def c7_file(write_graph_file):
    return write_graph_file(gen_cycle(7), "c7.txt")


class TestParseArguments:
    """Test command-line argument parsing."""

    def test_parse_gamma(self):
        args = parse_arguments(["gamma", "g.txt", "--method", "bb"])

        assert args.command == "gamma"
        assert args.file == "g.txt"
        assert args.method == "bb"

    def test_parse_verify(self):
        args = parse_arguments(
            [
                "verify",
                "a.txt",
                "b.txt",
                "--spec",
                "cycle:n=7",
                "--spec",
                "cage:name=mcgee",
                "--spec",
                "path:n=4",
                "--no-timing",
                "--jobs",
                "2",
            ]
        )

        assert args.files == ["a.txt", "b.txt"]
        assert args.spec == ["cycle:n=7", "cage:name=mcgee", "path:n=4"]
        assert args.no_timing is True
        assert args.jobs == 2
        assert args.solve == "auto"

    def test_spec_takes_one_value(self):
        args = parse_arguments(["verify", "--spec", "cycle:n=7", "g.txt"])

        assert args.spec == ["cycle:n=7"]
        assert args.files == ["g.txt"]

    def test_verify_without_spec(self):
        assert parse_arguments(["verify", "a.txt"]).spec is None

    def test_parse_from_sys_argv(self):
        with patch.object(sys, "argv", ["girthguard", "girth", "g.txt"]):
            args = parse_arguments()

        assert args.command == "girth"

    def test_bounds_gamma_flags_are_exclusive(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            parse_arguments(["bounds", "g.txt", "--gamma", "3", "--gamma-exact"])

        assert exc_info.value.code == EXIT_USAGE
        assert "not allowed" in capsys.readouterr().err

    @pytest.mark.parametrize(
        "argv",
        [[], ["gamma"], ["gamma", "g.txt", "--method", "ilp"], ["gen", "hypercube"]],
    )
    def test_usage_errors_exit_one(self, argv, capsys):
        with pytest.raises(SystemExit) as exc_info:
            parse_arguments(argv)

        assert exc_info.value.code == EXIT_USAGE
        assert "Error:" in capsys.readouterr().err

    def test_parse_vertex_list(self):
        assert parse_vertex_list("0, 3,5") == [0, 3, 5]
        with pytest.raises(PreconditionError):
            parse_vertex_list("0,x")


class TestGraphCommands:
    """Test the single-graph commands."""

    def test_girth(self, c7_file, capsys):
        assert run(["girth", str(c7_file)]) == EXIT_OK
        assert capsys.readouterr().out == "7\n"

    def test_girth_of_forest(self, write_graph_file, capsys):
        path = write_graph_file(gen_star(3))

        assert run(["girth", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == "acyclic\n"

    def test_gamma(self, write_graph_file, capsys):
        path = write_graph_file(gen_cycle(12))

        assert run(["gamma", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == "4\n0 3 6 9\n"

    def test_gamma_branch_and_bound(self, c7_file, capsys):
        assert run(["gamma", str(c7_file), "--method", "bb"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "3"

    def test_bounds_with_known_gamma(self, c7_file, capsys):
        assert run(["bounds", str(c7_file), "--gamma", "3"]) == EXIT_OK

        report = json.loads(capsys.readouterr().out)
        assert report["gamma"] == 3
        assert report["bounds"]["general_g7"]["tight"] is True
        assert report["bounds"]["mindeg2_g7"]["ceil_value"] == 3

    def test_bounds_without_gamma(self, c7_file, capsys):
        assert run(["bounds", str(c7_file)]) == EXIT_OK

        report = json.loads(capsys.readouterr().out)
        assert report["gamma"] is None
        assert report["bounds"]["general_g7"]["valid"] is None

    def test_bounds_violation_exits_three(self, c7_file):
        assert run(["bounds", str(c7_file), "--gamma", "2"]) == EXIT_VERIFICATION

    def test_bounds_gamma_exact(self, write_graph_file, capsys):
        path = write_graph_file(gen_cycle(9))

        assert run(["bounds", str(path), "--gamma-exact"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["gamma"] == 3
        assert report["bounds"]["mindeg2_g7"]["tight"] is True

    @pytest.mark.slow
    def test_bounds_mcgee(self, write_graph_file, capsys):
        path = write_graph_file(gen_cage("mcgee"))

        assert run(["bounds", str(path), "--gamma-exact"]) == EXIT_OK
        entry = json.loads(capsys.readouterr().out)["bounds"]["general_g7"]
        assert entry["value"] == pytest.approx(6.6235, abs=1e-4)
        assert entry["ceil_value"] == 7
        assert entry["valid"] is True

    def test_partition_with_explicit_set(self, c7_file, capsys):
        assert run(["partition", str(c7_file), "--dominating-set", "0,3,5"]) == EXIT_OK

        assert capsys.readouterr().out.splitlines() == [
            "0: center=0 members=0,1,6 greens=",
            "1: center=3 members=2,3 greens=",
            "2: center=5 members=4,5 greens=4",
            "move 4: 1->2",
        ]

    def test_partition_with_solved_set(self, c7_file, capsys):
        assert run(["partition", str(c7_file)]) == EXIT_OK
        assert len(capsys.readouterr().out.splitlines()) >= 3

    def test_partition_refuted(self, write_graph_file, capsys):
        path = write_graph_file(gen_star(3))

        code = run(["partition", str(path), "--dominating-set", "0,1"])

        assert code == EXIT_VERIFICATION
        assert capsys.readouterr().out == "refuted: smaller dominating set 0\n"

    def test_partition_rejects_non_dominating_set(self, c7_file, capsys):
        code = run(["partition", str(c7_file), "--dominating-set", "0,3"])

        assert code == EXIT_VERIFICATION
        assert "not a dominating set" in capsys.readouterr().err


class TestInputErrors:
    """Test exit codes for unreadable input."""

    def test_missing_file(self, tmp_path, capsys):
        assert run(["girth", str(tmp_path / "absent.txt")]) == EXIT_INPUT_FORMAT
        assert "not found" in capsys.readouterr().err

    def test_malformed_file(self, write_graph_file, capsys):
        path = write_graph_file("3 2\n0 1\n0 1\n")

        assert run(["gamma", str(path)]) == EXIT_INPUT_FORMAT
        assert "line 3" in capsys.readouterr().err

    def test_config_error_exits_one(self, monkeypatch, c7_file, capsys):
        def _fail():
            raise RuntimeError("GIRTHGUARD_CONFIG points to a missing file: x")

        monkeypatch.setattr("girthguard.cli.load_runtime_configuration", _fail)

        assert run(["girth", str(c7_file)]) == EXIT_USAGE
        assert "missing file" in capsys.readouterr().err


class TestGen:
    """Test the generator command."""

    def test_cycle_to_stdout(self, capsys):
        assert run(["gen", "cycle", "--n", "5"]) == EXIT_OK
        assert capsys.readouterr().out == "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n"

    def test_cage_to_file(self, tmp_path):
        output = tmp_path / "graphs" / "mcgee.txt"

        assert run(["gen", "cage", "--name", "mcgee", "-o", str(output)]) == EXIT_OK
        assert parse_edge_list(output.read_text()) == gen_cage("mcgee")

    def test_subdivide_cage(self, capsys):
        assert run(["gen", "subdivide", "--name", "petersen", "--times", "1"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("25 30\n")

    def test_subdivide_file(self, c7_file, capsys):
        code = run(["gen", "subdivide", "--input", str(c7_file), "--times", "2"])

        assert code == EXIT_OK
        assert capsys.readouterr().out.startswith("21 21\n")

    def test_random_girth_is_reproducible(self, capsys):
        argv = ["gen", "random-girth", "--n", "12", "--girth", "7", "--seed", "3"]

        run(argv)
        first = capsys.readouterr().out
        run(argv)

        assert capsys.readouterr().out == first

    def test_missing_parameter(self, capsys):
        assert run(["gen", "cycle"]) == EXIT_VERIFICATION
        assert "needs n" in capsys.readouterr().err


class TestVerify:
    """Test the corpus command."""

    def test_writes_reports(self, c7_file, tmp_path, capsys):
        out = tmp_path / "report.json"
        csv = tmp_path / "report.csv"

        code = run(
            [
                "verify",
                str(c7_file),
                "--spec",
                "cycle:n=12",
                "--out",
                str(out),
                "--csv",
                str(csv),
                "--no-timing",
            ]
        )

        assert code == EXIT_OK
        assert capsys.readouterr().out == ""
        data = json.loads(out.read_text())
        assert [r["graph"] for r in data["records"]] == [str(c7_file), "cycle:n=12"]
        assert "generated_at" in data and data["generated_at"] is None
        assert csv.read_text().splitlines()[0].startswith("graph,n,m,girth")

    def test_json_to_stdout(self, capsys):
        assert run(["verify", "--spec", "cycle:n=7", "--no-partition"]) == EXIT_OK

        data = json.loads(capsys.readouterr().out)
        assert data["records"][0]["partition_verdict"] == "skipped"

    def test_failure_exits_three(self):
        code = run(["verify", "--spec", "path:n=21", "--solve", "brute"])

        assert code == EXIT_VERIFICATION

    def test_threshold_flags(self, capsys, monkeypatch):
        monkeypatch.setenv(BRUTE_MAX_N_ENV_VAR, "14")

        assert run(["verify", "--spec", "cycle:n=7", "--brute-max-n", "5"]) == EXIT_OK

        data = json.loads(capsys.readouterr().out)
        assert data["records"][0]["gamma_method"] == "bb"

    def test_bad_spec(self, capsys):
        assert run(["verify", "--spec", "cycle:k=3"]) == EXIT_VERIFICATION
        assert "invalid generator spec" in capsys.readouterr().err

    def test_empty_corpus(self, capsys):
        assert run(["verify", "--no-timing"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["records"] == []


class TestSharp:
    """Test the tightness search command."""

    def test_lists_tight_instances(self, capsys):
        code = run(
            ["sharp", "--girth", "7", "--max-n", "10", "--max-m", "10", "--batch", "2"]
        )

        assert code == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert any(
            line.startswith("cycle:n=7 ") and "bound=general_g7" in line
            for line in lines
        )

    def test_girth_below_seven(self, capsys):
        assert run(["sharp", "--girth", "6", "--max-n", "10"]) == EXIT_VERIFICATION
        assert "girth target" in capsys.readouterr().err


class TestMain:
    """Test the console entry point."""

    def test_main_exits_with_command_code(self, c7_file, capsys):
        with patch.object(sys, "argv", ["girthguard", "girth", str(c7_file)]):
            with pytest.raises(SystemExit) as exc_info:
                main()

        assert exc_info.value.code == EXIT_OK
        assert capsys.readouterr().out == "7\n"

    def test_main_without_command(self, capsys):
        with patch.object(sys, "argv", ["girthguard"]):
            with pytest.raises(SystemExit) as exc_info:
                main()

        assert exc_info.value.code == EXIT_USAGE
