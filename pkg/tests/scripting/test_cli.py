import os

import mock
import pytest

from sourcelab.errors import StageFailure
from sourcelab.scripting import load_config
from sourcelab.scripting.cli import build_parser, main


def test_validate(write_config, capsys):
    path = write_config("analytic_poly.yaml")
    assert main(["validate", path]) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_bad_config(write_config):
    path = write_config("analytic_poly.yaml", source={"m": 5.0})
    assert main(["--log-level", "error", "validate", path]) == 2


def test_missing_config(tmpdir):
    assert main(["validate", str(tmpdir.join("absent.yaml"))]) == 2


def test_run_and_emit(write_config, capsys):
    path = write_config("zero_em.yaml")
    assert main(["run", path]) == 0
    output_dir = load_config(path).output_dir
    assert capsys.readouterr().out.strip() == os.path.join(output_dir, "manifest.json")
    assert main(["emit", output_dir, "--series", "probe"]) == 0
    assert os.path.exists(os.path.join(output_dir, "plot_probe.csv"))
    assert main(["emit", output_dir, "--series", "asymptotics"]) == 4


def test_stage_failure_exit_code(write_config):
    """The exit status is the code of the error that reached the top."""
    path = write_config("analytic_poly.yaml")
    with mock.patch(
        "sourcelab.scripting.cli.run",
        side_effect=StageFailure("reconstruction: boom", 42),
    ):
        assert main(["run", path]) == 3


def test_emit_unreadable_manifest(tmpdir):
    assert main(["emit", str(tmpdir), "--series", "scaling"]) == 1


def test_parser_rejects_unknown_series():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["emit", "out", "--series", "spectrum"])
    args = build_parser().parse_args(["run", "config.yaml"])
    assert args.log_level == "info"
