"""Tests for the command line entry point."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from ire.main import run
from ire.state import reset_shutdown

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"


@pytest.fixture(autouse=True)
def clean_state():
    reset_shutdown()
    yield
    reset_shutdown()


def _run(argv):
    stdout = io.StringIO()
    stderr = io.StringIO()
    with redirect_stdout(stdout), redirect_stderr(stderr):
        code = run(argv)
    return code, stdout.getvalue(), stderr.getvalue()


@pytest.fixture
def worked_document(tmp_path):
    code, output, _ = _run(["example", "--json"])
    assert code == 0
    path = tmp_path / "worked.json"
    path.write_text(output, encoding="utf-8")
    return path


def test_analyze_json():
    """Test the analysis report of the worked scheme"""
    code, output, _ = _run(["analyze", WORKED, "--json"])
    report = json.loads(output)
    assert code == 0
    assert report["type"] == "report"
    assert report["dual_T"] == 2
    assert report["genus"] == 2
    assert report["endpoint_dim"] == 5


def test_analyze_text():
    code, output, _ = _run(["analyze", "(a.b a.e)"])
    assert code == 0
    assert "Dual: (a.b)(a.e)" in output
    assert "genus: 0" in output


def test_dual_command():
    code, output, _ = _run(["dual", WORKED])
    assert code == 0
    assert output == "Scheme: (a.b b.e g.b d.e a.e b.b g.e d.b)\n"


def test_text_output_keeps_log_lines_off_stdout(tmp_path):
    """Test that the banner and timing go to the log file, not next to the result"""
    log_path = tmp_path / "ire.log"
    code, output, stderr = _run(["analyze", WORKED, "--logfile", str(log_path)])
    assert code == 0
    assert output.startswith("Scheme: (a.b b.b g.b d.b a.e b.e g.e d.e)\n")
    assert "IRE v" not in output
    assert "took" not in output
    assert "\033[" not in output
    assert stderr == ""

    log_text = log_path.read_text(encoding="utf-8")
    assert "IRE v" in log_text
    assert "analyze took" in log_text


def test_branch_coordinates_notice_stays_off_stdout(worked_document):
    code, output, _ = _run(
        ["glue", str(worked_document), "--dual", "--dual-branch-coordinates", "15/2,11", "--json"]
    )
    assert code == 0
    assert len(json.loads(output)["pairings"]) == 9


def test_induct_lengths():
    """Test one step on lengths given with a literal"""
    code, output, _ = _run(
        ["induct", WORKED, "--lengths", "a=2 b=3 g=5 d=11", "--step", "rb:d,a", "--json"]
    )
    document = json.loads(output)
    assert code == 0
    assert document["type"] == "lengths"
    assert document["scheme"] == "(a.b b.b g.b d.b b.e g.e a.e d.e)"
    assert document["v"] == {"a": "2", "b": "3", "g": "5", "d": "9"}


def test_induct_extension_document(worked_document):
    """Test a step on a saved extension document"""
    code, output, _ = _run(["induct", str(worked_document), "--step", "rb:d,a", "--json"])
    document = json.loads(output)
    assert code == 0
    assert document["type"] == "extension"
    assert document["x"]["a.e"] == "11"
    assert document["x"]["d.e"] == "9"
    assert document["y"]["d.e"] == "22"


def test_induct_run_returns_to_seed():
    code, output, _ = _run(
        ["induct", WORKED, "--lengths", "a=2 b=3 g=5 d=11", "--run", "3", "--json"]
    )
    document = json.loads(output)
    assert code == 0
    assert document["scheme"] == WORKED
    assert document["v"]["d"] == "1"


def test_class_single_label():
    code, output, _ = _run(["class", "(a.b a.e)", "--quiet"])
    assert code == 0
    assert "Schemes: 1" in output
    assert "Edges: 0 (self-loops: 0)" in output


def test_glue_primal_and_dual(worked_document, tmp_path):
    """Test both trees of the worked extension"""
    code, output, _ = _run(["glue", str(worked_document), "--json"])
    assert code == 0
    assert len(json.loads(output)["pairings"]) == 7

    tree_path = tmp_path / "dual_tree.json"
    code, output, _ = _run(
        [
            "glue",
            str(worked_document),
            "--dual",
            "--branch-rule",
            "explicit",
            "--dual-branch-coordinates",
            "15/2,11",
            "-o",
            str(tree_path),
            "--json",
        ]
    )
    tree = json.loads(output)
    assert code == 0
    assert len(tree["pairings"]) == 9
    assert [point["coordinate"] for point in tree["branch_points"]] == ["15/2", "11"]
    assert json.loads(tree_path.read_text(encoding="utf-8")) == tree


def test_surface_with_net(worked_document, tmp_path):
    """Test the surface summary and its SVG net"""
    svg_path = tmp_path / "net.svg"
    code, output, _ = _run(
        [
            "surface",
            str(worked_document),
            "--branch-rule",
            "explicit",
            "--dual-branch-coordinates",
            "15/2,11",
            "--svg",
            str(svg_path),
            "--quiet",
        ]
    )
    assert code == 0
    assert "Genus: 2" in output
    assert output.count("Cone point of angle 4*pi") == 2
    assert svg_path.exists()
    assert svg_path.stat().st_size > 0


def test_surface_rejects_wrong_extension(worked_document, tmp_path):
    code, _, stderr = _run(
        ["surface", str(worked_document), "--svg", str(tmp_path / "net.pdf"), "--quiet"]
    )
    assert code == 1
    assert "does not end in .svg" in stderr


def test_example_text():
    code, output, _ = _run(["example"])
    assert code == 0
    assert "Dual branch coordinates: 15/2,11" in output
    assert "Genus: 2" in output


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "(a.b a.e"],
        ["induct", WORKED, "--step", "xx:d,a"],
        ["induct", WORKED, "--step", "rb:a,a"],
        ["glue", WORKED],
        ["analyze", WORKED, "--workers", "0"],
        [],
    ],
)
def test_errors_exit_with_one(argv):
    """Test that bad input exits with code 1"""
    code, _, _ = _run(argv)
    assert code == 1


def test_tie_exits_with_two():
    """Test that equal lengths at a step exit with code 2"""
    code, _, stderr = _run(
        ["induct", "(a.b b.b a.e b.e)", "--lengths", "a=1 b=1", "--step", "rb:b,a"]
    )
    assert code == 2
    assert "both have length 1" in stderr


def test_version_exits_cleanly():
    code, output, _ = _run(["--version"])
    assert code == 0
    assert output.startswith("ire ")
