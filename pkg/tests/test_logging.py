"""Tests for logging functionality."""

import io
import logging
from contextlib import redirect_stderr, redirect_stdout
from unittest.mock import MagicMock

from ire import __version__
from ire.logging_config import (
    close_logging,
    log_message,
    log_run_summary,
    replay_messages,
    setup_logging,
)
from ire.main import run

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"


def test_logging_output(tmp_path):
    """Test if log file is created and contains content."""
    log_file = tmp_path / "logs" / "test.log"

    with redirect_stdout(io.StringIO()):
        assert run(["analyze", WORKED, "--logfile", str(log_file), "--quiet"]) == 0

    assert log_file.exists(), "Log file was not created"
    content = log_file.read_text(encoding="utf-8")
    assert "=== Process Started ===" in content
    assert f"IRE v{__version__}" in content
    assert "analyze took" in content
    assert "=== Process Completed ===" in content


def test_worker_log_has_no_header(tmp_path):
    """Test that worker processes append without a header"""
    log_file = tmp_path / "worker.log"
    handle = setup_logging(str(log_file), is_worker=True)
    close_logging(handle)
    assert "Process Started" not in log_file.read_text(encoding="utf-8")
    assert setup_logging(None) is None


def test_quiet_mode(tmp_path):
    """Test quiet mode output behavior."""
    log_file = tmp_path / "test_quiet.log"
    stdout = io.StringIO()
    stderr = io.StringIO()

    with redirect_stdout(stdout), redirect_stderr(stderr):
        logger = setup_logging(str(log_file), quiet=True)
        log_message(logger, "INFO", f"IRE v{__version__}", quiet=True)
        log_message(logger, "INFO", "Enumerating class...", quiet=True)
        log_message(logger, "WARNING", "Test warning message", quiet=True)
        log_message(logger, "ERROR", "Test error message", quiet=True)
        close_logging(logger)

    assert stdout.getvalue() == "", "Nothing but errors should appear in quiet mode"
    assert "Test warning message" not in stderr.getvalue()
    assert "Test error message" in stderr.getvalue(), "Errors should appear even in quiet mode"

    log_content = log_file.read_text(encoding="utf-8")
    assert "IRE v" in log_content, "Version info should be in log file"
    assert "Enumerating class" in log_content
    assert "WARNING - Test warning message" in log_content
    assert "ERROR - Test error message" in log_content


def test_quiet_class_has_no_progress_bar():
    """Test that class enumeration draws no tqdm bar in quiet mode"""
    stdout = io.StringIO()
    stderr = io.StringIO()

    with redirect_stdout(stdout), redirect_stderr(stderr):
        code = run(["class", WORKED, "--quiet", "--max-size", "20"])

    assert code == 0
    assert stderr.getvalue() == ""
    assert "Seed: " + WORKED in stdout.getvalue()


def test_summary_mode():
    """Test summary mode output behavior."""
    stdout = io.StringIO()

    with redirect_stdout(stdout), redirect_stderr(io.StringIO()):
        log_message(None, "INFO", f"IRE v{__version__}", summary=True)
        log_message(None, "INFO", "  ✓ Passed in 0.10 seconds", summary=True)
        log_run_summary(None, "Verification", 4, 1, 2.0, [("batch 3", "boom")], summary=True)

    output = stdout.getvalue()
    assert f"IRE v{__version__}" in output
    assert "Passed in" not in output
    assert "Verification Summary:" in output
    assert "Checks run: 4" in output
    assert "Passed: 3" in output
    assert "Failed: 1" in output
    assert "• batch 3:" in output


def test_replay_messages():
    """Test that worker messages are logged in order"""
    stdout = io.StringIO()
    with redirect_stdout(stdout):
        replay_messages(None, [("INFO", "first"), ("DEBUG", "second")])
    output = stdout.getvalue()
    assert output.index("first") < output.index("second")


def test_logger_objects():
    """Test that logging.Logger-like objects receive the right level"""
    logger = MagicMock(spec=logging.Logger)

    with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
        log_message(logger, "WARNING", "careful", quiet=True)
        log_message(logger, "ERROR", "broken", quiet=True)
        log_message(logger, "HEADER", "title", quiet=True)

    logger.warning.assert_called_once_with("careful")
    logger.error.assert_called_once_with("broken")
    logger.info.assert_called_once_with("title")


def test_warning_spacing_goes_to_stderr():
    """Test that the blank line before a warning is printed with the warning"""
    stdout = io.StringIO()
    stderr = io.StringIO()

    with redirect_stdout(stdout), redirect_stderr(stderr):
        log_message(None, "INFO", "Enumerating class...", quiet=True)
        log_message(None, "WARNING", "Class truncated")

    assert stdout.getvalue() == ""
    assert stderr.getvalue().startswith("\n")
    assert "WARNING: Class truncated" in stderr.getvalue()
