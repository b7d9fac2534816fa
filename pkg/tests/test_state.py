"""Tests for state.py module shutdown management functionality."""

import io
from contextlib import redirect_stderr, redirect_stdout

import pytest

from ire.converters.text import parse_scheme_text
from ire.main import run
from ire.rauzy import rauzy_class
from ire.state import (
    force_exit,
    is_shutdown_requested,
    request_shutdown,
    reset_shutdown,
    shutdown_requested,
)

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"


@pytest.fixture(autouse=True)
def clean_state():
    reset_shutdown()
    yield
    reset_shutdown()


def test_request_shutdown():
    """Test that request_shutdown sets the shutdown flag."""
    assert not is_shutdown_requested()

    request_shutdown()

    assert is_shutdown_requested()
    assert shutdown_requested.is_set()


def test_force_exit():
    """Test that force_exit calls request_shutdown."""
    force_exit()
    assert is_shutdown_requested()


def test_reset_shutdown_clears_flag():
    """Test that a new command starts with a clear flag."""
    request_shutdown()
    reset_shutdown()
    assert not is_shutdown_requested()


def test_class_enumeration_stops_on_shutdown():
    """Test that a requested shutdown returns a truncated class."""
    request_shutdown()
    rc = rauzy_class(parse_scheme_text(WORKED), 100)
    assert rc.truncated
    assert [s.text() for s in rc.schemes] == [WORKED]


def test_interrupted_class_command_fails():
    """Test that an interrupted class command exits with code 1"""
    request_shutdown()
    with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
        assert run(["class", WORKED, "--quiet"]) == 1
