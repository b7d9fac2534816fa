"""Tests for the verify suite and its process pool."""

import os
from fractions import Fraction
from unittest.mock import MagicMock, patch

import numpy as np
import pytest

from ire.config import RunConfig
from ire.converters.text import parse_scheme_text, parse_two_row
from ire.example import worked_extension
from ire.verify import (
    RANDOM_CASES,
    RANDOM_DEGREES,
    VerifyTask,
    build_tasks,
    check_extension,
    check_oracles,
    check_real_maps,
    check_scheme_identities,
    check_step_identities,
    check_surface,
    input_task,
    run_verification,
    run_verify_task,
)

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"


def test_scheme_checks_pass():
    """Test identities on the worked scheme and its dual"""
    s = parse_scheme_text(WORKED)
    rng = np.random.default_rng(1)
    for scheme in (s, parse_scheme_text("(a.b b.e g.b d.e a.e b.b g.e d.b)", s.alphabet)):
        assert check_scheme_identities(scheme) == []
        assert check_step_identities(scheme) == []
        assert check_real_maps(scheme, rng) == []


def test_oracle_checks_pass():
    """Test that crops and scheme steps agree on the rotation"""
    t = parse_two_row("[a b g d / d g b a]")
    v = {"a": Fraction(2), "b": Fraction(3), "g": Fraction(5), "d": Fraction(11)}
    assert check_oracles(t, v, [Fraction(0)]) == []


def test_extension_and_surface_checks_pass():
    """Test the extension and surface checks on the built-in dataset"""
    e = worked_extension()
    assert check_extension(e, np.random.default_rng(6)) == []
    assert check_surface(e, 30) == []


def test_exhaustive_task():
    """Test every scheme on one and two labels"""
    for task in (
        VerifyTask("one label", "exhaustive", (1, 0, 2, 0)),
        VerifyTask("two labels", "exhaustive", (2, 0, 24, 0)),
    ):
        passed, elapsed, failures, log_messages = run_verify_task(task)
        assert passed, failures
        assert elapsed >= 0
        assert log_messages[0][0] == "DEBUG"


def test_random_tasks():
    """Test small seeded random batches"""
    for kind in ("schemes", "maps", "duality", "oracle", "extension"):
        passed, _, failures, _ = run_verify_task(VerifyTask(kind, kind, (2, 17, 20)))
        assert passed, failures


def test_input_task():
    """Test the checks run on a given extension"""
    e = worked_extension()
    task = input_task(e.scheme, e.x, e.y, RunConfig(seed=3, samples=20))
    passed, _, failures, messages = run_verify_task(task)

    assert passed, failures
    assert messages == [("DEBUG", "    6 cases checked")]


def test_task_errors_become_failures():
    """Test that an exception inside a batch is reported, not raised"""
    passed, _, failures, log_messages = run_verify_task(
        VerifyTask("bad", "exhaustive", (99, 0, 1, 0))
    )

    assert not passed
    assert failures[0].startswith("ValueError:")
    assert log_messages == []


def test_build_tasks():
    """Test batch layout for a small configuration"""
    tasks = build_tasks(RunConfig(max_degree=1, random_cases=30, seed=0))

    assert [task.kind for task in tasks].count("exhaustive") == 1
    assert tasks[0].name == "schemes on 1 labels, 1-2"
    for kind in RANDOM_DEGREES:
        counts = [task.args[0] for task in tasks if task.kind == kind]
        assert counts == [25, 5]


def test_default_populations():
    """Test that the default run reaches the acceptance population sizes"""
    tasks = build_tasks(RunConfig(seed=0))
    totals = {kind: 0 for kind in RANDOM_DEGREES}
    for task in tasks:
        if task.kind in totals:
            totals[task.kind] += task.args[0]

    assert totals == RANDOM_CASES
    assert totals["duality"] >= 10**4
    assert totals["schemes"] >= 10**3
    assert totals["oracle"] >= 10**3
    assert totals["extension"] >= 100
    assert totals["surface"] >= 100
    assert RANDOM_DEGREES["schemes"] == (4, 8)
    assert RANDOM_DEGREES["duality"] == (4, 7)
    exhaustive = sum(task.args[2] - task.args[1] for task in tasks if task.kind == "exhaustive")
    assert exhaustive == 2 + 24 + 720


@patch("ire.verify.futures.ProcessPoolExecutor")
def test_workers_used_in_process_pool(mock_executor):
    """Test that the workers setting reaches the pool and failures are counted"""
    mock_executor_instance = MagicMock()
    mock_executor.return_value.__enter__.return_value = mock_executor_instance
    mock_executor.return_value.__exit__.return_value = None

    mock_future1, mock_future2 = MagicMock(), MagicMock()
    mock_executor_instance.submit.side_effect = [mock_future1, mock_future2]
    tasks = [VerifyTask("first", "exhaustive", ()), VerifyTask("second", "exhaustive", ())]

    with patch("ire.verify.futures.as_completed") as mock_as_completed:
        mock_as_completed.return_value = [mock_future1, mock_future2]
        mock_future1.result.return_value = (True, 0.5, [], [])
        mock_future2.result.return_value = (False, 0.5, ["boom"], [])

        config = RunConfig(workers=6, quiet=True)
        completed, failed = run_verification(config, tasks=tasks)

    mock_executor.assert_called_once_with(max_workers=6)
    assert (completed, failed) == (2, 1)


@pytest.mark.slow
def test_acceptance_populations():
    """Test the full default suite: exhaustive d <= 3 and every random population"""
    config = RunConfig(quiet=True, seed=2024, workers=os.cpu_count() or 2)
    completed, failed = run_verification(config)

    assert completed == len(build_tasks(config))
    assert failed == 0
