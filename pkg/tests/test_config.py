from fractions import Fraction
from unittest.mock import patch

import pytest

from ire.config import (
    DEFAULT_MAX_CLASS_SIZE,
    DEFAULT_SAMPLES,
    DEFAULT_WORKERS,
    RunConfig,
)
from ire.gluing import EXPLICIT, MIDPOINT, BranchRule


def test_config_defaults():
    """Test default configuration values"""
    config = RunConfig()

    assert not config.quiet
    assert not config.summary
    assert config.log_path is None
    assert not config.json_output
    assert config.workers == DEFAULT_WORKERS
    assert config.samples == DEFAULT_SAMPLES
    assert config.max_size == DEFAULT_MAX_CLASS_SIZE
    assert config.branch_rule == MIDPOINT
    assert config.seed is None
    assert config.random_cases is None
    assert not config.results_on_stdout


@pytest.mark.parametrize(
    "field, value, message",
    [
        ("workers", 0, "workers"),
        ("samples", 0, "samples"),
        ("max_size", 0, "class size"),
        ("random_cases", -1, "Random cases"),
        ("max_degree", 5, "Maximum degree"),
        ("branch_rule", "middle", "Unknown branch rule"),
    ],
)
def test_config_validation_ranges(field, value, message):
    """Test that out-of-range settings are rejected"""
    config = RunConfig(**{field: value})

    with pytest.raises(ValueError) as exc_info:
        config.validate()
    assert message in str(exc_info.value)


def test_config_json_disables_summary():
    """Test that JSON output turns summary mode off with a warning"""
    config = RunConfig(json_output=True, summary=True)

    with patch("ire.config.log_message") as mock_log:
        config.validate()

    assert not config.summary
    assert mock_log.call_args[0][1] == "WARNING"


def test_config_coordinates_select_explicit_rule():
    """Test that branch coordinates switch the rule to explicit"""
    config = RunConfig(quiet=True, dual_branch_coordinates=[Fraction(15, 2), Fraction(11)])

    config.validate()

    assert config.branch_rule == EXPLICIT
    assert config.get_branch_rule() == BranchRule.explicit()
    assert config.get_branch_rule(dual=True) == BranchRule.explicit(Fraction(15, 2), 11)


def test_config_named_rule():
    """Test that named rules carry no coordinates"""
    config = RunConfig(branch_rule="left")
    config.validate()
    assert config.get_branch_rule() == BranchRule.left()


def test_config_info_quiet():
    """Test that INFO stays off the console for results printed on stdout"""
    assert not RunConfig().info_quiet
    assert RunConfig(summary=True).info_quiet
    assert RunConfig(results_on_stdout=True).info_quiet
    assert not RunConfig(results_on_stdout=True).quiet
