"""Tests for Rauzy class enumeration."""

import pytest

from ire.converters.text import parse_scheme_text, parse_two_row
from ire.oracles import classical_rauzy_class
from ire.rauzy import rauzy_class
from ire.scheme import from_two_row, is_iet
from ire.state import request_shutdown, reset_shutdown

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"
TORUS = "(a.b b.b a.e b.e)"


def test_single_label_class():
    """Test that a one-label scheme has no steps at all"""
    rc = rauzy_class(parse_scheme_text("(a.b a.e)"), 100)
    summary = rc.summary()

    assert summary["schemes"] == 1
    assert summary["edges"] == 0
    assert summary["self_loops"] == 0
    assert summary["strongly_connected"]
    assert not summary["truncated"]


def test_torus_steps_are_self_loops():
    """Test that every step on the torus scheme returns to it"""
    rc = rauzy_class(parse_scheme_text(TORUS), 100, include_inverse=False)

    assert rc.texts() == [TORUS]
    assert len(rc.edges) == 4
    assert rc.non_loop_edges() == []
    assert f'"{TORUS}" -> "{TORUS}" [label="rb:b,a"];' in rc.to_dot()


def test_right_class_matches_classical():
    """Test that right steps on an exchange give the classical class"""
    seed = parse_scheme_text(WORKED)
    rc = rauzy_class(seed, 100, kinds=("rb", "re"), include_inverse=False)
    classical = classical_rauzy_class(parse_two_row("[a b g d / d g b a]"))

    assert rc.schemes[0] == seed
    assert len(rc.schemes) == 7
    assert all(is_iet(s) for s in rc.schemes)
    assert set(rc.schemes) == {from_two_row(t, seed.alphabet) for t in classical}
    assert rc.summary()["strongly_connected"]


def test_enumeration_is_deterministic():
    """Test that two runs give identical member and edge lists"""
    seed = parse_scheme_text(WORKED)
    first = rauzy_class(seed, 50)
    second = rauzy_class(seed, 50)
    assert first.to_dict() == second.to_dict()


def test_max_size_truncates():
    """Test the member cap"""
    rc = rauzy_class(parse_scheme_text(WORKED), 3)

    assert len(rc.schemes) == 3
    assert rc.truncated
    members = set(rc.texts())
    for source, _, target in rc.edges:
        assert source in members and target in members


def test_shutdown_truncates():
    """Test that a requested shutdown stops after the first level"""
    request_shutdown()
    try:
        rc = rauzy_class(parse_scheme_text(WORKED), 100)
    finally:
        reset_shutdown()

    assert rc.truncated
    assert rc.schemes == [parse_scheme_text(WORKED)]


def test_invalid_max_size():
    """Test that the cap must be positive"""
    with pytest.raises(ValueError):
        rauzy_class(parse_scheme_text(TORUS), 0)
