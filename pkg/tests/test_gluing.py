"""Tests for gluing positive IREs into trees."""

from fractions import Fraction

import pytest

from ire.converters.text import parse_scheme_text
from ire.errors import (
    DegenerateCycle,
    ExplicitBranchOutOfRange,
    NotPositive,
    PointOutsideInterval,
)
from ire.example import worked_dual_rule, worked_extension
from ire.gluing import (
    BranchRule,
    glue_ire,
    measure,
    pairing_coverage_ok,
    resolve_ending,
    tree_map_eval,
    turn_chain,
)
from ire.realdata import endpoints_from_lengths
from ire.scheme import ExtLabel, dual

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"
LENGTHS = {"a": 2, "b": 3, "g": 5, "d": 11}


def _ext(text):
    label, marker = text.split(".")
    return ExtLabel(label, marker)


@pytest.fixture
def worked_tree():
    s = parse_scheme_text(WORKED)
    return glue_ire(s, endpoints_from_lengths(s, LENGTHS))


def test_branch_rules():
    """Test where each rule puts the branch point"""
    lo, hi = Fraction(0), Fraction(4)
    assert BranchRule.midpoint().choose(lo, hi, 0) == 2
    assert BranchRule.left().choose(lo, hi, 0) == 0
    assert BranchRule.right().choose(lo, hi, 0) == 4
    assert BranchRule.explicit(3).choose(lo, hi, 0) == 3
    with pytest.raises(ExplicitBranchOutOfRange):
        BranchRule.explicit(5).choose(lo, hi, 0)
    with pytest.raises(ExplicitBranchOutOfRange):
        BranchRule.explicit().choose(lo, hi, 0)


def test_untwisted_chain_has_two_runs():
    """Test the turn chain of an interval exchange"""
    s = parse_scheme_text(WORKED)
    chain = turn_chain(s, endpoints_from_lengths(s, LENGTHS), 0)

    assert [ext for ext, _ in chain.vertices] == [_ext("a.b"), _ext("a.e")]
    assert chain.segment_lengths() == [21, 21]


def test_exchange_tree_pairings(worked_tree):
    """Test that an interval exchange glues without branch points"""
    pieces = [(str(p.begin), str(p.end), p.lo, p.hi) for p in worked_tree.pairings]

    assert worked_tree.branch_points == []
    assert pieces == [
        ("a.b", "d.e", 0, 2),
        ("b.b", "d.e", 2, 5),
        ("g.b", "d.e", 5, 10),
        ("d.b", "d.e", 10, 11),
        ("d.b", "g.e", 11, 16),
        ("d.b", "b.e", 16, 19),
        ("d.b", "a.e", 19, 21),
    ]
    assert pairing_coverage_ok(worked_tree)
    assert measure(worked_tree) == {"beginning": 21, "ending": 21, "paired": 21}


def test_tree_map(worked_tree):
    """Test evaluating the tree exchange and resolving endings"""
    assert tree_map_eval(worked_tree, (_ext("a.b"), 1)) == [(_ext("a.e"), 20)]
    assert resolve_ending(worked_tree, _ext("d.e"), 3) == [_ext("b.b")]

    with pytest.raises(PointOutsideInterval):
        tree_map_eval(worked_tree, (_ext("a.b"), 2))
    with pytest.raises(PointOutsideInterval):
        tree_map_eval(worked_tree, (_ext("a.e"), 20))


def test_dual_tree_with_explicit_branches():
    """Test gluing the twisted dual of the worked extension"""
    e = worked_extension()
    tree = glue_ire(e.dual_scheme, e.y, worked_dual_rule(), side="dual")

    assert len(tree.pairings) == 9
    assert [point.coordinate for point in tree.branch_points] == [Fraction(15, 2), 11]
    assert pairing_coverage_ok(tree)
    totals = measure(tree)
    assert totals["beginning"] == totals["ending"] == totals["paired"] == 27


def test_dual_tree_midpoint_rule():
    """Test that the default rule also splits every interval once"""
    e = worked_extension()
    tree = glue_ire(e.dual_scheme, e.y, side="dual")

    assert len(tree.branch_points) == 2
    assert pairing_coverage_ok(tree)


def test_explicit_branch_out_of_range():
    """Test an explicit coordinate outside its run"""
    e = worked_extension()
    with pytest.raises(ExplicitBranchOutOfRange):
        glue_ire(e.dual_scheme, e.y, BranchRule.explicit(100, 11), side="dual")


def test_glue_rejects_non_positive():
    """Test that non-positive lengths cannot be glued"""
    s = parse_scheme_text(WORKED)
    x = endpoints_from_lengths(s, dict(LENGTHS, a=-1))

    with pytest.raises(NotPositive):
        glue_ire(s, x)


def test_degenerate_cycle():
    """Test a cycle made of beginning elements only"""
    collapsed = dual(parse_scheme_text("(a.b a.e)"))
    with pytest.raises(DegenerateCycle):
        turn_chain(collapsed, {_ext("a.b"): 0, _ext("a.e"): 0}, 0)
