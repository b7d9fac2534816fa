"""Tests for schemes, turns, twists and two-row notation."""

import pytest

from ire.converters.text import parse_scheme_text, parse_two_row
from ire.errors import (
    DuplicateLabel,
    MalformedTwoRow,
    NotABijection,
    NotAnIET,
    UnknownLabel,
)
from ire.scheme import (
    ExtLabel,
    cycles,
    dual,
    from_two_row,
    genus,
    irreducible_components,
    is_iet,
    make_scheme,
    scheme_from_cycles,
    to_two_row,
    turns,
    twists_total,
)

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"
TORUS = "(a.b b.b a.e b.e)"
SINGLE = "(a.b a.e)"


def test_worked_scheme_images():
    """Test the index layout of the four-label scheme"""
    s = parse_scheme_text(WORKED)

    assert s.alphabet == ("a", "b", "g", "d")
    assert s.images == (2, 3, 4, 5, 6, 7, 1, 0)
    assert s(ExtLabel("d", "b")) == ExtLabel("a", "e")
    assert s.inverse(ExtLabel("a", "b")) == ExtLabel("d", "e")


def test_text_is_canonical():
    """Test that rotating and reordering cycles gives the same text"""
    s = parse_scheme_text("(b.e a.b b.b a.e)", ["a", "b"])
    assert s.text() == TORUS

    two = parse_scheme_text("(a.e)(a.b)")
    assert two.text() == "(a.b)(a.e)"


def test_cycles_and_turns():
    """Test cycle decomposition and turn sites"""
    s = parse_scheme_text(WORKED)
    report = turns(s)

    assert cycles(s).N == 1
    assert report.turns_back == (ExtLabel("a", "e"),)
    assert report.turns_forward == (ExtLabel("a", "b"),)
    assert report.per_cycle_twists == (0,)
    assert report.T == 0


def test_dual_of_worked_scheme():
    """Test the dual scheme and its twists"""
    s = parse_scheme_text(WORKED)
    mirror = dual(s)

    assert mirror.text() == "(a.b b.e g.b d.e a.e b.b g.e d.b)"
    assert turns(mirror).T == 2
    assert twists_total(s) == 2
    assert genus(s) == 2
    assert dual(mirror) == s


def test_torus_scheme():
    """Test that the two-label scheme gives a torus"""
    s = parse_scheme_text(TORUS)

    assert dual(s).text() == "(a.b b.e a.e b.b)"
    assert turns(s).T == 0
    assert turns(dual(s)).T == 0
    assert genus(s) == 1


def test_single_label_dual_twists():
    """Test a dual made of two one-element cycles"""
    s = parse_scheme_text(SINGLE)
    mirror = dual(s)

    assert mirror.text() == "(a.b)(a.e)"
    assert turns(mirror).per_cycle_twists == (-1, -1)
    assert twists_total(s) == -2


def test_irreducible_components():
    """Test that disjoint schemes split by label"""
    s = parse_scheme_text("(a.b a.e)(b.b b.e)")
    assert irreducible_components(s).components == (("a",), ("b",))
    assert irreducible_components(parse_scheme_text(WORKED)).P == 1


def test_make_scheme_errors():
    """Test the bijection checks of make_scheme"""
    a_b, a_e = ExtLabel("a", "b"), ExtLabel("a", "e")

    with pytest.raises(NotABijection):
        make_scheme(["a"], [(a_b, a_e)])
    with pytest.raises(NotABijection):
        make_scheme(["a"], [(a_b, a_e), (a_e, a_e)])
    with pytest.raises(UnknownLabel):
        make_scheme(["a"], [(a_b, ExtLabel("z", "e")), (a_e, a_b)])
    with pytest.raises(DuplicateLabel):
        make_scheme(["a", "a"], [])


def test_scheme_from_cycles_matches_parser():
    """Test building a scheme from explicit cycles"""
    s = scheme_from_cycles(
        ["a", "b"],
        [[ExtLabel("a", "b"), ExtLabel("b", "b"), ExtLabel("a", "e"), ExtLabel("b", "e")]],
    )
    assert s == parse_scheme_text(TORUS)


def test_two_row_round_trip():
    """Test converting the worked scheme to two-row notation and back"""
    s = parse_scheme_text(WORKED)
    t = to_two_row(s)

    assert str(t) == "[a b g d / d g b a]"
    assert is_iet(s)
    assert from_two_row(t) == s


def test_two_row_rejects_twisted_scheme():
    """Test that a twisted scheme has no two-row form"""
    mirror = dual(parse_scheme_text(WORKED))

    assert not is_iet(mirror)
    with pytest.raises(NotAnIET):
        to_two_row(mirror)


def test_from_two_row_errors():
    """Test malformed two-row input"""
    with pytest.raises(MalformedTwoRow):
        from_two_row(parse_two_row("[a b / a c]"))
    with pytest.raises(MalformedTwoRow):
        from_two_row(parse_two_row("[a a / a a]"))
