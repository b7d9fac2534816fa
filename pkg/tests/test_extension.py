"""Tests for natural and floating extensions."""

from fractions import Fraction

import numpy as np
import pytest

from ire.converters.text import parse_scheme_text, parse_step
from ire.errors import NotInEndpointSpace, NotInLengthSpace, StepNotApplicable
from ire.example import worked_extension
from ire.extension import (
    apply_step_extension,
    apply_step_floating,
    area,
    invert_step_extension,
    invert_step_floating,
    is_positive_extension,
    make_extension,
    make_floating_extension,
    partner_step,
    run_floating_induction,
)
from ire.scheme import ExtLabel, dual


def _ext(text):
    label, marker = text.split(".")
    return ExtLabel(label, marker)


def test_partner_steps():
    """Test which step acts on the dual side"""
    assert str(partner_step(parse_step("rb:d,a"))) == "rb:a,d"
    assert str(partner_step(parse_step("re:d,a"))) == "lb:d,a"
    assert str(partner_step(parse_step("lb:a,d"))) == "re:a,d"
    assert str(partner_step(parse_step("le:a,d"))) == "le:d,a"


def test_worked_extension_lengths():
    """Test lengths and area of the built-in extension"""
    e = worked_extension()

    assert e.v == {"a": 2, "b": 3, "g": 5, "d": 11}
    assert e.w == {"a": 2, "b": 4, "g": 11, "d": 10}
    assert area(e) == 181
    assert is_positive_extension(e)


def test_step_keeps_duality_and_area():
    """Test one step on both sides and its inverse"""
    e = worked_extension()
    step = parse_step("rb:d,a")
    moved = apply_step_extension(e, step)

    assert moved.scheme.text() == "(a.b b.b g.b d.b b.e g.e a.e d.e)"
    assert moved.dual_scheme == dual(moved.scheme)
    assert moved.v["d"] == 9
    assert moved.w["a"] == 12
    assert moved.y[_ext("d.e")] == 22
    assert area(moved) == area(e)
    assert invert_step_extension(moved, step) == e


def test_step_on_extension_needs_turn():
    """Test that a step without its turn is refused"""
    with pytest.raises(StepNotApplicable):
        apply_step_extension(worked_extension(), parse_step("rb:a,b"))


def test_make_extension_names_failing_side():
    """Test that a bad dual endpoint vector is reported as dual"""
    e = worked_extension()
    y = dict(e.y)
    y[_ext("d.e")] += 1

    with pytest.raises(NotInEndpointSpace) as exc_info:
        make_extension(e.scheme, e.x, y)
    assert exc_info.value.side == "dual"


def test_floating_extension():
    """Test floating steps, inverses and area"""
    f = worked_extension().floating()
    step = parse_step("le:a,d")
    moved = apply_step_floating(f, step)

    assert moved.v["d"] == 9
    assert area(moved) == area(f)
    assert invert_step_floating(moved, step) == f


def test_floating_extension_validation():
    """Test that dual lengths must close up around the dual cycles"""
    s = parse_scheme_text("(a.b a.e)")
    with pytest.raises(NotInLengthSpace):
        make_floating_extension(s, {"a": 1}, {"a": 1})
    f = make_floating_extension(s, {"a": 1}, {"a": 0})
    assert f.w == {"a": Fraction(0)}


def test_floating_run_keeps_area():
    """Test that a random positive run preserves the area"""
    f = worked_extension().floating()
    trajectory = run_floating_induction(f, 10, np.random.default_rng(3))

    assert trajectory[0] == f
    assert 1 <= len(trajectory) <= 11
    for g in trajectory:
        assert area(g) == 181
        assert all(value > 0 for value in g.v.values())
        assert all(value > 0 for value in g.w.values())
