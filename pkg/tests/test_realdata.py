"""Tests for endpoint and length spaces."""

from fractions import Fraction

import pytest

from ire.converters.text import parse_scheme_text
from ire.errors import (
    DuplicateAnchor,
    MissingAnchor,
    NotInEndpointSpace,
    NotInLengthSpace,
    UnknownLabel,
)
from ire.realdata import (
    as_lengths,
    coverage_mismatches,
    delta_matrix,
    delta_rank,
    endpoint_space_basis,
    endpoints_from_lengths,
    in_length_space,
    interval_realization,
    is_positive_scheme,
    length_space_basis,
    lengths_from_endpoints,
    positive_point,
    validate_ire,
)
from ire.scheme import ExtLabel, dual

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"
LENGTHS = {"a": 2, "b": 3, "g": 5, "d": 11}


def _ext(text):
    label, marker = text.split(".")
    return ExtLabel(label, marker)


@pytest.fixture
def worked():
    return parse_scheme_text(WORKED)


def test_delta_matrix_rows(worked):
    """Test the endpoint relation row of the first label"""
    delta = delta_matrix(worked)
    assert delta.rows[0] == (1, 1, -1, -1, 0, 0, 0, 0)
    assert delta_rank(worked) == 3


def test_space_dimensions(worked):
    """Test endpoint and length space dimensions"""
    assert endpoint_space_basis(worked).dim == 5
    assert length_space_basis(worked).dim == 4
    assert length_space_basis(dual(worked)).dim == 4

    collapsed = dual(parse_scheme_text("(a.b a.e)"))
    assert length_space_basis(collapsed).dim == 0


def test_endpoints_from_lengths(worked):
    """Test walking the cycle from the default anchor"""
    x = endpoints_from_lengths(worked, LENGTHS)
    expected = {
        "a.b": 0, "b.b": 2, "g.b": 5, "d.b": 10,
        "a.e": 21, "b.e": 19, "g.e": 16, "d.e": 11,
    }
    assert x == {_ext(key): Fraction(value) for key, value in expected.items()}
    assert lengths_from_endpoints(worked, x) == {k: Fraction(v) for k, v in LENGTHS.items()}


def test_anchor_shifts_endpoints(worked):
    """Test that an anchor translates the whole cycle"""
    x = endpoints_from_lengths(worked, LENGTHS, {0: (_ext("d.b"), 0)})
    assert x[_ext("a.b")] == -10
    assert x[_ext("d.e")] == 1


def test_anchor_errors(worked):
    """Test duplicate and missing anchors"""
    with pytest.raises(DuplicateAnchor):
        endpoints_from_lengths(worked, LENGTHS, {0: (_ext("a.b"), 0), 1: (_ext("b.b"), 2)})

    collapsed = dual(parse_scheme_text("(a.b a.e)"))
    with pytest.raises(MissingAnchor):
        endpoints_from_lengths(collapsed, {"a": 1}, {0: (_ext("a.b"), 0)})


def test_length_space_membership():
    """Test lengths that do not close up around a cycle"""
    collapsed = dual(parse_scheme_text("(a.b a.e)"))

    assert not in_length_space(collapsed, {"a": 1})
    assert in_length_space(collapsed, {"a": 0})
    with pytest.raises(NotInLengthSpace):
        endpoints_from_lengths(collapsed, {"a": 1})


def test_endpoint_space_membership(worked):
    """Test that a moved endpoint leaves the endpoint space"""
    x = endpoints_from_lengths(worked, LENGTHS)
    x[_ext("a.e")] = Fraction(20)

    with pytest.raises(NotInEndpointSpace) as exc_info:
        lengths_from_endpoints(worked, x, side="dual")
    assert exc_info.value.side == "dual"


def test_as_lengths_errors(worked):
    """Test unknown and missing labels in a length vector"""
    with pytest.raises(UnknownLabel):
        as_lengths(worked, dict(LENGTHS, z=1))
    with pytest.raises(NotInLengthSpace):
        as_lengths(worked, {"a": 1})


def test_intervals_and_coverage(worked):
    """Test the half-open intervals of an interval exchange"""
    x = endpoints_from_lengths(worked, LENGTHS)
    intervals = interval_realization(worked, x)

    assert intervals[_ext("a.b")] == (0, 2)
    assert intervals[_ext("a.e")] == (19, 21)
    assert intervals[_ext("d.e")] == (0, 11)
    assert coverage_mismatches(worked, x) == []


def test_validate_ire(worked):
    """Test lengths and positivity reported by validate_ire"""
    result = validate_ire(worked, endpoints_from_lengths(worked, LENGTHS))
    assert result.positive
    assert result.lengths["d"] == 11


def test_positive_schemes(worked):
    """Test positivity of a scheme and of a collapsed dual"""
    point = positive_point(worked)

    assert point is not None
    assert all(value >= 1 for value in point.values())
    assert in_length_space(worked, point)
    assert is_positive_scheme(worked)
    assert not is_positive_scheme(dual(parse_scheme_text("(a.b a.e)")))
