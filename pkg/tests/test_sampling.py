import numpy as np
import pytest

from ire.converters.text import parse_scheme_text
from ire.errors import NotPositive
from ire.extension import is_positive_extension
from ire.realdata import in_length_space, lengths_from_endpoints
from ire.sampling import (
    default_alphabet,
    positive_lengths,
    random_endpoints,
    random_positive_extension,
    random_positive_scheme,
    random_scheme,
    random_two_row,
)
from ire.scheme import dual

WORKED = "(a.b b.b g.b d.b a.e b.e g.e d.e)"


def test_default_alphabet():
    """Test the first d lowercase letters"""
    assert default_alphabet(3) == ("a", "b", "c")
    with pytest.raises(ValueError):
        default_alphabet(0)


def test_random_scheme_is_seeded():
    """Test that one seed gives one scheme"""
    one = random_scheme("abc", np.random.default_rng(11))
    other = random_scheme("abc", np.random.default_rng(11))

    assert one == other
    assert sorted(one.images) == list(range(6))


def test_random_two_row_is_irreducible():
    """Test that no proper prefix of the rows shares its labels"""
    rng = np.random.default_rng(5)
    for _ in range(20):
        [(upper, lower)] = random_two_row("abcde", rng).brackets
        assert upper == tuple("abcde")
        for k in range(1, 5):
            assert set(upper[:k]) != set(lower[:k])


def test_positive_lengths():
    """Test that sampled lengths are allowed and positive"""
    s = parse_scheme_text(WORKED)
    rng = np.random.default_rng(2)
    for _ in range(5):
        v = positive_lengths(dual(s), rng)
        assert all(value > 0 for value in v.values())
        assert in_length_space(dual(s), v)

    with pytest.raises(NotPositive):
        positive_lengths(dual(parse_scheme_text("(a.b a.e)")), rng)


def test_random_endpoints_keep_lengths():
    """Test that random anchors do not change the lengths"""
    s = parse_scheme_text(WORKED)
    rng = np.random.default_rng(4)
    v = positive_lengths(s, rng)
    assert lengths_from_endpoints(s, random_endpoints(s, v, rng)) == v


def test_random_positive_extension():
    """Test extensions drawn for a few alphabet sizes"""
    rng = np.random.default_rng(9)
    for d in (2, 3, 4):
        e = random_positive_extension(d, rng)
        assert e.scheme.d == d
        assert is_positive_extension(e)


def test_random_positive_scheme_gives_up():
    """Test that one label never has a positive dual"""
    with pytest.raises(NotPositive):
        random_positive_scheme(1, np.random.default_rng(0), max_tries=10)
