"""Random schemes and positive real data for the verify suite.

Every function takes a ``numpy.random.Generator`` so a run is fully
determined by its seed.
"""

import string
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from ire.errors import NotPositive
from ire.extension import NaturalExtension, make_extension
from ire.realdata import (
    Endpoints,
    Lengths,
    endpoints_from_lengths,
    is_positive_scheme,
    length_space_basis,
    positive_point,
)
from ire.scheme import Scheme, TwoRowIET, check_alphabet, dual, from_two_row

DEFAULT_LABELS = tuple(string.ascii_lowercase)


def default_alphabet(d: int) -> tuple:
    if not 1 <= d <= len(DEFAULT_LABELS):
        raise ValueError(f"alphabet size must be between 1 and {len(DEFAULT_LABELS)}, got {d}")
    return DEFAULT_LABELS[:d]


def random_scheme(alphabet: Sequence[str], rng: np.random.Generator) -> Scheme:
    """A uniformly random permutation of the doubled alphabet."""
    alphabet = check_alphabet(alphabet)
    images = tuple(int(i) for i in rng.permutation(2 * len(alphabet)))
    return Scheme(alphabet, images)


def _irreducible(upper: Sequence[str], lower: Sequence[str]) -> bool:
    return all(set(upper[:k]) != set(lower[:k]) for k in range(1, len(upper)))


def random_two_row(alphabet: Sequence[str], rng: np.random.Generator) -> TwoRowIET:
    """A random irreducible single-interval permutation.

    The upper row follows the alphabet; the lower row is redrawn until no
    proper prefix of the two rows holds the same labels.
    """
    upper = tuple(check_alphabet(alphabet))
    while True:
        lower = tuple(upper[int(i)] for i in rng.permutation(len(upper)))
        if _irreducible(upper, lower):
            return TwoRowIET(((upper, lower),))


def positive_lengths(s: Scheme, rng: np.random.Generator) -> Lengths:
    """An exact random point of the allowed lengths with every entry positive.

    Starts from a feasible point with entries at least one, scales it by a
    random integer and adds a random basis combination small enough to keep
    every entry above one half.

    Raises:
        NotPositive: If the scheme admits no positive lengths
    """
    base = positive_point(s)
    if base is None:
        raise NotPositive(f"{s} admits no positive lengths")
    scale = int(rng.integers(1, 4))
    lengths = {label: value * scale for label, value in base.items()}

    basis = length_space_basis(s)
    if basis.dim:
        coefficients = [int(c) for c in rng.integers(-9, 10, size=basis.dim)]
        shift = [
            sum((c * vector[k] for c, vector in zip(coefficients, basis.vectors)), Fraction(0))
            for k in range(s.d)
        ]
        largest = max(abs(value) for value in shift)
        if largest:
            factor = Fraction(int(rng.integers(1, 50)), 100) / largest
            for k, label in enumerate(s.alphabet):
                lengths[label] += factor * shift[k]
    return lengths


def random_endpoints(s: Scheme, v: Lengths, rng: np.random.Generator) -> Endpoints:
    """Endpoints for ``v`` with each cycle anchored at a random integer offset."""
    anchors = {
        n: (s.element(cycle[0]), Fraction(int(rng.integers(-5, 6))))
        for n, cycle in enumerate(s.cycle_indices)
    }
    return endpoints_from_lengths(s, v, anchors)


def random_positive_scheme(
    d: int, rng: np.random.Generator, both_sides: bool = True, max_tries: int = 500
) -> Scheme:
    """A random scheme admitting positive lengths, and so does its dual by default.

    Candidates alternate between irreducible single-interval exchanges and
    uniformly random schemes.

    Raises:
        NotPositive: If no candidate passes within ``max_tries`` draws
    """
    alphabet = default_alphabet(d)
    for _ in range(max_tries):
        if rng.random() < 0.5:
            s = from_two_row(random_two_row(alphabet, rng), alphabet)
        else:
            s = random_scheme(alphabet, rng)
        if is_positive_scheme(s) and (not both_sides or is_positive_scheme(dual(s))):
            return s
    raise NotPositive(f"no positive scheme on {d} labels found in {max_tries} draws")


def random_positive_extension(
    d: int, rng: np.random.Generator, s: Optional[Scheme] = None
) -> NaturalExtension:
    """A natural extension with positive lengths on both sides."""
    s = s or random_positive_scheme(d, rng)
    mirror = dual(s)
    x = random_endpoints(s, positive_lengths(s, rng), rng)
    y = random_endpoints(mirror, positive_lengths(mirror, rng), rng)
    return make_extension(s, x, y)
