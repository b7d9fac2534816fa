"""Real data of a scheme: endpoints, lengths and the spaces they live in.

An endpoint vector ``x`` assigns a rational coordinate to every extended
label. It is allowed for a scheme when, for every label alpha,

    x[alpha.b] + x[alpha.e] - x[sigma(alpha.b)] - x[sigma(alpha.e)] = 0,

and then the lengths ``v[alpha] = x[sigma(alpha.b)] - x[alpha.b]
= x[alpha.e] - x[sigma(alpha.e)]`` are well defined. Lengths can be turned
back into endpoints by walking each cycle from one anchor.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ire.errors import (
    DuplicateAnchor,
    InternalInvariantViolation,
    MissingAnchor,
    NotInEndpointSpace,
    NotInLengthSpace,
    UnknownLabel,
)
from ire.linalg import feasible_point, null_space, rank, span_basis
from ire.scheme import ExtLabel, Scheme, irreducible_components

Endpoints = Dict[ExtLabel, Fraction]
Lengths = Dict[str, Fraction]
Anchors = Mapping[int, Tuple[ExtLabel, Union[Fraction, int, str]]]


@dataclass(frozen=True)
class DeltaMatrix:
    """The endpoint relation as a d x 2d integer matrix.

    Columns follow ``Scheme.elements()``; row ``k`` belongs to ``alphabet[k]``.
    """

    columns: Tuple[ExtLabel, ...]
    rows: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Basis:
    coordinates: Tuple[Union[ExtLabel, str], ...]
    vectors: Tuple[Tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def as_dicts(self) -> List[Dict]:
        return [dict(zip(self.coordinates, vector)) for vector in self.vectors]


def as_endpoints(s: Scheme, x: Mapping, side: str = "primal") -> Endpoints:
    """Coerce a mapping to exact endpoints covering the whole doubled alphabet."""
    result = {}
    for key, value in x.items():
        ext = ExtLabel(*key)
        s.index(ext)
        result[ext] = Fraction(value)
    missing = [str(ext) for ext in s.elements() if ext not in result]
    if missing:
        raise NotInEndpointSpace(f"no coordinate for {', '.join(missing)}", side)
    return result


def as_lengths(s: Scheme, v: Mapping) -> Lengths:
    """Coerce a mapping to exact lengths covering the alphabet."""
    result = {}
    for label, value in v.items():
        if label not in s.positions:
            raise UnknownLabel(f"length given for unknown label {label}")
        result[label] = Fraction(value)
    missing = [label for label in s.alphabet if label not in result]
    if missing:
        raise NotInLengthSpace(f"no length for {', '.join(missing)}")
    return result


def delta_matrix(s: Scheme) -> DeltaMatrix:
    rows = []
    for k in range(s.d):
        row = [0] * (2 * s.d)
        row[2 * k] += 1
        row[2 * k + 1] += 1
        row[s.images[2 * k]] -= 1
        row[s.images[2 * k + 1]] -= 1
        rows.append(tuple(row))
    return DeltaMatrix(tuple(s.elements()), tuple(rows))


def endpoint_space_basis(s: Scheme) -> Basis:
    """Basis of the allowed endpoints; its dimension is d + P.

    Raises:
        InternalInvariantViolation: If the kernel dimension is not d + P
    """
    delta = delta_matrix(s)
    vectors = null_space(delta.rows, 2 * s.d)
    expected = s.d + irreducible_components(s).P
    if len(vectors) != expected:
        raise InternalInvariantViolation(
            f"endpoint space of {s} has dimension {len(vectors)}, expected {expected}"
        )
    return Basis(delta.columns, tuple(tuple(vector) for vector in vectors))


def _lengths_vector(s: Scheme, values: Sequence[Fraction]) -> List[Fraction]:
    return [values[s.images[2 * k]] - values[2 * k] for k in range(s.d)]


def lengths_from_endpoints(s: Scheme, x: Mapping, side: str = "primal") -> Lengths:
    """Lengths of an allowed endpoint vector.

    Raises:
        NotInEndpointSpace: If the two expressions for some length disagree
    """
    x = as_endpoints(s, x, side)
    values = [x[ext] for ext in s.elements()]
    lengths = {}
    for k, label in enumerate(s.alphabet):
        forward = values[s.images[2 * k]] - values[2 * k]
        backward = values[2 * k + 1] - values[s.images[2 * k + 1]]
        if forward != backward:
            raise NotInEndpointSpace(
                f"length of {label} is {forward} from {label}.b but {backward} from {label}.e",
                side,
            )
        lengths[label] = forward
    return lengths


def length_space_basis(s: Scheme) -> Basis:
    """Basis of the allowed lengths; its dimension is d + P - N.

    Raises:
        InternalInvariantViolation: If the image dimension is not d + P - N
    """
    endpoints = endpoint_space_basis(s)
    images = [_lengths_vector(s, vector) for vector in endpoints.vectors]
    vectors = span_basis(images, s.d)
    expected = s.d + irreducible_components(s).P - len(s.cycle_indices)
    if len(vectors) != expected:
        raise InternalInvariantViolation(
            f"length space of {s} has dimension {len(vectors)}, expected {expected}"
        )
    return Basis(s.alphabet, tuple(tuple(vector) for vector in vectors))


def default_anchors(s: Scheme) -> Dict[int, Tuple[ExtLabel, Fraction]]:
    """Anchor every cycle at its first element, coordinate zero."""
    return {n: (s.element(cycle[0]), Fraction(0)) for n, cycle in enumerate(s.cycle_indices)}


def _place_anchors(s: Scheme, anchors: Anchors) -> Dict[int, Tuple[int, Fraction]]:
    placed: Dict[int, Tuple[int, Fraction]] = {}
    for _, (ext, value) in sorted(anchors.items()):
        i = s.index(ExtLabel(*ext))
        owner = s.cycle_of[i]
        if owner in placed:
            raise DuplicateAnchor(f"cycle {owner} received more than one anchor")
        placed[owner] = (i, Fraction(value))
    for n in range(len(s.cycle_indices)):
        if n not in placed:
            head = s.element(s.cycle_indices[n][0])
            raise MissingAnchor(f"cycle {n} (starting at {head}) has no anchor")
    return placed


def endpoints_from_lengths(
    s: Scheme, v: Mapping, anchors: Optional[Anchors] = None
) -> Endpoints:
    """Restore endpoints from lengths by walking each cycle from its anchor.

    Stepping from a b-element adds the length of its label, stepping from an
    e-element subtracts it.

    Raises:
        NotInLengthSpace: If the walk around some cycle does not close
        MissingAnchor: If a cycle has no anchor
        DuplicateAnchor: If a cycle has two anchors
    """
    v = as_lengths(s, v)
    placed = _place_anchors(s, anchors if anchors is not None else default_anchors(s))
    x: Endpoints = {}
    for n, (start, value) in sorted(placed.items()):
        i = start
        position = value
        while True:
            x[s.element(i)] = position
            length = v[s.alphabet[i // 2]]
            position = position + length if i % 2 == 0 else position - length
            i = s.images[i]
            if i == start:
                break
        if position != value:
            raise NotInLengthSpace(
                f"lengths do not close up around cycle {n}: off by {position - value}"
            )
    return x


def in_length_space(s: Scheme, v: Mapping) -> bool:
    try:
        endpoints_from_lengths(s, v)
    except NotInLengthSpace:
        return False
    return True


def interval_realization(s: Scheme, x: Mapping) -> Dict[ExtLabel, Tuple[Fraction, Fraction]]:
    """Half-open intervals of an IRE.

    ``I[alpha.b] = [x[alpha.b], x[sigma(alpha.b)])`` and
    ``I[alpha.e] = [x[sigma(alpha.e)], x[alpha.e])``.
    """
    x = as_endpoints(s, x)
    intervals = {}
    for ext in s.elements():
        image = s(ext)
        if ext.is_beginning:
            intervals[ext] = (x[ext], x[image])
        else:
            intervals[ext] = (x[image], x[ext])
    return intervals


@dataclass(frozen=True)
class IREValidation:
    lengths: Lengths
    positive: bool
    intervals: Dict[ExtLabel, Tuple[Fraction, Fraction]]


def validate_ire(s: Scheme, x: Mapping, side: str = "primal") -> IREValidation:
    """Check membership, derive lengths, report positivity and intervals.

    Raises:
        NotInEndpointSpace: If x is not an allowed endpoint vector of s
    """
    lengths = lengths_from_endpoints(s, x, side)
    positive = all(value > 0 for value in lengths.values())
    return IREValidation(lengths, positive, interval_realization(s, x))


def coverage_mismatches(s: Scheme, x: Mapping) -> List[Tuple[int, Fraction, int, int]]:
    """Points where beginning and ending coverage of a cycle differ.

    Probes every interval endpoint of each cycle and the midpoint between
    consecutive endpoints, counting half-open coverage. Returns
    ``(cycle, coordinate, beginning count, ending count)`` for each mismatch.
    """
    intervals = interval_realization(s, x)
    mismatches = []
    for n, cycle in enumerate(s.cycle_indices):
        members = [s.element(i) for i in cycle]
        cuts = sorted({bound for ext in members for bound in intervals[ext]})
        probes = list(cuts) + [(a + b) / 2 for a, b in zip(cuts, cuts[1:])]
        for point in probes:
            begin = sum(
                1 for ext in members
                if ext.is_beginning and intervals[ext][0] <= point < intervals[ext][1]
            )
            end = sum(
                1 for ext in members
                if not ext.is_beginning and intervals[ext][0] <= point < intervals[ext][1]
            )
            if begin != end:
                mismatches.append((n, point, begin, end))
    return mismatches


def positive_point(s: Scheme) -> Optional[Lengths]:
    """Allowed lengths with every entry at least one, or None if there are none."""
    basis = length_space_basis(s)
    point = feasible_point(basis.vectors, s.d)
    if point is None:
        return None
    return dict(zip(s.alphabet, point))


def is_positive_scheme(s: Scheme) -> bool:
    """Whether the scheme admits strictly positive lengths.

    The length space is a linear subspace, so it meets the open positive
    orthant exactly when it contains a vector with all entries >= 1.
    """
    return positive_point(s) is not None


def delta_rank(s: Scheme) -> int:
    return rank(delta_matrix(s).rows)
