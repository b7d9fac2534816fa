"""Schemes: permutations on the doubled alphabet.

An alphabet of d labels is doubled by the markers ``b`` (beginning) and ``e``
(ending). A scheme is any permutation of those 2d extended labels. Cycles,
turns, twists, irreducible components, duality and the recognition of
ordinary (possibly multi-interval) interval exchanges all live here.

Extended labels are indexed as ``2 * position + marker`` with ``b`` = 0 and
``e`` = 1, which is also the canonical order used to rotate and sort cycles.
"""

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx

from ire.errors import (
    DuplicateLabel,
    InternalInvariantViolation,
    MalformedTwoRow,
    NotABijection,
    NotAnIET,
    UnknownLabel,
)

B = "b"
E = "e"
MARKERS = (B, E)

LABEL_PATTERN = re.compile(r"^[A-Za-z0-9_]+$")


class ExtLabel(NamedTuple):
    """An element of the doubled alphabet, written ``<label>.<marker>``."""

    label: str
    marker: str

    def __str__(self) -> str:
        return f"{self.label}.{self.marker}"

    @property
    def is_beginning(self) -> bool:
        return self.marker == B

    def flipped(self) -> "ExtLabel":
        """Same label, other marker."""
        return ExtLabel(self.label, E if self.marker == B else B)


def check_alphabet(alphabet: Iterable[str]) -> Tuple[str, ...]:
    """Validate label syntax and uniqueness, returning the alphabet as a tuple."""
    labels = tuple(alphabet)
    if not labels:
        raise DuplicateLabel("alphabet must contain at least one label")
    seen = set()
    for label in labels:
        if not isinstance(label, str) or not LABEL_PATTERN.match(label):
            raise UnknownLabel(f"invalid label {label!r}: use letters, digits or '_'")
        if label in seen:
            raise DuplicateLabel(f"label {label} appears twice in the alphabet")
        seen.add(label)
    return labels


@dataclass(frozen=True)
class Scheme:
    """A permutation sigma of the doubled alphabet.

    Attributes:
        alphabet: Labels in their canonical order
        images: ``images[i]`` is the index of sigma(element i), where element
            ``i`` is ``(alphabet[i // 2], MARKERS[i % 2])``
    """

    alphabet: Tuple[str, ...]
    images: Tuple[int, ...] = field(repr=False)

    @property
    def d(self) -> int:
        return len(self.alphabet)

    @cached_property
    def positions(self) -> Dict[str, int]:
        return {label: i for i, label in enumerate(self.alphabet)}

    @cached_property
    def preimages(self) -> Tuple[int, ...]:
        inverse = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inverse[j] = i
        return tuple(inverse)

    @cached_property
    def cycle_indices(self) -> Tuple[Tuple[int, ...], ...]:
        """Cycles as index tuples, each starting at its minimal element, sorted."""
        seen = [False] * len(self.images)
        found = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = []
            i = start
            while not seen[i]:
                seen[i] = True
                cycle.append(i)
                i = self.images[i]
            found.append(tuple(cycle))
        return tuple(found)

    @cached_property
    def cycle_of(self) -> Tuple[int, ...]:
        """Index of the cycle containing each element."""
        owner = [0] * len(self.images)
        for n, cycle in enumerate(self.cycle_indices):
            for i in cycle:
                owner[i] = n
        return tuple(owner)

    def element(self, i: int) -> ExtLabel:
        return ExtLabel(self.alphabet[i // 2], MARKERS[i % 2])

    def index(self, ext: ExtLabel) -> int:
        label, marker = ext
        if label not in self.positions or marker not in MARKERS:
            raise UnknownLabel(f"{label}.{marker} is not in the doubled alphabet")
        return 2 * self.positions[label] + MARKERS.index(marker)

    def elements(self) -> List[ExtLabel]:
        """All extended labels in canonical order."""
        return [self.element(i) for i in range(len(self.images))]

    def __call__(self, ext: ExtLabel) -> ExtLabel:
        return self.element(self.images[self.index(ext)])

    def inverse(self, ext: ExtLabel) -> ExtLabel:
        return self.element(self.preimages[self.index(ext)])

    def text(self) -> str:
        """Canonical text form, e.g. ``(a.b b.b a.e b.e)``."""
        return "".join(
            "(" + " ".join(str(self.element(i)) for i in cycle) + ")"
            for cycle in self.cycle_indices
        )

    def __str__(self) -> str:
        return self.text()


def make_scheme(
    alphabet: Sequence[str], mapping: Iterable[Tuple[ExtLabel, ExtLabel]]
) -> Scheme:
    """Build a scheme from explicit ``(element, image)`` pairs.

    Raises:
        DuplicateLabel: If the alphabet repeats a label
        UnknownLabel: If a pair mentions a label outside the alphabet
        NotABijection: If an element is unmapped, mapped twice, or an image repeats
    """
    labels = check_alphabet(alphabet)
    positions = {label: i for i, label in enumerate(labels)}

    def to_index(ext: ExtLabel) -> int:
        label, marker = ext
        if label not in positions or marker not in MARKERS:
            raise UnknownLabel(f"{label}.{marker} is not in the doubled alphabet")
        return 2 * positions[label] + MARKERS.index(marker)

    images: List[Optional[int]] = [None] * (2 * len(labels))
    used = set()
    for source, target in mapping:
        i, j = to_index(ExtLabel(*source)), to_index(ExtLabel(*target))
        if images[i] is not None:
            raise NotABijection(f"{ExtLabel(*source)} is mapped twice")
        if j in used:
            raise NotABijection(f"{ExtLabel(*target)} is the image of two elements")
        images[i] = j
        used.add(j)

    missing = [i for i, j in enumerate(images) if j is None]
    if missing:
        names = ", ".join(str(ExtLabel(labels[i // 2], MARKERS[i % 2])) for i in missing)
        raise NotABijection(f"no image given for {names}")
    return Scheme(labels, tuple(images))


def scheme_from_cycles(
    alphabet: Sequence[str], cycle_list: Iterable[Sequence[ExtLabel]]
) -> Scheme:
    """Build a scheme whose cycles are the given sequences."""
    mapping = []
    for cycle in cycle_list:
        cycle = [ExtLabel(*ext) for ext in cycle]
        if not cycle:
            raise NotABijection("empty cycle")
        for k, ext in enumerate(cycle):
            mapping.append((ext, cycle[(k + 1) % len(cycle)]))
    return make_scheme(alphabet, mapping)


@dataclass(frozen=True)
class CycleDecomposition:
    cycles: Tuple[Tuple[ExtLabel, ...], ...]

    @property
    def N(self) -> int:
        return len(self.cycles)


def cycles(s: Scheme) -> CycleDecomposition:
    """Canonical cycle decomposition of a scheme."""
    return CycleDecomposition(
        tuple(tuple(s.element(i) for i in cycle) for cycle in s.cycle_indices)
    )


@dataclass(frozen=True)
class TurnsReport:
    """Turn sites of a scheme, listed in canonical cycle order.

    Attributes:
        turns_back: Sites ``beta.e`` with sigma(alpha.b) = beta.e
        turns_forward: Sites ``alpha.b`` with sigma(beta.e) = alpha.b
        per_cycle_twists: Turns back in each cycle minus one
        T: Total twists, the sum of per_cycle_twists
    """

    turns_back: Tuple[ExtLabel, ...]
    turns_forward: Tuple[ExtLabel, ...]
    per_cycle_twists: Tuple[int, ...]
    T: int


def turns(s: Scheme) -> TurnsReport:
    """Locate every b-to-e and e-to-b transition of the scheme."""
    back: List[ExtLabel] = []
    forward: List[ExtLabel] = []
    twists: List[int] = []
    for cycle in s.cycle_indices:
        cycle_back = 0
        cycle_forward = 0
        for i in cycle:
            j = s.images[i]
            if i % 2 == 0 and j % 2 == 1:
                back.append(s.element(j))
                cycle_back += 1
            elif i % 2 == 1 and j % 2 == 0:
                forward.append(s.element(j))
                cycle_forward += 1
        if cycle_back != cycle_forward:
            raise InternalInvariantViolation(
                f"cycle starting at {s.element(cycle[0])} has unbalanced turns"
            )
        twists.append(cycle_back - 1)
    return TurnsReport(tuple(back), tuple(forward), tuple(twists), sum(twists))


@dataclass(frozen=True)
class ComponentPartition:
    components: Tuple[Tuple[str, ...], ...]

    @property
    def P(self) -> int:
        return len(self.components)


def irreducible_components(s: Scheme) -> ComponentPartition:
    """Finest partition of the alphabet into sigma-invariant label sets.

    Two labels are linked when sigma sends an extended label of one to an
    extended label of the other; the components are the connected
    components of that graph.
    """
    graph = nx.Graph()
    graph.add_nodes_from(s.alphabet)
    for i, j in enumerate(s.images):
        graph.add_edge(s.alphabet[i // 2], s.alphabet[j // 2])
    parts = [
        tuple(sorted(component, key=s.positions.__getitem__))
        for component in nx.connected_components(graph)
    ]
    parts.sort(key=lambda part: s.positions[part[0]])
    return ComponentPartition(tuple(parts))


def dual(s: Scheme) -> Scheme:
    """The dual scheme: sigma composed with the marker swap."""
    images = []
    for k in range(s.d):
        images.append(s.images[2 * k + 1])
        images.append(s.images[2 * k])
    return Scheme(s.alphabet, tuple(images))


def twists_total(s: Scheme) -> int:
    """T(sigma) + T(dual sigma), checked against the balance identity.

    Raises:
        InternalInvariantViolation: If turns back do not sum to d, if
            T + T* + N + N* differs from d, or if the total is odd
    """
    mirror_scheme = dual(s)
    primal, mirror = turns(s), turns(mirror_scheme)
    back_total = len(primal.turns_back) + len(mirror.turns_back)
    if back_total != s.d:
        raise InternalInvariantViolation(
            f"turns back in a scheme and its dual sum to {back_total}, expected {s.d}"
        )
    check = (
        primal.T + mirror.T + len(s.cycle_indices) + len(mirror_scheme.cycle_indices)
    )
    if check != s.d:
        raise InternalInvariantViolation(f"twist balance gives {check}, expected {s.d}")
    total = primal.T + mirror.T
    if total % 2:
        raise InternalInvariantViolation(f"twists total {total} is odd")
    return total


def genus(s: Scheme) -> int:
    """Genus of the translation surfaces built from this scheme."""
    return twists_total(s) // 2 + 1


def is_iet(s: Scheme) -> bool:
    """Whether every cycle is a single b-arc followed by a single e-arc."""
    return all(twist == 0 for twist in turns(s).per_cycle_twists)


@dataclass(frozen=True)
class TwoRowIET:
    """Interval exchange in two-row notation, one bracket per interval."""

    brackets: Tuple[Tuple[Tuple[str, ...], Tuple[str, ...]], ...]

    def __str__(self) -> str:
        return " ".join(
            "[" + " ".join(upper) + " / " + " ".join(lower) + "]"
            for upper, lower in self.brackets
        )

    def labels(self) -> Tuple[str, ...]:
        """Labels in order of first appearance, upper rows before lower rows."""
        order: List[str] = []
        for upper, lower in self.brackets:
            for label in upper + lower:
                if label not in order:
                    order.append(label)
        return tuple(order)


def to_two_row(s: Scheme) -> TwoRowIET:
    """Write an untwisted scheme in two-row notation.

    Raises:
        NotAnIET: If some cycle has more than one b-arc or is degenerate
    """
    brackets = []
    for cycle in s.cycle_indices:
        starts = [
            k for k, i in enumerate(cycle)
            if i % 2 == 0 and cycle[k - 1] % 2 == 1
        ]
        if len(starts) != 1:
            head = s.element(cycle[0])
            raise NotAnIET(
                f"cycle starting at {head} has {len(starts)} b-arcs, expected exactly one"
            )
        rotated = cycle[starts[0]:] + cycle[: starts[0]]
        upper = tuple(s.alphabet[i // 2] for i in rotated if i % 2 == 0)
        lower = tuple(s.alphabet[i // 2] for i in reversed(rotated) if i % 2 == 1)
        brackets.append((upper, lower))
    return TwoRowIET(tuple(brackets))


def from_two_row(t: TwoRowIET, alphabet: Optional[Sequence[str]] = None) -> Scheme:
    """Encode each bracket as the cycle: upper left to right, then lower right to left.

    Raises:
        MalformedTwoRow: If a row is empty or a label is not used exactly once
            in the upper rows and once in the lower rows
    """
    if not t.brackets:
        raise MalformedTwoRow("two-row notation needs at least one bracket")
    uppers: List[str] = []
    lowers: List[str] = []
    for upper, lower in t.brackets:
        if not upper or not lower:
            raise MalformedTwoRow("every bracket needs a non-empty upper and lower row")
        uppers.extend(upper)
        lowers.extend(lower)
    for row, name in ((uppers, "upper"), (lowers, "lower")):
        if len(set(row)) != len(row):
            raise MalformedTwoRow(f"a label repeats in the {name} rows")
    if set(uppers) != set(lowers):
        odd = sorted(set(uppers) ^ set(lowers))
        raise MalformedTwoRow(f"labels {', '.join(odd)} appear in only one row")

    labels = tuple(alphabet) if alphabet is not None else t.labels()
    if set(labels) != set(uppers) or len(labels) != len(uppers):
        raise MalformedTwoRow("alphabet does not match the labels of the brackets")

    cycle_list = [
        [ExtLabel(label, B) for label in upper]
        + [ExtLabel(label, E) for label in reversed(lower)]
        for upper, lower in t.brackets
    ]
    return scheme_from_cycles(labels, cycle_list)
