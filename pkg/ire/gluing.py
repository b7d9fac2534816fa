"""Gluing a positive IRE into a branched tree.

Each cycle of a positive IRE traces a closed polygonal chain on the line:
runs of beginning intervals move right, runs of ending intervals move back
left, and the chain turns at the turn sites of the scheme. Gluing works on
that chain one round at a time. The shortest run is split at a branch
coordinate ``c``, its two halves are matched with the neighbouring runs that
share its endpoints, and what is left of the two neighbours becomes a single
run. A chain with ``t`` twists needs ``t`` rounds; the final pair of runs
covers the same range and is matched point by point.

Every match is a ``Pairing`` of a beginning piece with an ending piece over
the same coordinates. The pairings split every interval of the IRE exactly
once.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from ire.errors import (
    DegenerateCycle,
    ExplicitBranchOutOfRange,
    InternalInvariantViolation,
    NotPositive,
    PointOutsideInterval,
    UnknownLabel,
)
from ire.realdata import Endpoints, as_endpoints, validate_ire
from ire.scheme import B, ExtLabel, Scheme

MIDPOINT = "midpoint"
EXPLICIT = "explicit"
LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class BranchRule:
    """Where to put the branch point inside the chosen run.

    Attributes:
        kind: midpoint, explicit, left or right
        coordinates: For explicit rules, one coordinate per reduction round,
            cycles in canonical order and rounds in reduction order
    """

    kind: str = MIDPOINT
    coordinates: Tuple[Fraction, ...] = ()

    @classmethod
    def midpoint(cls) -> "BranchRule":
        return cls(MIDPOINT)

    @classmethod
    def explicit(cls, *coordinates) -> "BranchRule":
        return cls(EXPLICIT, tuple(Fraction(c) for c in coordinates))

    @classmethod
    def left(cls) -> "BranchRule":
        return cls(LEFT)

    @classmethod
    def right(cls) -> "BranchRule":
        return cls(RIGHT)

    def choose(self, lo: Fraction, hi: Fraction, round_index: int) -> Fraction:
        """Branch coordinate for a run spanning ``[lo, hi]``.

        Raises:
            ExplicitBranchOutOfRange: If an explicit coordinate is missing or
                falls outside the run
        """
        if self.kind == LEFT:
            return lo
        if self.kind == RIGHT:
            return hi
        if self.kind == EXPLICIT:
            if round_index >= len(self.coordinates):
                raise ExplicitBranchOutOfRange(
                    f"no branch coordinate given for reduction round {round_index + 1}"
                )
            c = self.coordinates[round_index]
            if not lo <= c <= hi:
                raise ExplicitBranchOutOfRange(
                    f"branch coordinate {c} for round {round_index + 1} is outside [{lo}, {hi}]"
                )
            return c
        return (lo + hi) / 2


@dataclass(frozen=True)
class Fragment:
    """A piece ``[lo, hi]`` of the interval named by ``ext``."""

    ext: ExtLabel
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class Run:
    """A chain segment made of beginning (``b``) or ending (``e``) pieces."""

    marker: str
    fragments: Tuple[Fragment, ...]

    @property
    def lo(self) -> Fraction:
        return self.fragments[0].lo

    @property
    def hi(self) -> Fraction:
        return self.fragments[-1].hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def cut(self, lo: Fraction, hi: Fraction) -> Tuple[Fragment, ...]:
        """Pieces of this run clipped to ``[lo, hi]``, empty ones dropped."""
        pieces = []
        for fragment in self.fragments:
            a, b = max(lo, fragment.lo), min(hi, fragment.hi)
            if b > a:
                pieces.append(Fragment(fragment.ext, a, b))
        return tuple(pieces)

    def touching(self, c: Fraction) -> List[ExtLabel]:
        return [f.ext for f in self.fragments if f.lo <= c <= f.hi]


@dataclass(frozen=True)
class TurnChain:
    """Closed chain of turn sites of one cycle.

    Attributes:
        cycle: Index of the cycle in canonical order
        vertices: Turn-forward and turn-back sites alternating, with their
            coordinates, starting at the smallest turn-forward site
        runs: Segment between each vertex and the next
    """

    cycle: int
    vertices: Tuple[Tuple[ExtLabel, Fraction], ...]
    runs: Tuple[Run, ...]

    def segment_lengths(self) -> List[Fraction]:
        return [run.length for run in self.runs]


@dataclass(frozen=True)
class Pairing:
    """A beginning piece glued to an ending piece over ``[lo, hi]``."""

    cycle: int
    begin: ExtLabel
    end: ExtLabel
    lo: Fraction
    hi: Fraction

    @property
    def from_range(self) -> Tuple[Fraction, Fraction]:
        return self.lo, self.hi

    @property
    def to_range(self) -> Tuple[Fraction, Fraction]:
        return self.lo, self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class BranchPoint:
    cycle: int
    coordinate: Fraction
    meeting: Tuple[ExtLabel, ...]


@dataclass
class GluedTree:
    """Result of gluing one IRE.

    Attributes:
        scheme: The scheme that was glued
        endpoints: Its endpoints
        pairings: All pairings, ordered by cycle then coordinate
        branch_points: One per reduction round, in round order
        side: "primal" or "dual", used in error messages
    """

    scheme: Scheme
    endpoints: Endpoints
    pairings: List[Pairing] = field(default_factory=list)
    branch_points: List[BranchPoint] = field(default_factory=list)
    side: str = "primal"

    def pairings_of(self, ext: ExtLabel) -> List[Pairing]:
        ext = ExtLabel(*ext)
        return [p for p in self.pairings if ext in (p.begin, p.end)]

    def interval(self, ext: ExtLabel) -> Tuple[Fraction, Fraction]:
        ext = ExtLabel(*ext)
        image = self.endpoints[self.scheme(ext)]
        if ext.is_beginning:
            return self.endpoints[ext], image
        return image, self.endpoints[ext]


def _run(pieces: Sequence[Fragment]) -> Run:
    return Run(pieces[0].ext.marker, tuple(sorted(pieces, key=lambda f: f.lo)))


def _cycle_start(s: Scheme, cycle: Sequence[int]) -> int:
    forward = [
        k for k, i in enumerate(cycle)
        if i % 2 == 0 and cycle[k - 1] % 2 == 1
    ]
    if not forward:
        head = s.element(cycle[0])
        kind = "beginning" if cycle[0] % 2 == 0 else "ending"
        raise DegenerateCycle(f"cycle starting at {head} has only {kind} elements")
    return min(forward, key=lambda k: cycle[k])


def turn_chain(s: Scheme, x: Mapping, n: int) -> TurnChain:
    """Turn sites and runs of cycle ``n``.

    Raises:
        DegenerateCycle: If the cycle has only beginning or only ending elements
    """
    x = as_endpoints(s, x)
    cycle = s.cycle_indices[n]
    start = _cycle_start(s, cycle)
    walk = cycle[start:] + cycle[:start]

    vertices: List[Tuple[ExtLabel, Fraction]] = []
    runs: List[Run] = []
    pieces: List[Fragment] = []
    for k, i in enumerate(walk):
        ext = s.element(i)
        previous = walk[k - 1]
        if i % 2 != previous % 2:
            if pieces:
                runs.append(_run(pieces))
                pieces = []
            vertices.append((ext, x[ext]))
        image = s.element(s.images[i])
        if ext.is_beginning:
            pieces.append(Fragment(ext, x[ext], x[image]))
        else:
            pieces.append(Fragment(ext, x[image], x[ext]))
    runs.append(_run(pieces))
    return TurnChain(n, tuple(vertices), tuple(runs))


def _overlay(cycle: int, begins: Sequence[Fragment], ends: Sequence[Fragment]) -> List[Pairing]:
    pairings = []
    for fb in begins:
        for fe in ends:
            lo, hi = max(fb.lo, fe.lo), min(fb.hi, fe.hi)
            if hi > lo:
                pairings.append(Pairing(cycle, fb.ext, fe.ext, lo, hi))
    return pairings


def _match(cycle: int, one: Sequence[Fragment], other: Sequence[Fragment]) -> List[Pairing]:
    if one and one[0].ext.is_beginning:
        return _overlay(cycle, one, other)
    return _overlay(cycle, other, one)


def _close_meeting(seeds: Set[ExtLabel], c: Fraction, pairings: Sequence[Pairing]) -> Set[ExtLabel]:
    meeting = set(seeds)
    grew = True
    while grew:
        grew = False
        for p in pairings:
            if p.lo <= c <= p.hi and (p.begin in meeting or p.end in meeting):
                if p.begin not in meeting or p.end not in meeting:
                    meeting.update((p.begin, p.end))
                    grew = True
    return meeting


def _glue_cycle(
    s: Scheme, chain: TurnChain, rule: BranchRule, first_round: int
) -> Tuple[List[Pairing], List[BranchPoint]]:
    n = chain.cycle
    runs = list(chain.runs)
    pairings: List[Pairing] = []
    seeds: List[Tuple[Fraction, Set[ExtLabel]]] = []
    round_index = first_round

    while len(runs) > 2:
        count = len(runs)
        lengths = [run.length for run in runs]
        k = lengths.index(min(lengths))
        shortest = runs[k]
        before, after = (k - 1) % count, (k + 1) % count
        c = rule.choose(shortest.lo, shortest.hi, round_index)
        round_index += 1

        if shortest.marker == B:
            left, right = runs[before], runs[after]
        else:
            left, right = runs[after], runs[before]

        pairings += _match(n, shortest.cut(shortest.lo, c), left.cut(shortest.lo, c))
        pairings += _match(n, shortest.cut(c, shortest.hi), right.cut(c, shortest.hi))
        seeds.append(
            (c, set(shortest.touching(c)) | set(left.touching(c)) | set(right.touching(c)))
        )

        rest = left.cut(c, left.hi) + right.cut(right.lo, c)
        if not rest:
            raise InternalInvariantViolation(f"gluing round on cycle {n} left an empty run")
        merged = _run(rest)
        runs = [
            merged if j == before else run
            for j, run in enumerate(runs)
            if j not in (k, after)
        ]

    first, second = runs
    if (first.lo, first.hi) != (second.lo, second.hi):
        raise InternalInvariantViolation(
            f"final runs of cycle {n} cover [{first.lo}, {first.hi}] and [{second.lo}, {second.hi}]"
        )
    pairings += _match(n, first.fragments, second.fragments)
    pairings.sort(key=lambda p: (p.lo, p.hi, s.index(p.begin), s.index(p.end)))

    branch_points = [
        BranchPoint(
            n, c, tuple(sorted(_close_meeting(found, c, pairings), key=s.index))
        )
        for c, found in seeds
    ]
    return pairings, branch_points


def glue_ire(
    s: Scheme, x: Mapping, rule: Optional[BranchRule] = None, side: str = "primal"
) -> GluedTree:
    """Glue every cycle of a positive IRE.

    Raises:
        NotInEndpointSpace: If x is not allowed for s
        NotPositive: If some length is not positive
        ExplicitBranchOutOfRange: If an explicit rule gives an unusable coordinate
    """
    rule = rule or BranchRule()
    report = validate_ire(s, x, side)
    if not report.positive:
        bad = sorted(label for label, value in report.lengths.items() if value <= 0)
        raise NotPositive(f"lengths of {', '.join(bad)} are not positive", side)
    x = as_endpoints(s, x, side)

    tree = GluedTree(s, x, side=side)
    round_index = 0
    for n in range(len(s.cycle_indices)):
        chain = turn_chain(s, x, n)
        pairings, branch_points = _glue_cycle(s, chain, rule, round_index)
        round_index += len(branch_points)
        tree.pairings.extend(pairings)
        tree.branch_points.extend(branch_points)
    return tree


def _identified_beginnings(tree: GluedTree, ext: ExtLabel, u: Fraction) -> List[ExtLabel]:
    group = {ext}
    grew = True
    while grew:
        grew = False
        for point in tree.branch_points:
            if point.coordinate == u and group & set(point.meeting):
                fresh = {m for m in point.meeting if m.is_beginning} - group
                if fresh:
                    group |= fresh
                    grew = True
    return sorted(group, key=tree.scheme.index)


def is_branch_coordinate(tree: GluedTree, ext: ExtLabel, u: Fraction) -> bool:
    return any(point.coordinate == u and ext in point.meeting for point in tree.branch_points)


def tree_map_eval(
    tree: GluedTree, point: Tuple[ExtLabel, object]
) -> List[Tuple[ExtLabel, Fraction]]:
    """Images of a tree point under the tree interval exchange.

    The point is given as a beginning interval and a coordinate in it.
    Intervals are half-open except at branch coordinates, where every
    beginning interval meeting the branch point contributes one image.

    Raises:
        PointOutsideInterval: If the coordinate is not in the named interval
    """
    ext, u = ExtLabel(*point[0]), Fraction(point[1])
    try:
        tree.scheme.index(ext)
    except UnknownLabel as e:
        raise PointOutsideInterval(str(e)) from e
    if not ext.is_beginning:
        raise PointOutsideInterval(f"{ext} is not a beginning interval")
    lo, hi = tree.interval(ext)
    branch = is_branch_coordinate(tree, ext, u)
    if not (lo <= u < hi or (branch and lo <= u <= hi)):
        raise PointOutsideInterval(f"{u} is not in {ext} = [{lo}, {hi})")

    group = _identified_beginnings(tree, ext, u) if branch else [ext]
    images = []
    for begin in group:
        end = begin.flipped()
        images.append((end, u - tree.endpoints[begin] + tree.endpoints[tree.scheme(end)]))
    return images


def resolve_ending(tree: GluedTree, ext: ExtLabel, u: Fraction) -> List[ExtLabel]:
    """Beginning intervals glued to an ending interval at coordinate ``u``."""
    ext, u = ExtLabel(*ext), Fraction(u)
    return [p.begin for p in tree.pairings if p.end == ext and p.lo <= u < p.hi]


def pairing_coverage_ok(tree: GluedTree) -> bool:
    """Whether the pairings split every interval exactly once."""
    for ext in tree.scheme.elements():
        lo, hi = tree.interval(ext)
        pieces = sorted(
            (p.lo, p.hi) for p in tree.pairings if (p.begin if ext.is_beginning else p.end) == ext
        )
        position = lo
        for a, b in pieces:
            if a != position:
                return False
            position = b
        if position != hi:
            return False
    return True


def measure(tree: GluedTree) -> Dict[str, Fraction]:
    """Total length of the beginning intervals, the ending intervals and the pairings."""
    totals = {"beginning": Fraction(0), "ending": Fraction(0)}
    for ext in tree.scheme.elements():
        lo, hi = tree.interval(ext)
        totals["beginning" if ext.is_beginning else "ending"] += hi - lo
    totals["paired"] = sum((p.length for p in tree.pairings), Fraction(0))
    return totals
