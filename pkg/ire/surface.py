"""Zippered rectangles built from a positive natural extension.

Every label gets a rectangle ``v[a]`` wide and ``w[a]`` tall. The primal
tree glues bottom sides to top sides; the dual tree glues left sides to
right sides. Corners and piece endpoints that end up identified form the
vertices of the surface, and a vertex whose total angle is not ``2*pi`` is
a cone point.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from ire.errors import InternalInvariantViolation, NotPositive
from ire.extension import NaturalExtension
from ire.gluing import (
    BranchRule,
    GluedTree,
    glue_ire,
    is_branch_coordinate,
    resolve_ending,
    tree_map_eval,
)
from ire.scheme import B, ExtLabel, genus, twists_total

HORIZONTAL = "horizontal"
VERTICAL = "vertical"

# (label, X, Y) inside the rectangle of label
PointKey = Tuple[str, Fraction, Fraction]


@dataclass(frozen=True)
class SideGluing:
    """A piece of one rectangle side glued to a piece of another.

    Horizontal gluings join a piece of the bottom of ``source`` to the top of
    ``target``; vertical ones join the left of ``source`` to the right of
    ``target``. Ranges are offsets along the side.
    """

    direction: str
    source: str
    source_range: Tuple[Fraction, Fraction]
    target: str
    target_range: Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ConePoint:
    angle_pi: int
    corners: Tuple[PointKey, ...]

    @property
    def order(self) -> int:
        return self.angle_pi // 2 - 1


@dataclass(frozen=True)
class EulerData:
    vertices: int
    edges: int
    faces: int

    @property
    def characteristic(self) -> int:
        return self.vertices - self.edges + self.faces


@dataclass
class ZipperedSurface:
    extension: NaturalExtension
    horizontal_tree: GluedTree
    vertical_tree: GluedTree
    horizontal: List[SideGluing] = field(default_factory=list)
    vertical: List[SideGluing] = field(default_factory=list)
    cone_points: List[ConePoint] = field(default_factory=list)
    euler: Optional[EulerData] = None
    genus: int = 0

    @property
    def rectangles(self) -> Dict[str, Tuple[Fraction, Fraction]]:
        e = self.extension
        return {label: (e.v[label], e.w[label]) for label in e.scheme.alphabet}

    def summary(self) -> Dict[str, object]:
        return {
            "genus": self.genus,
            "euler_characteristic": self.euler.characteristic,
            "vertices": self.euler.vertices,
            "edges": self.euler.edges,
            "faces": self.euler.faces,
            "cone_points": [
                {"angle_pi": point.angle_pi, "order": point.order, "corners": len(point.corners)}
                for point in self.cone_points
            ],
        }


@dataclass
class FirstReturnReport:
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def _side_gluings(tree: GluedTree, direction: str) -> List[SideGluing]:
    s, x = tree.scheme, tree.endpoints
    gluings = []
    for p in tree.pairings:
        source_base = x[p.begin]
        target_base = x[s(p.end)]
        gluings.append(
            SideGluing(
                direction,
                p.begin.label,
                (p.lo - source_base, p.hi - source_base),
                p.end.label,
                (p.lo - target_base, p.hi - target_base),
            )
        )
    return gluings


def _endpoint_keys(
    gluing: SideGluing, rectangles: Dict[str, Tuple[Fraction, Fraction]]
) -> List[Tuple[PointKey, PointKey]]:
    pairs = []
    for source_t, target_t in zip(gluing.source_range, gluing.target_range):
        if gluing.direction == HORIZONTAL:
            height = rectangles[gluing.target][1]
            pairs.append(
                ((gluing.source, source_t, Fraction(0)), (gluing.target, target_t, height))
            )
        else:
            width = rectangles[gluing.target][0]
            pairs.append(
                ((gluing.source, Fraction(0), source_t), (gluing.target, width, target_t))
            )
    return pairs


def _angle_units(key: PointKey, rectangles: Dict[str, Tuple[Fraction, Fraction]]) -> int:
    """Quarter turns contributed by a point: 1 at a corner, 2 inside a side."""
    label, X, Y = key
    width, height = rectangles[label]
    on_vertical_side = X in (0, width)
    on_horizontal_side = Y in (0, height)
    return 1 if on_vertical_side and on_horizontal_side else 2


def build_surface(
    e: NaturalExtension,
    rule_h: Optional[BranchRule] = None,
    rule_v: Optional[BranchRule] = None,
) -> ZipperedSurface:
    """Glue the rectangles of a positive natural extension.

    Raises:
        NotPositive: Naming the side whose lengths are not all positive
        InternalInvariantViolation: If the cone angles or the Euler
            characteristic disagree with the scheme's genus
    """
    for side, lengths in (("primal", e.v), ("dual", e.w)):
        bad = sorted(label for label, value in lengths.items() if value <= 0)
        if bad:
            raise NotPositive(f"{side} lengths of {', '.join(bad)} are not positive", side)

    horizontal_tree = glue_ire(e.scheme, e.x, rule_h, side="primal")
    vertical_tree = glue_ire(e.dual_scheme, e.y, rule_v, side="dual")
    surface = ZipperedSurface(e, horizontal_tree, vertical_tree)
    surface.horizontal = _side_gluings(horizontal_tree, HORIZONTAL)
    surface.vertical = _side_gluings(vertical_tree, VERTICAL)

    rectangles = surface.rectangles
    graph = nx.Graph()
    for gluing in surface.horizontal + surface.vertical:
        for one, other in _endpoint_keys(gluing, rectangles):
            graph.add_edge(one, other)

    classes = sorted(
        (sorted(component) for component in nx.connected_components(graph)),
        key=lambda keys: keys[0],
    )
    for keys in classes:
        units = sum(_angle_units(key, rectangles) for key in keys)
        if units % 4:
            raise InternalInvariantViolation(f"vertex at {keys[0]} has angle {units}*pi/2")
        if units != 4:
            surface.cone_points.append(ConePoint(units // 2, tuple(keys)))

    surface.euler = EulerData(
        len(classes), len(surface.horizontal) + len(surface.vertical), e.scheme.d
    )
    chi = surface.euler.characteristic
    expected = twists_total(e.scheme)
    orders = sum(point.order for point in surface.cone_points)
    if orders != expected:
        raise InternalInvariantViolation(
            f"cone points add up to {orders} but the scheme has {expected} twists"
        )
    if chi % 2 or (2 - chi) // 2 != genus(e.scheme):
        raise InternalInvariantViolation(
            f"Euler characteristic {chi} does not match genus {genus(e.scheme)}"
        )
    surface.genus = (2 - chi) // 2
    return surface


def side_coverage_ok(surface: ZipperedSurface) -> bool:
    """Whether every rectangle side is tiled exactly once by glued pieces."""
    rectangles = surface.rectangles
    for label, (width, height) in rectangles.items():
        sides = (
            ([g.source_range for g in surface.horizontal if g.source == label], width),
            ([g.target_range for g in surface.horizontal if g.target == label], width),
            ([g.source_range for g in surface.vertical if g.source == label], height),
            ([g.target_range for g in surface.vertical if g.target == label], height),
        )
        for pieces, size in sides:
            position = Fraction(0)
            for lo, hi in sorted(pieces):
                if lo != position:
                    return False
                position = hi
            if position != size:
                return False
    return True


def _sample_points(alphabet, lengths, samples: int):
    per_label = max(1, math.ceil(samples / len(alphabet)))
    for i in range(samples):
        label = alphabet[i % len(alphabet)]
        j = i // len(alphabet)
        yield label, lengths[label] * Fraction(2 * j + 1, 2 * per_label)


def _flow(
    gluings: List[SideGluing], tree: GluedTree, samples: int, report: FirstReturnReport
) -> None:
    s, x = tree.scheme, tree.endpoints
    lengths = {label: x[s(ExtLabel(label, B))] - x[ExtLabel(label, B)] for label in s.alphabet}
    for label, t in _sample_points(s.alphabet, lengths, samples):
        begin = ExtLabel(label, B)
        u = x[begin] + t
        leaving = [
            g for g in gluings
            if g.target == label and g.target_range[0] < t < g.target_range[1]
        ]
        touching_break = any(t in g.source_range for g in gluings if g.source == label)
        if is_branch_coordinate(tree, begin, u) or touching_break or len(leaving) != 1:
            report.skipped += 1
            continue

        gluing = leaving[0]
        offset = gluing.source_range[0] + (t - gluing.target_range[0])
        landed = (ExtLabel(gluing.source, B), x[ExtLabel(gluing.source, B)] + offset)

        [(end, image)] = tree_map_eval(tree, (begin, u))
        expected = [(b, image) for b in resolve_ending(tree, end, image)]
        if expected == [landed]:
            report.passed += 1
        else:
            report.failed += 1
            report.failures.append(
                f"{tree.side} flow from {begin} at {u} reached {landed[0]} at {landed[1]}, "
                f"tree map gives {', '.join(f'{b} at {c}' for b, c in expected) or 'nothing'}"
            )


def first_return_check(surface: ZipperedSurface, samples: int = 100) -> FirstReturnReport:
    """Consistency check of the side gluings against the tree maps.

    Flowing up from the bottom of a rectangle crosses it and leaves through a
    top piece into the bottom of another rectangle; this must agree with the
    primal tree map followed by the beginning glued to the resulting ending
    interval. Flowing left to right is checked against the dual tree the same
    way. Samples at branch coordinates or at piece boundaries are skipped.

    The gluings and the tree maps both come from the same glued trees, so this
    catches a side piece that was cut or shifted wrongly, not an error in the
    gluing itself. ``side_coverage_ok`` and the cone angle and Euler checks in
    ``build_surface`` look at the rectangles on their own.
    """
    report = FirstReturnReport()
    _flow(surface.horizontal, surface.horizontal_tree, samples, report)
    _flow(surface.vertical, surface.vertical_tree, samples, report)
    return report


def cone_angle_ok(surface: ZipperedSurface) -> bool:
    """Whether every cone point has angle ``2(k+1)*pi`` with ``k >= 1``."""
    return all(point.angle_pi % 2 == 0 and point.order >= 1 for point in surface.cone_points)
