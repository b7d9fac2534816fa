"""JSON documents for schemes, real data, trees, surfaces and classes.

Every document is an object with a ``type`` field. Schemes travel as their
canonical text next to an explicit ``alphabet``; endpoints are keyed by
extended label (``"a.b"``) and lengths by label. All rationals are written
as ``"p/q"`` strings so nothing is lost to floating point.
"""

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from ire.analysis import AnalysisReport
from ire.converters.text import (
    format_rational,
    parse_ext_label,
    parse_rational,
    parse_scheme_text,
    parse_two_row,
)
from ire.errors import ParseError
from ire.extension import FloatingExtension, NaturalExtension
from ire.gluing import GluedTree
from ire.rauzy import RauzyClass
from ire.realdata import Endpoints, Lengths
from ire.scheme import Scheme, from_two_row
from ire.surface import HORIZONTAL, VERTICAL, SideGluing, ZipperedSurface

DOCUMENT_TYPES = (
    "scheme",
    "ire",
    "extension",
    "floating",
    "lengths",
    "report",
    "tree",
    "surface",
    "class",
)

SIDE_NAMES = {HORIZONTAL: ("bottom", "top"), VERTICAL: ("left", "right")}

# Fields every document of a type carries, with their JSON types
REQUIRED_FIELDS: Dict[str, Dict[str, type]] = {
    "ire": {"x": dict},
    "extension": {"x": dict, "y": dict},
    "floating": {"v": dict, "w": dict},
    "lengths": {"v": dict},
    "report": {
        "d": int,
        "N": int,
        "P": int,
        "T": int,
        "dual": str,
        "dual_T": int,
        "twists_total": int,
        "genus": int,
        "endpoint_dim": int,
        "length_dim": int,
    },
    "tree": {"side": str, "x": dict, "pairings": list, "branch_points": list},
    "surface": {
        "x": dict,
        "y": dict,
        "rectangles": dict,
        "identifications": list,
        "cone_points": list,
        "euler": dict,
        "genus": int,
    },
    "class": {"kinds": list, "truncated": bool, "schemes": list, "edges": list},
}

JSON_TYPE_NAMES = {
    dict: "an object",
    list: "a list",
    str: "a string",
    int: "an integer",
    bool: "a boolean",
}

# Keys of the objects listed inside derived documents
ITEM_FIELDS = {
    ("tree", "pairings"): ("cycle", "begin", "end", "from", "to"),
    ("tree", "branch_points"): ("cycle", "coordinate", "meeting"),
    ("surface", "identifications"): ("direction", "from_side", "from_range", "to_side", "to_range"),
    ("surface", "cone_points"): ("angle_pi", "order", "corners"),
    ("class", "edges"): ("from", "step", "to"),
}


@dataclass
class Document:
    """A loaded document reduced to the data the commands work on.

    Attributes:
        kind: Value of the ``type`` field, or ``scheme`` for a bare literal
        scheme: The scheme the document is about
        x: Primal endpoints, when present
        y: Dual endpoints, when present
        v: Primal lengths, when present
        w: Dual lengths, when present
        data: The decoded JSON object, empty for literals
    """

    kind: str
    scheme: Scheme
    x: Optional[Endpoints] = None
    y: Optional[Endpoints] = None
    v: Optional[Lengths] = None
    w: Optional[Lengths] = None
    data: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        """Re-encode the document; derived documents, checked on load, come back as loaded."""
        if self.kind == "scheme":
            return scheme_document(self.scheme)
        if self.kind == "ire":
            return ire_document(self.scheme, self.x)
        if self.kind == "extension":
            return _with_type(
                "extension",
                self.scheme,
                x=_encode_endpoints(self.scheme, self.x),
                y=_encode_endpoints(self.scheme, self.y),
            )
        if self.kind == "floating":
            return _with_type(
                "floating",
                self.scheme,
                v=_encode_lengths(self.scheme, self.v),
                w=_encode_lengths(self.scheme, self.w),
            )
        if self.kind == "lengths":
            return lengths_document(self.scheme, self.v)
        return self.data


def _with_type(kind: str, s: Scheme, **fields) -> Dict[str, object]:
    document = {"type": kind, "alphabet": list(s.alphabet), "scheme": s.text()}
    document.update(fields)
    return document


def _encode_endpoints(s: Scheme, x: Mapping) -> Dict[str, str]:
    # a scheme and its dual share the doubled alphabet
    return {str(ext): format_rational(x[ext]) for ext in s.elements()}


def _encode_lengths(s: Scheme, v: Mapping) -> Dict[str, str]:
    return {label: format_rational(v[label]) for label in s.alphabet}


def _encode_range(bounds: Tuple[Fraction, Fraction]) -> List[str]:
    return [format_rational(bounds[0]), format_rational(bounds[1])]


def scheme_document(s: Scheme) -> Dict[str, object]:
    return _with_type("scheme", s)


def ire_document(s: Scheme, x: Mapping) -> Dict[str, object]:
    return _with_type("ire", s, x=_encode_endpoints(s, x))


def extension_document(e: NaturalExtension) -> Dict[str, object]:
    return _with_type(
        "extension",
        e.scheme,
        x=_encode_endpoints(e.scheme, e.x),
        y=_encode_endpoints(e.scheme, e.y),
    )


def floating_document(f: FloatingExtension) -> Dict[str, object]:
    return _with_type(
        "floating", f.scheme, v=_encode_lengths(f.scheme, f.v), w=_encode_lengths(f.scheme, f.w)
    )


def lengths_document(s: Scheme, v: Mapping) -> Dict[str, object]:
    return _with_type("lengths", s, v=_encode_lengths(s, v))


def report_document(report: AnalysisReport) -> Dict[str, object]:
    document: Dict[str, object] = {"type": "report"}
    document.update(report.to_dict())
    return document


def tree_document(tree: GluedTree) -> Dict[str, object]:
    """Pairings and branch points of a glued tree.

    Each pairing lists the beginning and ending pieces it glues and the
    range they share; ``from`` and ``to`` are equal because a pairing glues
    pieces over the same coordinates.
    """
    s = tree.scheme
    return _with_type(
        "tree",
        s,
        side=tree.side,
        x=_encode_endpoints(s, tree.endpoints),
        pairings=[
            {
                "cycle": p.cycle,
                "begin": str(p.begin),
                "end": str(p.end),
                "from": _encode_range(p.from_range),
                "to": _encode_range(p.to_range),
            }
            for p in tree.pairings
        ],
        branch_points=[
            {
                "cycle": point.cycle,
                "coordinate": format_rational(point.coordinate),
                "meeting": [str(ext) for ext in point.meeting],
            }
            for point in tree.branch_points
        ],
    )


def _identification(gluing: SideGluing) -> Dict[str, object]:
    from_name, to_name = SIDE_NAMES[gluing.direction]
    return {
        "direction": gluing.direction,
        "from_side": f"{gluing.source}.{from_name}",
        "from_range": _encode_range(gluing.source_range),
        "to_side": f"{gluing.target}.{to_name}",
        "to_range": _encode_range(gluing.target_range),
    }


def surface_document(surface: ZipperedSurface) -> Dict[str, object]:
    e = surface.extension
    euler = surface.euler
    return _with_type(
        "surface",
        e.scheme,
        x=_encode_endpoints(e.scheme, e.x),
        y=_encode_endpoints(e.scheme, e.y),
        rectangles={
            label: {"width": format_rational(width), "height": format_rational(height)}
            for label, (width, height) in surface.rectangles.items()
        },
        identifications=[
            _identification(gluing) for gluing in surface.horizontal + surface.vertical
        ],
        cone_points=[
            {
                "angle_pi": point.angle_pi,
                "order": point.order,
                "corners": [
                    [label, format_rational(X), format_rational(Y)]
                    for label, X, Y in point.corners
                ],
            }
            for point in surface.cone_points
        ],
        euler={
            "V": euler.vertices,
            "E": euler.edges,
            "F": euler.faces,
            "chi": euler.characteristic,
        },
        genus=surface.genus,
    )


def class_document(rc: RauzyClass) -> Dict[str, object]:
    document: Dict[str, object] = {"type": "class"}
    document.update(rc.to_dict())
    return document


def dumps(document: Mapping) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def save_document(document: Mapping, output_path: str) -> None:
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(dumps(document))


def _decode_endpoints(s: Scheme, raw) -> Endpoints:
    if not isinstance(raw, dict):
        raise ParseError("endpoints must be an object keyed by extended label")
    endpoints = {}
    for key, value in raw.items():
        ext = parse_ext_label(key)
        s.index(ext)
        endpoints[ext] = parse_rational(value)
    return endpoints


def _decode_lengths(raw) -> Lengths:
    if not isinstance(raw, dict):
        raise ParseError("lengths must be an object keyed by label")
    return {label: parse_rational(value) for label, value in raw.items()}


def _decode_scheme(data: Mapping) -> Scheme:
    text = data.get("scheme") or data.get("seed")
    if not isinstance(text, str):
        raise ParseError("document has no 'scheme' text")
    return parse_scheme_text(text, data.get("alphabet"))


def _check_fields(kind: str, data: Mapping, s: Scheme) -> None:
    """Check that a document carries the fields of its type.

    Raises:
        ParseError: Naming the first missing or mistyped field
    """
    for name, expected in REQUIRED_FIELDS.get(kind, {}).items():
        if name not in data:
            raise ParseError(f"{kind} document has no '{name}' field")
        value = data[name]
        if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
            raise ParseError(f"'{name}' of a {kind} document must be {JSON_TYPE_NAMES[expected]}")
    for (owner, name), keys in ITEM_FIELDS.items():
        if owner != kind:
            continue
        for n, item in enumerate(data[name]):
            missing = [key for key in keys if not isinstance(item, dict) or key not in item]
            if missing:
                raise ParseError(f"{name}[{n}] of a {kind} document lacks {', '.join(missing)}")

    if kind == "tree" and data["side"] not in ("primal", "dual"):
        raise ParseError(f"tree side must be 'primal' or 'dual', got {data['side']!r}")
    if kind == "report" and data["d"] != s.d:
        raise ParseError(f"report counts {data['d']} labels but its scheme has {s.d}")
    if kind == "surface":
        for label, size in data["rectangles"].items():
            if label not in s.positions:
                raise ParseError(f"rectangle given for unknown label {label}")
            if not isinstance(size, dict) or {"width", "height"} - set(size):
                raise ParseError(f"rectangle {label} needs a width and a height")
            for value in size.values():
                parse_rational(value)
        missing = [label for label in s.alphabet if label not in data["rectangles"]]
        if missing:
            raise ParseError(f"no rectangle for {', '.join(missing)}")
    if kind == "class":
        for text in data["schemes"]:
            if not isinstance(text, str):
                raise ParseError("class schemes must be scheme texts")
            parse_scheme_text(text, data.get("alphabet"))


def parse_document(data: Mapping) -> Document:
    """Decode a JSON object into a Document.

    Raises:
        ParseError: If the type is unknown, a required field is missing or a
            field is malformed
    """
    if not isinstance(data, dict):
        raise ParseError("a document must be a JSON object")
    kind = data.get("type")
    if kind not in DOCUMENT_TYPES:
        raise ParseError(f"unknown document type {kind!r}, expected one of {DOCUMENT_TYPES}")

    s = _decode_scheme(data)
    _check_fields(kind, data, s)
    document = Document(kind, s, data=dict(data))
    if "x" in data:
        document.x = _decode_endpoints(s, data["x"])
    if "y" in data:
        document.y = _decode_endpoints(s, data["y"])
    if "v" in data:
        document.v = _decode_lengths(data["v"])
    if "w" in data:
        document.w = _decode_lengths(data["w"])
    return document


def parse_literal(text: str) -> Document:
    """A scheme literal ``(a.b ...)`` or a two-row literal ``[a b / b a]``."""
    stripped = text.strip()
    if stripped.startswith("["):
        return Document("scheme", from_two_row(parse_two_row(stripped)))
    return Document("scheme", parse_scheme_text(stripped))


def load_document(source: Union[str, os.PathLike]) -> Document:
    """Load a document from a file path, inline JSON or an inline literal.

    Raises:
        ParseError: If the input is neither valid JSON nor a literal
        OSError: If a path exists but cannot be read
    """
    text = str(source)
    if os.path.isfile(text):
        with open(text, "r", encoding="utf-8") as f:
            text = f.read()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", e.pos) from e
        return parse_document(data)
    return parse_literal(text)
