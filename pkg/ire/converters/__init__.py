"""Text, JSON and drawing formats."""

from ire.converters.document import (
    Document,
    class_document,
    dumps,
    extension_document,
    floating_document,
    ire_document,
    lengths_document,
    load_document,
    parse_document,
    report_document,
    save_document,
    scheme_document,
    surface_document,
    tree_document,
)
from ire.converters.net import save_net, surface_drawing
from ire.converters.text import (
    format_rational,
    format_scheme,
    format_two_row,
    parse_assignments,
    parse_rational,
    parse_scheme_text,
    parse_step,
    parse_two_row,
)

__all__ = [
    "Document",
    "load_document",
    "parse_document",
    "dumps",
    "save_document",
    "scheme_document",
    "ire_document",
    "extension_document",
    "floating_document",
    "lengths_document",
    "report_document",
    "tree_document",
    "surface_document",
    "class_document",
    "save_net",
    "surface_drawing",
    "parse_scheme_text",
    "format_scheme",
    "parse_two_row",
    "format_two_row",
    "parse_step",
    "parse_rational",
    "format_rational",
    "parse_assignments",
]
