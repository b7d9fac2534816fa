"""Static drawing of a surface net: its rectangles side by side."""

import os
import time
from typing import Dict, List, Tuple

from reportlab.graphics import renderPDF, renderSVG
from reportlab.graphics.shapes import Drawing, Line, Rect, String
from reportlab.lib import colors
from reportlab.lib.units import cm

from ire.surface import HORIZONTAL, ZipperedSurface

NET_FORMATS = (".svg", ".pdf")

MARGIN = 1 * cm
GAP = 1 * cm
MAX_HEIGHT = 8 * cm
MAX_WIDTH = 24 * cm
FONT = "Helvetica"


def _scale(rectangles: Dict[str, Tuple]) -> float:
    total_width = sum(float(width) for width, _ in rectangles.values())
    tallest = max(float(height) for _, height in rectangles.values())
    room = MAX_WIDTH - GAP * (len(rectangles) - 1)
    return min(MAX_HEIGHT / tallest, room / total_width)


def _side_marks(surface: ZipperedSurface) -> Dict[str, Dict[str, List[Tuple[float, float, str]]]]:
    """Glued pieces per rectangle side, as ``(start, end, partner)`` offsets."""
    marks: Dict[str, Dict[str, List]] = {
        label: {"bottom": [], "top": [], "left": [], "right": []}
        for label in surface.rectangles
    }
    for gluing in surface.horizontal + surface.vertical:
        if gluing.direction == HORIZONTAL:
            source_side, target_side = "bottom", "top"
        else:
            source_side, target_side = "left", "right"
        lo, hi = gluing.source_range
        marks[gluing.source][source_side].append((float(lo), float(hi), gluing.target))
        lo, hi = gluing.target_range
        marks[gluing.target][target_side].append((float(lo), float(hi), gluing.source))
    return marks


def surface_drawing(surface: ZipperedSurface) -> Drawing:
    """Rectangles on one row, labelled, with ticks where glued pieces meet.

    Every glued piece carries the label of the rectangle on its other side.
    """
    rectangles = surface.rectangles
    scale = _scale(rectangles)
    marks = _side_marks(surface)

    width = 2 * MARGIN + sum(float(w) * scale for w, _ in rectangles.values())
    width += GAP * (len(rectangles) - 1)
    height = 2 * MARGIN + max(float(h) for _, h in rectangles.values()) * scale
    drawing = Drawing(width, height)

    left = MARGIN
    for label, (w, h) in rectangles.items():
        w, h = float(w) * scale, float(h) * scale
        drawing.add(Rect(left, MARGIN, w, h, strokeColor=colors.black, fillColor=colors.aliceblue))
        drawing.add(String(left + w / 2, MARGIN + h / 2, label, fontName=FONT, fontSize=12,
                           textAnchor="middle"))

        for side, pieces in marks[label].items():
            for lo, hi, partner in pieces:
                lo, hi = lo * scale, hi * scale
                if side in ("bottom", "top"):
                    y = MARGIN if side == "bottom" else MARGIN + h
                    drawing.add(Line(left + lo, y - 3, left + lo, y + 3, strokeColor=colors.red))
                    offset = -9 if side == "bottom" else 4
                    drawing.add(String(left + (lo + hi) / 2, y + offset, partner, fontName=FONT,
                                       fontSize=7, textAnchor="middle"))
                else:
                    x = left if side == "left" else left + w
                    y = MARGIN + lo
                    drawing.add(Line(x - 3, y, x + 3, y, strokeColor=colors.red))
                    anchor = "end" if side == "left" else "start"
                    shift = -4 if side == "left" else 4
                    drawing.add(String(x + shift, MARGIN + (lo + hi) / 2, partner, fontName=FONT,
                                       fontSize=7, textAnchor=anchor))
        left += w + GAP
    return drawing


def save_net(surface: ZipperedSurface, output_path: str) -> float:
    """Write the net as SVG or PDF, chosen by the file extension.

    Returns:
        float: Time taken to save the file in seconds

    Raises:
        ValueError: If the extension is neither .svg nor .pdf
    """
    start = time.perf_counter()
    extension = os.path.splitext(output_path)[1].lower()
    if extension not in NET_FORMATS:
        raise ValueError(f"unsupported net format {extension!r}, use .svg or .pdf")

    drawing = surface_drawing(surface)
    if extension == ".svg":
        renderSVG.drawToFile(drawing, output_path)
    else:
        title = os.path.splitext(os.path.basename(output_path))[0].replace("_", " ")
        renderPDF.drawToFile(drawing, output_path, msg=title)
    return time.perf_counter() - start
