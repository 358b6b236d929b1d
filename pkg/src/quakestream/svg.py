"""Deterministic SVG rendering of a StreamLayout.

Output is plain text built with fixed number formatting, so identical
layouts produce byte-identical files. Each placed word is emitted as a
rectangle matching its layout bounding box exactly, plus a text glyph
sized to the computed font.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .wordstream import StreamLayout, TOPIC_TERMS

_BAND_FILL = {TOPIC_TERMS: "#9ecae1", "locations": "#a1d99b"}
_TEXT_BASELINE = 0.8  # baseline offset within the bounding box, in font units


def _fmt(value: float) -> str:
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return text if text not in ("-0", "") else "0"


def layout_to_svg(layout: StreamLayout) -> str:
    width, height = layout.canvas
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]

    for table in layout.tables:
        topic = table.topic
        bands = layout.bands[topic]
        boxes = len(bands)
        fill = _BAND_FILL.get(topic, "#cccccc")
        lines.append(f'<g class="band-{escape(topic)}">')
        for j, band in enumerate(bands):
            if band.thickness <= 0:
                continue
            x0 = j * width / boxes
            box_width = width / boxes
            lines.append(
                f'<rect class="band" x="{_fmt(x0)}" y="{_fmt(band.top)}" '
                f'width="{_fmt(box_width)}" height="{_fmt(band.thickness)}" '
                f'fill="{fill}" fill-opacity="0.35"/>'
            )
        lines.append("</g>")

    lines.append('<g class="words" font-family="sans-serif">')
    for word in layout.words:
        x, y, w, h = word.bounding_box
        lines.append(
            f'<rect class="word-box" x="{_fmt(x)}" y="{_fmt(y)}" '
            f'width="{_fmt(w)}" height="{_fmt(h)}" fill="none" '
            f"data-term={quoteattr(word.term)} "
            f'data-topic="{escape(word.topic)}" data-box="{word.box_index}" '
            f'data-frequency="{word.frequency}"/>'
        )
        baseline = y + h * _TEXT_BASELINE
        lines.append(
            f'<text x="{_fmt(x)}" y="{_fmt(baseline)}" '
            f'font-size="{_fmt(word.font_size)}" textLength="{_fmt(w)}" '
            f'lengthAdjust="spacingAndGlyphs">{escape(word.term)}</text>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
