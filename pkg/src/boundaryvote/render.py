"""SVG rendering of a voted sensor field in the four-outcome glyph style.

Glyphs follow the usual convention: sensors that stayed correct are faint
dots, corrected errors are gray discs, surviving errors are black boxes, and
newly introduced errors are black discs.
"""
from __future__ import annotations

import numpy as np

_SIZE = 640
_MARGIN = 20

GLYPH_CLASSES = ("correct", "corrected", "still-wrong", "new-wrong")


def _tx(v):
    return _MARGIN + v * (_SIZE - 2 * _MARGIN)


def _ty(v):
    return _SIZE - _MARGIN - v * (_SIZE - 2 * _MARGIN)


def _region_polygon(region, samples: int = 720) -> str:
    s = np.linspace(0.0, region.boundary.length, samples, endpoint=False)
    bx, by = region.boundary.points_at(s)
    return " ".join(f"{_tx(x):.2f},{_ty(y):.2f}" for x, y in zip(bx, by))


def classify_outcomes(truth, measured, decided):
    """Masks for the four glyph classes, in GLYPH_CLASSES order."""
    wrong0 = measured != truth
    wrong1 = decided != truth
    return (
        ~wrong0 & ~wrong1,
        wrong0 & ~wrong1,
        wrong0 & wrong1,
        ~wrong0 & wrong1,
    )


def render_field(field, outcome, region, path=None) -> str:
    """Render one trial as an SVG document; optionally write it to path."""
    if field.truth is None or field.measured is None:
        raise ValueError("field has no measurements")
    masks = classify_outcomes(field.truth, field.measured, outcome.decided)
    counts = [int(m.sum()) for m in masks]

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE}" '
        f'viewBox="0 0 {_SIZE} {_SIZE}">',
        f'<rect x="0" y="0" width="{_SIZE}" height="{_SIZE}" fill="white"/>',
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{_SIZE - 2 * _MARGIN}" '
        f'height="{_SIZE - 2 * _MARGIN}" fill="none" stroke="#888" stroke-width="1"/>',
        f'<polygon points="{_region_polygon(region)}" fill="#d7e3f4" '
        f'stroke="#5b7c9e" stroke-width="1.2"/>',
    ]
    styles = {
        "correct": ('circle', 1.6, "#c8c8c8", "none"),
        "corrected": ('circle', 3.2, "#8a8a8a", "none"),
        "still-wrong": ('rect', 3.4, "#111111", "none"),
        "new-wrong": ('circle', 3.2, "#111111", "none"),
    }
    for cls, mask in zip(GLYPH_CLASSES, masks):
        shape, size, fill, stroke = styles[cls]
        parts.append(f'<g class="{cls}" fill="{fill}" stroke="{stroke}">')
        xs, ys = field.x[mask], field.y[mask]
        for x, y in zip(xs, ys):
            px, py = _tx(x), _ty(y)
            if shape == "circle":
                parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{size}"/>')
            else:
                half = size
                parts.append(
                    f'<rect x="{px - half:.2f}" y="{py - half:.2f}" '
                    f'width="{2 * half}" height="{2 * half}"/>'
                )
        parts.append("</g>")

    labels = (
        f"correct ({counts[0]})",
        f"corrected ({counts[1]})",
        f"still wrong ({counts[2]})",
        f"newly wrong ({counts[3]})",
    )
    ly = _SIZE - 4
    lx = _MARGIN
    legend = []
    for cls, label in zip(GLYPH_CLASSES, labels):
        shape, size, fill, _ = styles[cls]
        if shape == "circle":
            legend.append(f'<circle cx="{lx + 4}" cy="{ly - 4}" r="{min(size, 3.2)}" fill="{fill}"/>')
        else:
            legend.append(f'<rect x="{lx + 1}" y="{ly - 7}" width="6" height="6" fill="{fill}"/>')
        legend.append(f'<text x="{lx + 11}" y="{ly}" font-size="11" font-family="sans-serif">{label}</text>')
        lx += 12 + 8 * len(label)
    parts.append(f'<g class="legend">{"".join(legend)}</g>')
    parts.append("</svg>")
    doc = "\n".join(parts) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return doc
