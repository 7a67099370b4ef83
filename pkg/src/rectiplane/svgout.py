"""Deterministic SVG rendering of plane embeddings.

Same input always yields byte-identical output: positions go through one
fixed decimal formatting and nothing depends on the environment.
"""

from fractions import Fraction

from .metric import format_scalar

_WIDTH = 640
_HEIGHT = 480
_MARGIN = 40


def _dec(value):
    return f"{float(value):.3f}"


def _esc(text):
    return (str(text).replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def render_svg(points, labels=None):
    """SVG 1.1 document: labeled circles plus their axis-parallel frame.

    Coordinates are scaled uniformly into a fixed viewport; every circle
    carries a caption with the label and the exact rational coordinates,
    so no precision is lost even though drawing positions are decimal.
    """
    n = len(points)
    if labels is None:
        labels = [str(i) for i in range(n)]
    xs = [p[0] for p in points] or [Fraction(0)]
    ys = [p[1] for p in points] or [Fraction(0)]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    span = max(xmax - xmin, ymax - ymin, Fraction(1))
    scale = Fraction(min(_WIDTH, _HEIGHT) - 2 * _MARGIN) / span

    def sx(v):
        return _dec(_MARGIN + (v - xmin) * scale)

    def sy(v):
        # SVG y axis points down.
        return _dec(_HEIGHT - _MARGIN - (v - ymin) * scale)

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{_WIDTH}" height="{_HEIGHT}" '
           f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
           f'<rect x="{sx(xmin)}" y="{sy(ymax)}" '
           f'width="{_dec((xmax - xmin) * scale)}" '
           f'height="{_dec((ymax - ymin) * scale)}" '
           f'fill="none" stroke="#999999" stroke-width="1"/>']
    for label, p in zip(labels, points):
        caption = f"{label} ({format_scalar(p[0])}, {format_scalar(p[1])})"
        out.append(f'<circle cx="{sx(p[0])}" cy="{sy(p[1])}" r="4" '
                   f'fill="#1f4e9c"><title>{_esc(caption)}</title></circle>')
        out.append(f'<text x="{_dec(float(sx(p[0])) + 6)}" '
                   f'y="{_dec(float(sy(p[1])) - 6)}" '
                   f'font-family="monospace" font-size="11">'
                   f'{_esc(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
