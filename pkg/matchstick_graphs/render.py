"""
SVG drawing of an Embedding.
"""

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape, quoteattr

from matchstick_graphs.errors import EmptyEmbedding, InvalidRenderOptions


@dataclass(frozen=True)
class RenderOptions:
    """Drawing options. Lengths are pixels unless noted."""

    scale: float = 60.0            # pixels per matchstick
    show_labels: bool = False
    edge_color: str = "gray"
    vertex_color: str = "red"
    closing_color: Optional[str] = None
    vertex_radius: float = 3.0
    edge_width: float = 1.5
    margin: float = 20.0
    label_size: float = 9.0
    title: Optional[str] = None

    def __post_init__(self):
        if not self.scale > 0:
            raise InvalidRenderOptions(f"scale must be positive, got {self.scale!r}")
        if self.vertex_radius < 0:
            raise InvalidRenderOptions(f"vertex_radius must be non-negative, got {self.vertex_radius!r}")
        if self.margin < 0:
            raise InvalidRenderOptions(f"margin must be non-negative, got {self.margin!r}")


def _fmt(value):
    # Fixed precision keeps output byte-stable and well inside 1e-6 px.
    text = f"{value:.9f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def render_svg(embedding, opts=None):
    """SVG 1.1 document: one <line> per edge, one <circle> per vertex."""
    opts = opts or RenderOptions()
    coords = embedding.coords
    if not coords:
        raise EmptyEmbedding()

    xs = [c.x for c in coords.values()]
    ys = [c.y for c in coords.values()]
    min_x, max_y = min(xs), max(ys)
    width = (max(xs) - min_x) * opts.scale + 2 * opts.margin
    height = (max_y - min(ys)) * opts.scale + 2 * opts.margin

    def to_svg(c):
        # SVG's y axis points down; flip so mathematical "up" stays up.
        return (opts.margin + (c.x - min_x) * opts.scale,
                opts.margin + (max_y - c.y) * opts.scale)

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    if opts.title:
        lines.append(f"<title>{escape(opts.title)}</title>")

    lines.append(f'<g stroke={quoteattr(opts.edge_color)} stroke-width="{_fmt(opts.edge_width)}" stroke-linecap="round">')
    for a, b in embedding.edges:
        (x1, y1), (x2, y2) = to_svg(coords[a]), to_svg(coords[b])
        stroke = ""
        if opts.closing_color and embedding.is_closing((a, b)):
            stroke = f" stroke={quoteattr(opts.closing_color)}"
        lines.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"{stroke}/>'
        )
    lines.append("</g>")

    lines.append(f"<g fill={quoteattr(opts.vertex_color)}>")
    for v, c in coords.items():
        cx, cy = to_svg(c)
        lines.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(opts.vertex_radius)}"/>')
    lines.append("</g>")

    if opts.show_labels:
        lines.append(f'<g font-family="sans-serif" font-size="{_fmt(opts.label_size)}" fill="black">')
        offset = opts.vertex_radius + 1.0
        for v, c in coords.items():
            cx, cy = to_svg(c)
            lines.append(f'<text x="{_fmt(cx + offset)}" y="{_fmt(cy - offset)}">{escape(v)}</text>')
        lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
