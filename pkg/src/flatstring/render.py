"""
Report-only diagram emitters: DOT for the 4-valent diagram graph and SVG
chord diagrams (one circle per component, one chord per crossing, drawn
from the source passage to the target passage).
"""

from __future__ import annotations

import math

from .gausscode import GaussCode


def to_dot(code: GaussCode) -> str:
    """The diagram's 4-valent graph: crossings as nodes, arcs as edges
    labelled by component index.  Crossing-free loops appear as isolated
    ring nodes."""
    lines = ["graph diagram {", "  node [shape=circle];"]
    signs = {c.label: c.sign for c in code.crossings.values()}
    for label in sorted(signs):
        decor = "+" if signs[label] > 0 else "-"
        lines.append(f'  "{label}" [label="{label}{decor}"];')
    for ci, comp in enumerate(code.components):
        n = len(comp)
        if n == 0:
            lines.append(f'  "ring{ci}" [shape=doublecircle, label="c{ci}"];')
            continue
        for k in range(n):
            a, b = comp[k].label, comp[(k + 1) % n].label
            lines.append(f'  "{a}" -- "{b}" [label="c{ci}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(code: GaussCode, radius: float = 80.0, gap: float = 40.0) -> str:
    """Chord diagram: components as circles in a row, passages as marked
    points, a directed chord per crossing from source to target."""
    n = code.n_components
    width = n * (2 * radius) + (n + 1) * gap
    height = 2 * radius + 2 * gap
    cy = height / 2
    centers = [gap + radius + i * (2 * radius + gap) for i in range(n)]

    points: dict[tuple[str, bool], tuple[float, float]] = {}
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
             f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
             '<style>text{font:10px sans-serif}</style>']
    for ci, comp in enumerate(code.components):
        cx = centers[ci]
        parts.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{radius:.1f}" '
                     'fill="none" stroke="black"/>')
        m = max(len(comp), 1)
        for k, p in enumerate(comp):
            ang = 2 * math.pi * k / m - math.pi / 2
            x = cx + radius * math.cos(ang)
            y = cy + radius * math.sin(ang)
            points[(p.label, p.is_source)] = (x, y)
            parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="2" fill="black"/>')
            parts.append(f'<text x="{x + 4:.1f}" y="{y - 4:.1f}">{p.label}</text>')
    signs = {c.label: c.sign for c in code.crossings.values()}
    for label in sorted(signs):
        (x1, y1) = points[(label, True)]
        (x2, y2) = points[(label, False)]
        color = "#1f77b4" if signs[label] > 0 else "#d62728"
        parts.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" '
                     f'y2="{y2:.1f}" stroke="{color}" stroke-dasharray="4 2"/>')
        # arrowhead at the target end
        dx, dy = x2 - x1, y2 - y1
        norm = math.hypot(dx, dy) or 1.0
        ux, uy = dx / norm, dy / norm
        bx, by = x2 - 8 * ux, y2 - 8 * uy
        px, py = -uy * 3, ux * 3
        parts.append(f'<polygon points="{x2:.1f},{y2:.1f} {bx + px:.1f},'
                     f'{by + py:.1f} {bx - px:.1f},{by - py:.1f}" fill="{color}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
