"""Minimal SVG heatmap for fallacy-flag rasters.

Presentation only: structure (one ``rect`` of class ``cell`` per grid
point, plus a legend) is stable, exact pixel output is not pinned.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .analysis import SweepCell

_COLORS = {
    (False, False): "#eeeeee",
    (True, False): "#d95f02",
    (False, True): "#1b9e77",
    (True, True): "#7570b3",
}
_LEGEND = [
    ((False, False), "no fallacy"),
    ((True, False), "fallacy on b only"),
    ((False, True), "fallacy on a only"),
    ((True, True), "fallacy on both"),
]


def fallacy_heatmap_svg(
    cells: list[SweepCell], n_theta: int, n_theta_a: int, cell_px: int = 8
) -> str:
    """Render the row-major sweep raster as an SVG document string."""
    if len(cells) != n_theta * n_theta_a:
        raise ValueError(
            f"expected {n_theta * n_theta_a} cells, got {len(cells)}"
        )
    legend_h = 18 * len(_LEGEND) + 10
    width = n_theta_a * cell_px + 20
    height = n_theta * cell_px + legend_h + 20
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<text x="10" y="12" font-size="10">fallacy map '
        f"(rows: theta, cols: theta_a)</text>",
    ]
    for idx, cell in enumerate(cells):
        row, col = divmod(idx, n_theta_a)
        flags = (cell.report.fallacy_on_b, cell.report.fallacy_on_a)
        x = 10 + col * cell_px
        y = 16 + row * cell_px
        parts.append(
            f'<rect class="cell" x="{x}" y="{y}" width="{cell_px}" '
            f'height="{cell_px}" fill="{_COLORS[flags]}"/>'
        )
    y0 = 16 + n_theta * cell_px + 12
    for i, (flags, label) in enumerate(_LEGEND):
        y = y0 + i * 18
        parts.append(
            f'<rect class="legend" x="10" y="{y}" width="12" height="12" '
            f'fill="{_COLORS[flags]}"/>'
        )
        parts.append(
            f'<text x="28" y="{y + 10}" font-size="10">{escape(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
