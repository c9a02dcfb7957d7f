"""Visual artifacts: label overlay PNGs, stroke overlay SVGs, inbetween SVGs."""

from __future__ import annotations

import io

import numpy as np
from PIL import Image

from .labeling import RegionGraph, region_color
from .matching import Correspondence
from .strokes import StrokePair, StrokeSet

_UNMATCHED_GRAY = (204, 204, 204)
_INK_BLACK = (0, 0, 0)
_BG_WHITE = (255, 255, 255)


def encode_png(array: np.ndarray) -> bytes:
    buf = io.BytesIO()
    Image.fromarray(array).save(buf, format="PNG")
    return buf.getvalue()


def label_overlay(
    graph: RegionGraph, corr: Correspondence | None = None, side: str = "a"
) -> np.ndarray:
    """RGB overlay: ink black, regions colored.

    With a correspondence, matched regions on both sides share the color of
    the A-side region id so pairs render identically, unmatched regions go
    gray and the background stays white. Without one (the ingest debug
    view) every region id, background included, maps to its display color.
    """
    labels = graph.label_map.labels
    n = max((r.id for r in graph.regions), default=0)
    lut = np.zeros((n + 1, 3), np.uint8)
    lut[0] = _INK_BLACK
    for reg in graph.regions:
        if corr is None:
            lut[reg.id] = reg.display_color
        elif reg.is_background:
            lut[reg.id] = _BG_WHITE
        else:
            if side == "a":
                partner = reg.id if reg.id in corr.mapping() else None
            else:
                partner = corr.reverse_mapping().get(reg.id)
            lut[reg.id] = region_color(partner) if partner is not None else _UNMATCHED_GRAY
    return lut[labels]


def id_overlay(graph: RegionGraph) -> np.ndarray:
    """RGB overlay that encodes the region id exactly: id = R + 256*G.

    Ink is black (id 0). Lets a client pick regions by reading one pixel.
    """
    labels = graph.label_map.labels
    n = max((r.id for r in graph.regions), default=0)
    lut = np.zeros((n + 1, 3), np.uint8)
    ids = np.arange(n + 1)
    lut[:, 0] = ids & 0xFF
    lut[:, 1] = ids >> 8
    return lut[labels]


def junction_overlay(graph: RegionGraph, junctions) -> np.ndarray:
    """Label overlay with junction circles burned in."""
    rgb = label_overlay(graph)
    h, w = rgb.shape[:2]
    for j in junctions:
        cx, cy = j.position
        steps = max(24, int(8 * j.radius))
        ang = np.linspace(0.0, 2 * np.pi, steps)
        xs = np.clip(np.round(cx + j.radius * np.cos(ang)).astype(int), 0, w - 1)
        ys = np.clip(np.round(cy + j.radius * np.sin(ang)).astype(int), 0, h - 1)
        rgb[ys, xs] = (255, 0, 0)
        rgb[int(round(cy)), int(round(cx))] = (255, 0, 0)
    return rgb


def _hex(color: tuple[int, int, int]) -> str:
    return "#%02x%02x%02x" % color


def _svg_polyline(points: np.ndarray, color: str, width: float = 1.5) -> str:
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}" stroke-linecap="round"/>'


def _svg_doc(body: list[str], width: int, height: int) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def stroke_overlay_svg(
    strokes_a: StrokeSet,
    strokes_b: StrokeSet,
    pairs: list[StrokePair],
    dims: tuple[int, int],
    gap: int = 16,
) -> str:
    """Both frames side by side; matched strokes share a color, rest are gray."""
    w, h = dims
    color_a: dict[int, str] = {}
    color_b: dict[int, str] = {}
    for k, p in enumerate(pairs):
        c = _hex(region_color(k + 1))
        color_a[p.stroke_a] = c
        color_b[p.stroke_b] = c
    body = [f'<rect width="{2 * w + gap}" height="{h}" fill="white"/>', "<g>"]
    for s in strokes_a.strokes:
        body.append(_svg_polyline(s.points, color_a.get(s.id, "#bbbbbb")))
    body.append("</g>")
    body.append(f'<g transform="translate({w + gap},0)">')
    for s in strokes_b.strokes:
        body.append(_svg_polyline(s.points, color_b.get(s.id, "#bbbbbb")))
    body.append("</g>")
    return _svg_doc(body, 2 * w + gap, h)


def inbetween_svg(polylines: list[np.ndarray], dims: tuple[int, int]) -> str:
    """One interpolated frame as black polylines on white."""
    w, h = dims
    body = [f'<rect width="{w}" height="{h}" fill="white"/>']
    body.extend(_svg_polyline(p, "#000000") for p in polylines)
    return _svg_doc(body, w, h)
