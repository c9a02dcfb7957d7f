"""Synthetic line-art keyframes with known ground truth.

Used by the test suite and the kernel benchmark. Everything is drawn with
1-px ink on white so region counts and correspondences are constructible:
each generator returns probe points that sit inside corresponding regions
of the two frames, from which ground-truth id pairs are derived after
labeling. All randomness comes from an explicit seed.

Scene families:
  scatter  - disconnected shapes of distinct classes, translated and scaled
             between frames (assignment-oracle fodder).
  compass  - a walled plus: center room plus four arms whose sizes swap
             between frames; shape alone mismatches the arms, seed-relative
             angles recover them.
  badge    - a two-chamber body with two congruent pads on the yard wall,
             one over it and one behind it, trading places between frames;
             only the depth relation tells the pads apart. flip=True flips
             the pads' depth roles instead, which defeats the depth term.
  rooms    - a rectangle subdivided into a grid of rooms (latency/identity
             fodder).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .labeling import RegionGraph

WHITE = 255
INK_VALUE = 0

# 1-px strokes would not survive the 5x5 median denoise; draw like a pen
DEFAULT_THICKNESS = 3


@dataclass
class ScenePair:
    name: str
    image_a: np.ndarray
    image_b: np.ndarray
    # (ax, ay, bx, by) per ground-truth region pair, probing inside the region
    probes: list[tuple[float, float, float, float]] = field(default_factory=list)


def canvas(size: int | tuple[int, int]) -> np.ndarray:
    if isinstance(size, int):
        size = (size, size)
    return np.full(size, WHITE, np.uint8)


# ---------------------------------------------------------------------------
# drawing primitives (dense parametric sampling, deterministic)
# ---------------------------------------------------------------------------


def _px(v: float) -> int:
    # half-up rounding: unlike round(), commutes with integer translation
    return math.floor(v + 0.5)


def draw_line(img: np.ndarray, x0, y0, x1, y1, thickness: int = DEFAULT_THICKNESS) -> None:
    h, w = img.shape
    steps = int(2 * max(abs(x1 - x0), abs(y1 - y0))) + 1
    half = thickness // 2
    for t in np.linspace(0.0, 1.0, steps):
        x = _px(x0 + (x1 - x0) * t)
        y = _px(y0 + (y1 - y0) * t)
        if thickness == 1:
            if 0 <= y < h and 0 <= x < w:
                img[y, x] = INK_VALUE
        else:
            img[max(0, y - half) : min(h, y + half + 1), max(0, x - half) : min(w, x + half + 1)] = INK_VALUE


def draw_polyline(img, points, thickness: int = DEFAULT_THICKNESS, close: bool = False) -> None:
    pts = list(points)
    if close:
        pts.append(pts[0])
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        draw_line(img, x0, y0, x1, y1, thickness)


def draw_rect(img, x0, y0, x1, y1, thickness: int = DEFAULT_THICKNESS) -> None:
    draw_polyline(img, [(x0, y0), (x1, y0), (x1, y1), (x0, y1)], thickness, close=True)


def draw_circle(img, cx, cy, r, thickness: int = DEFAULT_THICKNESS) -> None:
    steps = max(16, int(4 * math.pi * r))
    prev = None
    for t in np.linspace(0.0, 2 * math.pi, steps):
        p = (cx + r * math.cos(t), cy + r * math.sin(t))
        if prev is not None:
            draw_line(img, prev[0], prev[1], p[0], p[1], thickness)
        prev = p


def draw_ellipse(img, cx, cy, rx, ry, thickness: int = DEFAULT_THICKNESS) -> None:
    steps = max(16, int(4 * math.pi * max(rx, ry)))
    prev = None
    for t in np.linspace(0.0, 2 * math.pi, steps):
        p = (cx + rx * math.cos(t), cy + ry * math.sin(t))
        if prev is not None:
            draw_line(img, prev[0], prev[1], p[0], p[1], thickness)
        prev = p


def fill_rect(img, x0, y0, x1, y1, value: int = WHITE) -> None:
    h, w = img.shape
    img[max(0, y0) : min(h, y1 + 1), max(0, x0) : min(w, x1 + 1)] = value


def fill_circle(img, cx, cy, r, value: int = WHITE) -> None:
    h, w = img.shape
    ys, xs = np.mgrid[0:h, 0:w]
    img[(xs - cx) ** 2 + (ys - cy) ** 2 <= r * r] = value


# ---------------------------------------------------------------------------
# ground truth from probes
# ---------------------------------------------------------------------------


def derive_truth(
    graph_a: RegionGraph, graph_b: RegionGraph, probes
) -> list[tuple[int, int]]:
    """Region id pairs under the probe points; raises on a bad fixture."""
    pairs = []
    la, lb = graph_a.label_map.labels, graph_b.label_map.labels
    for ax, ay, bx, by in probes:
        ia = int(la[round(ay), round(ax)])
        ib = int(lb[round(by), round(bx)])
        if ia == 0 or ib == 0:
            raise ValueError(f"probe ({ax},{ay})/({bx},{by}) landed on ink")
        pairs.append((ia, ib))
    a_side = [a for a, _ in pairs]
    b_side = [b for _, b in pairs]
    if len(set(a_side)) != len(a_side) or len(set(b_side)) != len(b_side):
        raise ValueError("probes fell into overlapping regions")
    return pairs


# ---------------------------------------------------------------------------
# scatter scenes: disconnected distinct-class shapes
# ---------------------------------------------------------------------------

# classes are kept far apart in the moment signature (elongation and
# asymmetry) so cross-class tentative scores stay well below same-class ones
_SCATTER_CLASSES = ("square", "bar52", "bar51", "ellipse21", "ell", "tee")
_SCATTER_BASE_AREA = {name: 2200.0 for name in _SCATTER_CLASSES}


def _draw_scatter_shape(img, name: str, cx: float, cy: float, scale: float) -> tuple[float, float]:
    """Draw one shape instance; returns an interior probe point."""
    area = _SCATTER_BASE_AREA[name] * scale * scale
    if name == "square":
        h = math.sqrt(area) / 2
        draw_rect(img, cx - h, cy - h, cx + h, cy + h)
        return cx, cy
    if name == "bar52":
        hw = math.sqrt(area * 2.5) / 2
        hh = hw / 2.5
        draw_rect(img, cx - hw, cy - hh, cx + hw, cy + hh)
        return cx, cy
    if name == "bar51":
        hw = math.sqrt(area * 5.0) / 2
        hh = hw / 5.0
        draw_rect(img, cx - hw, cy - hh, cx + hw, cy + hh)
        return cx, cy
    if name == "ellipse21":
        rx = math.sqrt(2.0 * area / math.pi)
        ry = rx / 2.0
        draw_ellipse(img, cx, cy, rx, ry)
        return cx, cy
    if name == "ell":
        s = math.sqrt(area / 3.0)
        draw_polyline(
            img,
            [
                (cx - s, cy - s),
                (cx + s, cy - s),
                (cx + s, cy),
                (cx, cy),
                (cx, cy + s),
                (cx - s, cy + s),
            ],
            close=True,
        )
        return cx - s / 2, cy - s / 2
    if name == "tee":
        u = math.sqrt(area / 16.0)
        draw_polyline(
            img,
            [
                (cx - 3 * u, cy - 2 * u),
                (cx + 3 * u, cy - 2 * u),
                (cx + 3 * u, cy),
                (cx + u, cy),
                (cx + u, cy + 2 * u),
                (cx - u, cy + 2 * u),
                (cx - u, cy),
                (cx - 3 * u, cy),
            ],
            close=True,
        )
        return cx, cy - u
    raise ValueError(name)


def _shape_extent(name: str, scale: float) -> float:
    area = _SCATTER_BASE_AREA[name] * scale * scale
    if name == "square":
        return math.sqrt(area) / 2
    if name == "bar52":
        return math.sqrt(area * 2.5) / 2
    if name == "bar51":
        return math.sqrt(area * 5.0) / 2
    if name == "ellipse21":
        return math.sqrt(2.0 * area / math.pi)
    if name == "ell":
        return math.sqrt(area / 3.0)
    if name == "tee":
        return 3 * math.sqrt(area / 16.0)
    raise ValueError(name)


def scatter_scene(seed: int, size: int = 512, max_shapes: int = 6) -> ScenePair:
    rng = np.random.default_rng(seed)
    img_a, img_b = canvas(size), canvas(size)
    n = int(rng.integers(3, max_shapes + 1))
    classes = list(rng.permutation(_SCATTER_CLASSES)[:n])
    cells = rng.permutation(9)[:n]
    cell = size // 3
    probes = []
    for name, c in zip(classes, cells):
        cy0, cx0 = divmod(int(c), 3)
        center_x = cx0 * cell + cell / 2
        center_y = cy0 * cell + cell / 2
        ax = center_x + float(rng.uniform(-6, 6))
        ay = center_y + float(rng.uniform(-6, 6))
        scale_b = float(rng.uniform(0.8, 1.25))
        ext_b = _shape_extent(name, scale_b)
        margin = cell / 2 - ext_b - 6
        want = rng.uniform(-0.15 * size, 0.15 * size, 2)
        bx = float(np.clip(ax + want[0], center_x - margin, center_x + margin))
        by = float(np.clip(ay + want[1], center_y - margin, center_y + margin))
        pa = _draw_scatter_shape(img_a, name, ax, ay, 1.0)
        pb = _draw_scatter_shape(img_b, name, bx, by, scale_b)
        probes.append((pa[0], pa[1], pb[0], pb[1]))
    return ScenePair(f"scatter-{seed}", img_a, img_b, probes)


# ---------------------------------------------------------------------------
# compass scenes: center room with four arms whose sizes swap
# ---------------------------------------------------------------------------

_ARM_SMALL = (20, 25)  # (half-width, length), aspect kept constant
_ARM_LARGE = (22, 27.5)


def _draw_compass(img, cx: float, cy: float, swap: bool) -> list[tuple[float, float]]:
    c = 30
    draw_rect(img, cx - c, cy - c, cx + c, cy + c)
    ns, ew = (_ARM_LARGE, _ARM_SMALL) if swap else (_ARM_SMALL, _ARM_LARGE)
    probes = [(cx, cy)]
    hw, ln = ns
    ln2 = 2 * ln
    draw_rect(img, cx - hw, cy - c - ln2, cx + hw, cy - c)  # north
    draw_rect(img, cx - hw, cy + c, cx + hw, cy + c + ln2)  # south
    probes.insert(0, (cx, cy - c - ln2 / 2))
    probes.append((cx, cy + c + ln2 / 2))
    hw, ln = ew
    ln2 = 2 * ln
    draw_rect(img, cx - c - ln2, cy - hw, cx - c, cy + hw)  # west
    draw_rect(img, cx + c, cy - hw, cx + c + ln2, cy + hw)  # east
    probes.insert(1, (cx - c - ln2 / 2, cy))
    probes.insert(3, (cx + c + ln2 / 2, cy))
    return probes  # north, west, center, east, south (raster-ish order)


def compass_scene(seed: int, size: int = 320) -> ScenePair:
    rng = np.random.default_rng(seed)
    img_a, img_b = canvas(size), canvas(size)
    ca = (size / 2 + float(rng.integers(-10, 11)), size / 2 + float(rng.integers(-10, 11)))
    dt = rng.integers(-24, 25, 2)  # <= 15% of the 320 frame
    cb = (ca[0] + float(dt[0]), ca[1] + float(dt[1]))
    pa = _draw_compass(img_a, ca[0], ca[1], swap=False)
    pb = _draw_compass(img_b, cb[0], cb[1], swap=True)
    probes = [(a[0], a[1], b[0], b[1]) for a, b in zip(pa, pb)]
    return ScenePair(f"compass-{seed}", img_a, img_b, probes)


# ---------------------------------------------------------------------------
# badge scenes: over-pad and under-pad trading stations
# ---------------------------------------------------------------------------


# Drawn at 2x so the character is big enough for the junction-circle radius
# formula to clear the ink thickness.
_BADGE_SCALE = 2


def _zigzag_wall(img, x: float, y0: float, y1: float, amp: float, teeth: int = 4) -> None:
    ys = np.linspace(y0, y1, 2 * teeth + 1)
    pts = [(x, y0)]
    for k, y in enumerate(ys[1:-1], start=1):
        pts.append((x - amp if k % 2 else x + amp, y))
    pts.append((x, y1))
    draw_polyline(img, pts)


def _draw_badge(img, ox: float, oy: float, over_at_top: bool) -> list[tuple[float, float]]:
    """Body with anchor|yard chambers and two pads on the yard's right wall.

    Returns probes [anchor, yard, top_pad, bottom_pad].
    """
    u = _BADGE_SCALE
    x0, y0 = ox, oy
    x1, y1 = ox + 190 * u, oy + 200 * u
    wall_x = ox + 95 * u
    draw_rect(img, x0, y0, x1, y1)
    _zigzag_wall(img, wall_x, y0, y1, amp=16 * u)
    pad = 50 * u
    top_y = oy + 30 * u
    bot_y = oy + 120 * u
    for station_y, is_over in ((top_y, over_at_top), (bot_y, not over_at_top)):
        if is_over:
            # pad sits in front: body wall disappears inside it
            fill_rect(img, int(x1 - pad // 2), int(station_y), int(x1 + pad // 2), int(station_y + pad))
            draw_rect(img, x1 - pad // 2, station_y, x1 + pad // 2, station_y + pad)
        else:
            # pad sits behind: only the part outside the body is visible,
            # sized so the visible region is congruent with an over-pad
            draw_line(img, x1, station_y, x1 + pad, station_y)
            draw_line(img, x1 + pad, station_y, x1 + pad, station_y + pad)
            draw_line(img, x1 + pad, station_y + pad, x1, station_y + pad)
    return [
        (ox + 40 * u, oy + 100 * u),  # anchor chamber
        (ox + 140 * u, oy + 185 * u),  # yard chamber, below the pad stations
        (x1 + pad * 0.45 if not over_at_top else x1, top_y + pad / 2),
        (x1 + pad * 0.45 if over_at_top else x1, bot_y + pad / 2),
    ]


def badge_scene(seed: int, size: int = 340, flip: bool = False) -> ScenePair:
    """Frame A has the over-pad at the top station, frame B at the bottom.

    The two pads' visible regions are congruent, so only depth (or luck)
    can tell them apart. flip=False reads the motion as "the pads traded
    stations, keeping their depth roles": truth pairs over with over. With
    flip=True the truth keeps each pad at its station, so the depth
    relation changes between frames and misleads the depth term.
    """
    rng = np.random.default_rng(seed)
    size = size * _BADGE_SCALE
    img_a, img_b = canvas(size), canvas(size)
    oa = (30 * _BADGE_SCALE + float(rng.integers(0, 24)), 40 * _BADGE_SCALE + float(rng.integers(0, 24)))
    dt = rng.integers(-32, 33, 2)
    ob = (oa[0] + float(dt[0]), oa[1] + float(dt[1]))
    pa = _draw_badge(img_a, oa[0], oa[1], over_at_top=True)
    pb = _draw_badge(img_b, ob[0], ob[1], over_at_top=False)
    if not flip:
        pb = [pb[0], pb[1], pb[3], pb[2]]  # truth follows the depth role
    probes = [(a[0], a[1], b[0], b[1]) for a, b in zip(pa, pb)]
    return ScenePair(f"badge-{'flip-' if flip else ''}{seed}", img_a, img_b, probes)


# ---------------------------------------------------------------------------
# room grids
# ---------------------------------------------------------------------------


def rooms_scene(
    seed: int, rows: int = 3, cols: int = 3, size: int | tuple[int, int] = 384
) -> ScenePair:
    rng = np.random.default_rng(seed)
    if isinstance(size, int):
        size = (size, size)
    h, w = size
    img_a, img_b = canvas(size), canvas(size)
    margin = 24
    dt = rng.integers(-margin // 2, margin // 2 + 1, 2)

    def grid_points(ox, oy):
        xs = np.linspace(ox + margin, ox + w - margin, cols + 1)
        ys = np.linspace(oy + margin, oy + h - margin, rows + 1)
        return xs, ys

    for img, (ox, oy) in ((img_a, (0.0, 0.0)), (img_b, (float(dt[0]), float(dt[1])))):
        xs, ys = grid_points(ox, oy)
        draw_rect(img, xs[0], ys[0], xs[-1], ys[-1])
        for x in xs[1:-1]:
            draw_line(img, x, ys[0], x, ys[-1])
        for y in ys[1:-1]:
            draw_line(img, xs[0], y, xs[-1], y)
        if img is img_a:
            pa = [( (xs[c] + xs[c + 1]) / 2, (ys[r] + ys[r + 1]) / 2) for r in range(rows) for c in range(cols)]
        else:
            pb = [((xs[c] + xs[c + 1]) / 2, (ys[r] + ys[r + 1]) / 2) for r in range(rows) for c in range(cols)]
    probes = [(a[0], a[1], b[0], b[1]) for a, b in zip(pa, pb)]
    return ScenePair(f"rooms-{seed}-{rows}x{cols}", img_a, img_b, probes)


# ---------------------------------------------------------------------------
# single-frame fixtures
# ---------------------------------------------------------------------------


def character_image(size: int = 512) -> np.ndarray:
    """A traced-character-style drawing with well over 15 closed areas."""
    img = canvas(size)
    cx = size / 2
    draw_circle(img, cx, 90, 58)  # head
    draw_rect(img, cx - 34, 64, cx + 34, 112)  # face plate
    draw_circle(img, cx - 17, 82, 7)  # left eye
    draw_circle(img, cx + 17, 82, 7)  # right eye
    draw_rect(img, cx - 14, 98, cx + 14, 107)  # mouth
    draw_rect(img, cx - 16, 148, cx + 16, 176)  # neck
    draw_rect(img, cx - 70, 176, cx + 70, 300)  # torso
    draw_rect(img, cx - 44, 192, cx + 44, 248)  # chest panel
    draw_circle(img, cx, 220, 14)  # emblem
    draw_rect(img, cx - 70, 266, cx + 70, 284)  # belt
    draw_rect(img, cx - 112, 176, cx - 70, 240)  # left upper arm
    draw_rect(img, cx + 70, 176, cx + 112, 240)  # right upper arm
    draw_rect(img, cx - 112, 240, cx - 76, 306)  # left forearm
    draw_rect(img, cx + 76, 240, cx + 112, 306)  # right forearm
    draw_circle(img, cx - 94, 326, 17)  # left hand
    draw_circle(img, cx + 94, 326, 17)  # right hand
    draw_rect(img, cx - 58, 300, cx - 12, 404)  # left leg
    draw_rect(img, cx + 12, 300, cx + 58, 404)  # right leg
    draw_rect(img, cx - 66, 404, cx - 8, 436)  # left foot
    draw_rect(img, cx + 8, 404, cx + 66, 436)  # right foot
    return img


def rings_image(size: int = 256) -> np.ndarray:
    img = canvas(size)
    draw_circle(img, size / 2, size / 2, 80)
    draw_circle(img, size / 2, size / 2, 44)
    return img


def pie_image(size: int = 256) -> np.ndarray:
    """Disc split into three sectors meeting at a center junction."""
    img = canvas(size)
    c = size / 2
    r = 90
    draw_circle(img, c, c, r)
    for ang in (90.0, 210.0, 330.0):
        t = math.radians(ang)
        draw_line(img, c, c, c + r * math.cos(t), c + r * math.sin(t))
    return img


def blob_image(size: int = 256) -> np.ndarray:
    img = canvas(size)
    draw_polyline(
        img,
        [(60, 90), (130, 50), (200, 90), (210, 170), (130, 215), (55, 160)],
        close=True,
    )
    return img


# ---------------------------------------------------------------------------
# occlusion fixtures: one object partially hiding another
# ---------------------------------------------------------------------------


_OCC_SCALE = 3.25


def occlusion_fixture(kind: int, size: int = 256):
    """A front object over a partially hidden back object.

    Returns (image, front_probe, back_probe) with probes as (x, y).
    Drawn at 3.25x so the junction-circle radius clears the ink thickness.
    """
    u = _OCC_SCALE
    img = canvas(int(size * u))

    def R(x0, y0, x1, y1, erase=False):
        if erase:
            fill_rect(img, int(x0 * u), int(y0 * u), int(x1 * u), int(y1 * u))
        draw_rect(img, x0 * u, y0 * u, x1 * u, y1 * u)

    if kind == 0:  # square over square
        R(120, 60, 220, 150)  # back
        R(60, 90, 160, 200, erase=True)  # front
        return img, (110 * u, 150 * u), (195 * u, 100 * u)
    if kind == 1:  # bar over disc
        draw_circle(img, 160 * u, 130 * u, 55 * u)
        R(40, 105, 190, 150, erase=True)
        return img, (110 * u, 128 * u), (175 * u, 80 * u)
    if kind == 2:  # disc over rect
        R(100, 80, 230, 190)
        fill_circle(img, 100 * u, 140 * u, 48 * u)
        draw_circle(img, 100 * u, 140 * u, 48 * u)
        return img, (100 * u, 140 * u), (190 * u, 120 * u)
    if kind == 3:  # tall card over wide card
        R(60, 110, 225, 185)
        R(130, 55, 200, 160, erase=True)
        return img, (165 * u, 100 * u), (90 * u, 150 * u)
    if kind == 4:  # diamond over bar
        R(45, 115, 215, 160)
        pts = [(150 * u, 60 * u), (215 * u, 130 * u), (150 * u, 200 * u), (85 * u, 130 * u)]
        ys, xs = np.mgrid[0 : img.shape[0], 0 : img.shape[1]]
        inside = (np.abs(xs - 150 * u) / (65 * u) + np.abs(ys - 130 * u) / (70 * u)) <= 1
        img[inside] = WHITE
        draw_polyline(img, pts, close=True)
        return img, (150 * u, 130 * u), (60 * u, 137 * u)
    raise ValueError(kind)
