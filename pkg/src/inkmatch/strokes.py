"""Strokes: boundary-ink chains between region pairs, and their pairing.

A stroke is the chain of ink pixels that separate exactly two regions
(computed on the propagated label map, which puts the chain near the ink
centerline for thick strokes). Chains split at junctions. Stroke pairs
follow directly from the region correspondence; multiple chains sharing a
region pair are disambiguated by arc length then chord direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ParameterError
from .labeling import DEFAULT_MAX_INK_THICKNESS, RegionGraph, _propagation_stages
from .matching import Correspondence

OPEN = -1  # endpoint sentinel: not attached to a junction

_JUNCTION_SPLIT_DIST = 1.5
_ENDPOINT_ATTACH_DIST = 3.0
_RESAMPLE_SPACING = 3.0
_MAX_RESAMPLE_POINTS = 128


@dataclass
class Stroke:
    id: int
    points: np.ndarray  # (k, 2) float, columns (x, y), ordered along the chain
    region_pair: tuple[int, int]  # unordered, stored r < s
    endpoints: tuple[int, int] = (OPEN, OPEN)  # junction indices or OPEN
    closed: bool = False

    @property
    def arc_length(self) -> float:
        return float(np.linalg.norm(np.diff(self.points, axis=0), axis=1).sum())

    def chord(self) -> np.ndarray:
        return self.points[-1] - self.points[0]


@dataclass
class StrokeSet:
    strokes: list[Stroke]
    diagnostics: dict = field(default_factory=dict)

    def by_id(self, sid: int) -> Stroke:
        return self._index[sid]

    def __post_init__(self):
        self._index = {s.id: s for s in self.strokes}


@dataclass
class StrokePair:
    stroke_a: int
    stroke_b: int
    vertices_a: np.ndarray  # (k, 2), k >= 2
    vertices_b: np.ndarray  # same length, orientation-aligned to vertices_a
    confidence: float


def _zhang_suen(img: np.ndarray) -> np.ndarray:
    """Thin a binary image to 1-px width (connectivity preserving)."""
    img = img.astype(np.uint8)
    changed = True
    while changed:
        changed = False
        for step in (0, 1):
            p = np.pad(img, 1)
            n = [
                p[:-2, 1:-1], p[:-2, 2:], p[1:-1, 2:], p[2:, 2:],
                p[2:, 1:-1], p[2:, :-2], p[1:-1, :-2], p[:-2, :-2],
            ]
            b = sum(int_n.astype(np.int32) for int_n in n)
            a = sum(((n[i] == 0) & (n[(i + 1) % 8] == 1)).astype(np.int32) for i in range(8))
            if step == 0:
                cond = (n[0] * n[2] * n[4] == 0) & (n[2] * n[4] * n[6] == 0)
            else:
                cond = (n[0] * n[2] * n[6] == 0) & (n[0] * n[4] * n[6] == 0)
            kill = (img == 1) & (b >= 2) & (b <= 6) & (a == 1) & cond
            if kill.any():
                img[kill] = 0
                changed = True
    return img.astype(bool)


def _thin_group(pixels: set[tuple[int, int]]) -> set[tuple[int, int]]:
    """Collapse a support-pixel band to a 1-px chain; keeps tiny sets as is."""
    if len(pixels) < 3:
        return set(pixels)
    ys = [p[0] for p in pixels]
    xs = [p[1] for p in pixels]
    y0, x0 = min(ys), min(xs)
    mask = np.zeros((max(ys) - y0 + 1, max(xs) - x0 + 1), np.uint8)
    for y, x in pixels:
        mask[y - y0, x - x0] = 1
    thin = _zhang_suen(mask)
    return {(y0 + int(y), x0 + int(x)) for y, x in zip(*np.nonzero(thin))}


def _order_chain(pixels: set[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Order an 8-connected pixel set into one or more end-to-end walks."""
    nbrs = {}
    for y, x in pixels:
        nbrs[(y, x)] = [
            (y + dy, x + dx)
            for dy in (-1, 0, 1)
            for dx in (-1, 0, 1)
            if (dy or dx) and (y + dy, x + dx) in pixels
        ]
    remaining = set(pixels)
    walks = []
    while remaining:
        ends = sorted(p for p in remaining if sum(q in remaining for q in nbrs[p]) <= 1)
        start = ends[0] if ends else min(remaining)
        path = [start]
        remaining.discard(start)
        cur = start
        while True:
            cand = [q for q in nbrs[cur] if q in remaining]
            if not cand:
                break
            # prefer 4-neighbors: stepping diagonally past an elbow pixel
            # would strand it as a one-pixel fragment
            cur = min(cand, key=lambda q: (abs(q[0] - cur[0]) + abs(q[1] - cur[1]) == 2, q))
            path.append(cur)
            remaining.discard(cur)
        walks.append(path)
    return walks


def _is_closed(path: list[tuple[int, int]]) -> bool:
    if len(path) < 4:
        return False
    (y0, x0), (y1, x1) = path[0], path[-1]
    return max(abs(y0 - y1), abs(x0 - x1)) == 1


def _split_at_junctions(path, junctions) -> list[list]:
    """Split a walk where interior points pass a junction center."""
    if not junctions or len(path) < 5:
        return [path]
    jxy = np.asarray(junctions, float)  # rows (x, y)
    pts = np.asarray(path, float)  # rows (y, x)
    d2 = (pts[:, 1:2] - jxy[None, :, 0]) ** 2 + (pts[:, 0:1] - jxy[None, :, 1]) ** 2
    near = d2.min(axis=1) <= _JUNCTION_SPLIT_DIST**2
    cuts = []
    for i in range(2, len(path) - 2):
        if near[i]:
            if not cuts or i - cuts[-1] >= 2:
                cuts.append(i)
    if not cuts:
        return [path]
    segments = []
    prev = 0
    for c in cuts:
        segments.append(path[prev : c + 1])
        prev = c + 1
    segments.append(path[prev:])
    return [s for s in segments if len(s) >= 2]


def extract_strokes(
    graph: RegionGraph,
    junction_positions: list[tuple[float, float]],
    max_ink_thickness: int = DEFAULT_MAX_INK_THICKNESS,
) -> StrokeSet:
    """Group separating-ink pixels by region pair and chain them into strokes."""
    labels = graph.label_map.labels
    filled = graph.filled_labels
    if filled is None:
        _, _, _, filled = kernels.propagate_and_count_pairs(
            labels, _propagation_stages(max_ink_thickness)
        )
    rows = kernels.stroke_support(labels, filled)
    groups: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for y, x, r, s in rows:
        groups.setdefault((int(r), int(s)), set()).add((int(y), int(x)))

    strokes: list[Stroke] = []
    dropped = 0
    collapsed = 0
    sid = 0
    for pair in sorted(groups):
        thinned = _thin_group(groups[pair])
        collapsed += len(groups[pair]) - len(thinned)
        for walk in sorted(_order_chain(thinned), key=lambda w: w[0]):
            closed = _is_closed(walk)
            for seg in _split_at_junctions(walk, junction_positions):
                if len(seg) < 2:
                    dropped += 1
                    continue
                pts = np.array([(x, y) for y, x in seg], dtype=float)
                if closed and len(seg) == len(walk):
                    pts = np.vstack([pts, pts[:1]])
                sid += 1
                strokes.append(
                    Stroke(
                        id=sid,
                        points=pts,
                        region_pair=pair,
                        endpoints=_attach_endpoints(pts, junction_positions, closed),
                        closed=closed and len(seg) == len(walk),
                    )
                )

    ink_total = int(np.count_nonzero(labels == 0))
    support_total = int(rows.shape[0])
    return StrokeSet(
        strokes=strokes,
        diagnostics={
            "ink_pixels": ink_total,
            "separating_pixels": support_total,
            "collapsed_in_thinning": collapsed,
            "non_separating_ink": ink_total - support_total,
            "dropped_fragments": dropped,
        },
    )


def _attach_endpoints(pts: np.ndarray, junctions, closed: bool) -> tuple[int, int]:
    if closed or not junctions:
        return (OPEN, OPEN)
    jxy = np.asarray(junctions, float)
    out = []
    for p in (pts[0], pts[-1]):
        d = np.hypot(jxy[:, 0] - p[0], jxy[:, 1] - p[1])
        k = int(np.argmin(d))
        out.append(k if d[k] <= _ENDPOINT_ATTACH_DIST else OPEN)
    return (out[0], out[1])


def resample(points: np.ndarray, count: int) -> np.ndarray:
    """Resample a polyline to `count` points at equal arc-length intervals."""
    if count < 2:
        raise ParameterError(f"resample count must be >= 2, got {count}")
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] == 1:
        return np.repeat(pts, count, axis=0)
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    total = cum[-1]
    if total == 0.0:
        return np.repeat(pts[:1], count, axis=0)
    targets = np.linspace(0.0, total, count)
    out = np.empty((count, 2))
    out[0], out[-1] = pts[0], pts[-1]
    idx = np.searchsorted(cum, targets[1:-1], side="right") - 1
    idx = np.clip(idx, 0, seg.size - 1)
    denom = np.where(seg[idx] > 0, seg[idx], 1.0)
    frac = (targets[1:-1] - cum[idx]) / denom
    out[1:-1] = pts[idx] + (pts[idx + 1] - pts[idx]) * frac[:, None]
    return out


def _chord_angle_diff(a: Stroke, b: Stroke) -> float:
    va, vb = a.chord(), b.chord()
    na, nb = np.linalg.norm(va), np.linalg.norm(vb)
    if na == 0.0 and nb == 0.0:
        return 0.0
    if na == 0.0 or nb == 0.0:
        return 90.0
    cos = float(np.clip(np.dot(va, vb) / (na * nb), -1.0, 1.0))
    return math.degrees(math.acos(cos))


def _length_ratio(a: Stroke, b: Stroke) -> float:
    la, lb = a.arc_length, b.arc_length
    if la == 0.0 and lb == 0.0:
        return 1.0
    if la == 0.0 or lb == 0.0:
        return 0.0
    return min(la, lb) / max(la, lb)


def _aligned_pair(a: Stroke, b: Stroke, confidence: float) -> StrokePair:
    count = max(2, min(_MAX_RESAMPLE_POINTS, int(max(a.arc_length, b.arc_length) // _RESAMPLE_SPACING) + 2))
    va = resample(a.points, count)
    vb = resample(b.points, count)
    flipped = vb[::-1]
    if np.linalg.norm(va - flipped, axis=1).sum() < np.linalg.norm(va - vb, axis=1).sum():
        vb = np.ascontiguousarray(flipped)
    return StrokePair(a.id, b.id, va, vb, confidence)


def match_strokes(
    strokes_a: StrokeSet,
    strokes_b: StrokeSet,
    corr: Correspondence,
    pair_affinity: dict[tuple[int, int], float] | None = None,
) -> tuple[list[StrokePair], list[int], list[int]]:
    """Derive stroke pairs from the region correspondence.

    Strokes pair when their separating region pairs correspond (in either
    order). Within one region-pair group, chains match greedily by descending
    arc-length ratio, then closest chord direction, then ids. Returns
    (pairs, unmatched_a_ids, unmatched_b_ids).
    """
    amap = dict(corr.mapping())
    if corr.background_a is not None and corr.background_b is not None:
        amap[corr.background_a] = corr.background_b

    groups_b: dict[tuple[int, int], list[Stroke]] = {}
    for s in strokes_b.strokes:
        groups_b.setdefault(s.region_pair, []).append(s)

    groups_a: dict[tuple[int, int], list[Stroke]] = {}
    unmatched_a: list[int] = []
    for s in strokes_a.strokes:
        r, t = s.region_pair
        if r in amap and t in amap:
            key = tuple(sorted((amap[r], amap[t])))
            groups_a.setdefault(key, []).append(s)
        else:
            unmatched_a.append(s.id)

    pairs: list[StrokePair] = []
    used_b: set[int] = set()
    for key in sorted(groups_a):
        cand_b = groups_b.get(key, [])
        if not cand_b:
            unmatched_a.extend(s.id for s in groups_a[key])
            continue
        ranked = sorted(
            ((a, b) for a in groups_a[key] for b in cand_b),
            key=lambda ab: (-_length_ratio(*ab), _chord_angle_diff(*ab), ab[0].id, ab[1].id),
        )
        used_a_local: set[int] = set()
        for a, b in ranked:
            if a.id in used_a_local or b.id in used_b:
                continue
            used_a_local.add(a.id)
            used_b.add(b.id)
            conf = _length_ratio(a, b) * _group_affinity(key, corr, pair_affinity)
            pairs.append(_aligned_pair(a, b, conf))
        unmatched_a.extend(s.id for s in groups_a[key] if s.id not in used_a_local)

    unmatched_b = [s.id for s in strokes_b.strokes if s.id not in used_b]
    return pairs, sorted(unmatched_a), sorted(unmatched_b)


def _group_affinity(key_b, corr: Correspondence, pair_affinity) -> float:
    if not pair_affinity:
        return 1.0
    rev = corr.reverse_mapping()
    vals = []
    for bid in key_b:
        if corr.background_b is not None and bid == corr.background_b:
            continue
        aid = rev.get(bid)
        if aid is not None:
            vals.append(pair_affinity.get((aid, bid), 1.0))
    if not vals:
        return 1.0
    return float(np.sqrt(np.prod(vals))) if len(vals) == 2 else float(vals[0])


def interpolate(pairs: list[StrokePair], t: float) -> list[np.ndarray]:
    """Per-vertex linear blend of every stroke pair at time t in [0, 1]."""
    return [(1.0 - t) * p.vertices_a + t * p.vertices_b for p in pairs]
