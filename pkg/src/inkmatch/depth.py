"""Front/behind ordering of regions from junction-centered circles.

At a T-junction the occluding region's silhouette runs continuously through
the junction, so the occluder dominates a small disc centered there: each
junction votes its max-coverage region "in front of" the other incident
regions, and ranks come from peeling the resulting weighted digraph.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .labeling import LabelMap, RegionGraph

MIN_RADIUS = 3.0


class Depth(enum.Enum):
    FRONT = "FRONT"
    BEHIND = "BEHIND"
    EQUAL = "EQUAL"


@dataclass(frozen=True)
class Junction:
    position: tuple[float, float]  # (x, y)
    incident_regions: tuple[int, ...]
    radius: float
    coverage: dict[int, float]
    ink_fraction: float


@dataclass
class DepthGraph:
    votes: dict[tuple[int, int], float]  # (front, behind) -> accumulated weight
    rank: dict[int, int]  # region id -> depth layer, 0 = frontmost
    background_id: int | None = None


def junction_radius(dims: tuple[int, int], background_area: int) -> float:
    """sqrt(2 * (screen - background) / 10000), clamped for tiny characters."""
    w, h = dims
    return max(MIN_RADIUS, math.sqrt(2.0 * (w * h - background_area) / 10000.0))


def _cluster_points(points: np.ndarray, max_dist: float) -> list[np.ndarray]:
    """Single-linkage clusters of (y, x) rows within max_dist of each other."""
    n = points.shape[0]
    if n == 0:
        return []
    cell = max(1, math.ceil(max_dist))
    grid: dict[tuple[int, int], list[int]] = {}
    for i in range(n):
        grid.setdefault((int(points[i, 0]) // cell, int(points[i, 1]) // cell), []).append(i)
    seen = np.zeros(n, bool)
    d2 = max_dist * max_dist
    clusters = []
    for i in range(n):
        if seen[i]:
            continue
        seen[i] = True
        stack = [i]
        members = [i]
        while stack:
            j = stack.pop()
            gy, gx = int(points[j, 0]) // cell, int(points[j, 1]) // cell
            for ny in (gy - 1, gy, gy + 1):
                for nx in (gx - 1, gx, gx + 1):
                    for k in grid.get((ny, nx), ()):
                        if seen[k]:
                            continue
                        dy = float(points[k, 0] - points[j, 0])
                        dx = float(points[k, 1] - points[j, 1])
                        if dy * dy + dx * dx <= d2:
                            seen[k] = True
                            stack.append(k)
                            members.append(k)
        clusters.append(points[np.array(sorted(members))])
    return clusters


# Ink pixels must see three regions to count as a junction candidate. The
# default reach covers strokes a few pixels thick whose meeting corners the
# median filter has rounded; thin 1-px line art works with reach 2 (a 5x5
# window).
DEFAULT_JUNCTION_REACH = 4


def detect_junctions(
    label_map: LabelMap,
    radius: float,
    reach: int = DEFAULT_JUNCTION_REACH,
    merge_factor: float = 2.0,
) -> list[tuple[float, float]]:
    """Junction centers: ink pixels seeing >= 3 regions, deduped within
    merge_factor * radius of each other (single linkage)."""
    cand = kernels.junction_candidates(label_map.labels, reach)
    centers = []
    for members in _cluster_points(cand, merge_factor * radius):
        cy = float(members[:, 0].mean())
        cx = float(members[:, 1].mean())
        centers.append((cx, cy))
    centers.sort(key=lambda p: (p[1], p[0]))
    return centers


def coverage_ratios(
    center: tuple[float, float], label_map: LabelMap, radius: float
) -> tuple[dict[int, float], float]:
    """Fraction of in-bounds disc pixels per region id, plus the ink fraction."""
    cx, cy = center
    h, w = label_map.labels.shape
    y0 = max(0, math.floor(cy - radius))
    y1 = min(h - 1, math.ceil(cy + radius))
    x0 = max(0, math.floor(cx - radius))
    x1 = min(w - 1, math.ceil(cx + radius))
    if y1 < y0 or x1 < x0:
        return {}, 0.0
    ys, xs = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
    inside = (xs - cx) ** 2 + (ys - cy) ** 2 <= radius * radius
    values = label_map.labels[y0 : y1 + 1, x0 : x1 + 1][inside]
    total = values.size
    if total == 0:
        return {}, 0.0
    counts = np.bincount(values)
    cov = {int(i): float(counts[i]) / total for i in np.nonzero(counts)[0] if i != 0}
    ink = float(counts[0]) / total if counts.size else 0.0
    return cov, ink


def find_junctions(
    graph: RegionGraph, radius: float, reach: int = DEFAULT_JUNCTION_REACH
) -> list[Junction]:
    """Detect, dedupe and characterize junctions of one keyframe."""
    out = []
    for center in detect_junctions(graph.label_map, radius, reach):
        cov, ink = coverage_ratios(center, graph.label_map, radius)
        incident = tuple(sorted(cov))
        if len(incident) < 3:
            continue
        out.append(Junction(center, incident, radius, cov, ink))
    return out


def build_depth_graph(
    junctions: list[Junction], region_ids: list[int], background_id: int | None
) -> DepthGraph:
    """Accumulate per-junction front votes and peel them into depth layers."""
    votes: dict[tuple[int, int], float] = {}
    for j in junctions:
        voters = [rid for rid in j.incident_regions if rid != background_id]
        if len(voters) < 2:
            continue
        front = max(voters, key=lambda rid: (j.coverage[rid], -rid))
        for other in voters:
            if other != front:
                key = (front, other)
                votes[key] = votes.get(key, 0.0) + 1.0
    rank = _peel_ranks([rid for rid in region_ids if rid != background_id], votes)
    if background_id is not None:
        rank[background_id] = (max(rank.values()) + 1) if rank else 0
    return DepthGraph(votes=votes, rank=rank, background_id=background_id)


def _peel_ranks(vertices: list[int], votes: dict[tuple[int, int], float]) -> dict[int, int]:
    edges = {e: w for e, w in votes.items() if e[0] in set(vertices) and e[1] in set(vertices)}
    indeg = {v: 0 for v in vertices}
    for _, b in edges:
        indeg[b] += 1
    remaining = set(vertices)
    rank: dict[int, int] = {}
    layer = 0
    while remaining:
        sources = sorted(v for v in remaining if indeg[v] == 0)
        if not sources:
            # cycle: drop the globally lightest edge, ties to smaller ids
            w, f, b = min((w, f, b) for (f, b), w in edges.items())
            del edges[(f, b)]
            indeg[b] -= 1
            continue
        for v in sources:
            rank[v] = layer
            remaining.discard(v)
            for f, b in list(edges):
                if f == v:
                    del edges[(f, b)]
                    if b in remaining:
                        indeg[b] -= 1
        layer += 1
    return rank


def compute_depth(
    graph: RegionGraph, reach: int = DEFAULT_JUNCTION_REACH
) -> tuple[list[Junction], DepthGraph]:
    """Junctions plus depth ranks for one labeled keyframe."""
    bg = graph.background_id
    if bg is None:
        return [], DepthGraph(votes={}, rank={}, background_id=None)
    r = junction_radius(graph.source_dims, graph.region(bg).area)
    junctions = find_junctions(graph, r, reach)
    return junctions, build_depth_graph(junctions, [reg.id for reg in graph.regions], bg)


def relative_depth(graph: DepthGraph, r: int, s: int) -> Depth:
    """FRONT when r is strictly nearer the viewer than s."""
    ra, rb = graph.rank[r], graph.rank[s]
    if ra < rb:
        return Depth.FRONT
    if ra > rb:
        return Depth.BEHIND
    return Depth.EQUAL
