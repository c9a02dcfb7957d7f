"""Labeled region graphs: components, properties, adjacency, background.

A binarized keyframe is partitioned into 4-connected closed areas separated
by ink. Region ids are 1..n in raster first-encounter order; 0 is ink.
Adjacency is ink-mediated: two regions are neighbors when some ink pixel
sees both within a 3x3 window, with region labels dilated across thicker
ink (up to a configured maximum thickness) so heavy strokes still register.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from . import kernels
from .raster import RasterImage, binarize, median_denoise

INK = 0

DEFAULT_MIN_REGION_AREA = 10
DEFAULT_MAX_INK_THICKNESS = 8


@dataclass(frozen=True)
class LabelMap:
    labels: np.ndarray  # int32 (h, w); INK == 0, region ids contiguous 1..n

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]


@dataclass(frozen=True)
class Neighbor:
    id: int
    angle: float  # degrees [0, 360), centroid-to-centroid, image y grows down
    shared_length: int  # ink pixels that see both regions


@dataclass
class Region:
    id: int
    area: int
    centroid: tuple[float, float]  # (x, y)
    border_contact: int
    is_background: bool = False
    neighbors: list[Neighbor] = field(default_factory=list)
    display_color: tuple[int, int, int] = (0, 0, 0)
    bbox: tuple[int, int, int, int] = (0, 0, 0, 0)  # x0, y0, x1, y1 (exclusive)


@dataclass
class RegionGraph:
    regions: list[Region]
    label_map: LabelMap
    source_dims: tuple[int, int]  # (width, height)
    filled_labels: np.ndarray | None = None  # ink pixels carry nearest region id

    def __post_init__(self):
        self._by_id = {r.id: r for r in self.regions}

    def region(self, rid: int) -> Region:
        return self._by_id[rid]

    def has_region(self, rid: int) -> bool:
        return rid in self._by_id

    @property
    def background_id(self) -> int | None:
        for r in self.regions:
            if r.is_background:
                return r.id
        return None

    def non_background_ids(self) -> list[int]:
        return [r.id for r in self.regions if not r.is_background]

    def region_mask(self, rid: int) -> np.ndarray:
        """Boolean mask of the region cropped to its bounding box."""
        x0, y0, x1, y1 = self.region(rid).bbox
        return self.label_map.labels[y0:y1, x0:x1] == rid


def region_color(rid: int) -> tuple[int, int, int]:
    """Deterministic palette: golden-ratio hue walk over region ids."""
    hue = (rid * 0.6180339887498949) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 0.62, 0.95)
    return (round(r * 255), round(g * 255), round(b * 255))


def _region_stats(labels: np.ndarray, n: int):
    h, w = labels.shape
    flat = labels.ravel()
    areas = np.bincount(flat, minlength=n + 1)[1:]
    xs = np.tile(np.arange(w, dtype=np.float64), h)
    ys = np.repeat(np.arange(h, dtype=np.float64), w)
    cx = np.bincount(flat, weights=xs, minlength=n + 1)[1:] / np.maximum(areas, 1)
    cy = np.bincount(flat, weights=ys, minlength=n + 1)[1:] / np.maximum(areas, 1)
    border = np.zeros((h, w), bool)
    border[0, :] = border[-1, :] = True
    border[:, 0] = border[:, -1] = True
    contact = np.bincount(flat[border.ravel()], minlength=n + 1)[1:]
    return areas, cx, cy, contact


def label_components(mask: np.ndarray) -> tuple[LabelMap, list[Region]]:
    """Partition True pixels into 4-connected regions with basic properties."""
    labels, n = kernels.label_components_4(mask)
    label_map = LabelMap(labels)
    if n == 0:
        return label_map, []
    areas, cx, cy, contact = _region_stats(labels, n)
    regions = [
        Region(
            id=i + 1,
            area=int(areas[i]),
            centroid=(float(cx[i]), float(cy[i])),
            border_contact=int(contact[i]),
        )
        for i in range(n)
    ]
    return label_map, regions


def detect_background(regions: list[Region], dims: tuple[int, int]) -> int:
    """Region touching the most border pixels; ties: larger area, smaller id."""
    if not regions:
        raise ValueError("no regions")
    best = max(regions, key=lambda r: (r.border_contact, r.area, -r.id))
    return best.id


def _propagation_stages(max_ink_thickness: int) -> int:
    return max(0, (max_ink_thickness + 1) // 2)


def build_adjacency(
    label_map: LabelMap, max_ink_thickness: int = DEFAULT_MAX_INK_THICKNESS
) -> tuple[dict[tuple[int, int], int], np.ndarray]:
    """Unordered neighbor pairs with shared ink-boundary lengths.

    Also returns the propagated label map (ink replaced by the label that
    reached it first, ties to the smaller id) for reuse by stroke extraction.
    """
    stages = _propagation_stages(max_ink_thickness)
    r, s, counts, filled = kernels.propagate_and_count_pairs(label_map.labels, stages)
    pairs = {(int(a), int(b)): int(c) for a, b, c in zip(r, s, counts)}
    return pairs, filled


def centroid_angle(src: tuple[float, float], dst: tuple[float, float]) -> float:
    """Direction src -> dst in degrees [0, 360); image y axis points down."""
    return math.degrees(math.atan2(dst[1] - src[1], dst[0] - src[0])) % 360.0


def _merge_small_regions(
    labels: np.ndarray, n: int, min_area: int, max_ink_thickness: int
) -> tuple[np.ndarray, int]:
    """Fold regions below min_area into their largest neighbor, repeatedly."""
    if min_area <= 0 or n == 0:
        return labels, n
    areas = np.bincount(labels.ravel(), minlength=n + 1).astype(np.int64)
    if not (areas[1:][areas[1:] > 0] < min_area).any():
        return labels, n
    r, s, _, _ = kernels.propagate_and_count_pairs(labels, _propagation_stages(max_ink_thickness))
    nbrs: dict[int, set[int]] = {i: set() for i in range(1, n + 1)}
    for a, b in zip(r, s):
        nbrs[int(a)].add(int(b))
        nbrs[int(b)].add(int(a))
    alive = set(range(1, n + 1))
    merged_any = False
    while True:
        candidates = sorted(
            (rid for rid in alive if 0 < areas[rid] < min_area and nbrs[rid]),
            key=lambda rid: (areas[rid], rid),
        )
        if not candidates:
            break
        victim = candidates[0]
        target = max(nbrs[victim], key=lambda t: (areas[t], -t))
        labels[labels == victim] = target
        areas[target] += areas[victim]
        areas[victim] = 0
        for other in nbrs[victim]:
            nbrs[other].discard(victim)
            if other != target:
                nbrs[other].add(target)
                nbrs[target].add(other)
        nbrs[target].discard(target)
        nbrs[victim] = set()
        alive.discard(victim)
        merged_any = True
    if not merged_any:
        return labels, n
    return kernels._relabel_first_encounter(labels)


def build_region_graph(
    raster: RasterImage,
    *,
    median_kernel: int = 5,
    threshold: int = 220,
    min_region_area: int = DEFAULT_MIN_REGION_AREA,
    max_ink_thickness: int = DEFAULT_MAX_INK_THICKNESS,
) -> RegionGraph:
    """Full ingest: denoise, binarize, label, merge specks, adjacency, background."""
    den = median_denoise(raster, median_kernel)
    mask = binarize(den, threshold)
    labels, n = kernels.label_components_4(mask)
    labels, n = _merge_small_regions(labels, n, min_region_area, max_ink_thickness)
    label_map = LabelMap(labels)
    dims = (raster.width, raster.height)
    if n == 0:
        return RegionGraph(regions=[], label_map=label_map, source_dims=dims)

    areas, cx, cy, contact = _region_stats(labels, n)
    slices = ndimage.find_objects(labels, max_label=n)
    regions = []
    for i in range(n):
        sl = slices[i]
        bbox = (sl[1].start, sl[0].start, sl[1].stop, sl[0].stop) if sl else (0, 0, 0, 0)
        regions.append(
            Region(
                id=i + 1,
                area=int(areas[i]),
                centroid=(float(cx[i]), float(cy[i])),
                border_contact=int(contact[i]),
                display_color=region_color(i + 1),
                bbox=bbox,
            )
        )

    pairs, filled = build_adjacency(label_map, max_ink_thickness)
    by_id = {r.id: r for r in regions}
    for (a, b), length in sorted(pairs.items()):
        ra, rb = by_id[a], by_id[b]
        ra.neighbors.append(Neighbor(b, centroid_angle(ra.centroid, rb.centroid), length))
        rb.neighbors.append(Neighbor(a, centroid_angle(rb.centroid, ra.centroid), length))
    for r in regions:
        r.neighbors.sort(key=lambda nb: nb.id)

    bg = detect_background(regions, dims)
    by_id[bg].is_background = True
    return RegionGraph(regions=regions, label_map=label_map, source_dims=dims, filled_labels=filled)
