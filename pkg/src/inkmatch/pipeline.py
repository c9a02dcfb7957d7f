"""End-to-end analysis of a keyframe pair, plus the JSON wire formats."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .config import PipelineConfig
from .depth import DepthGraph, Junction, compute_depth
from .labeling import RegionGraph, build_region_graph
from .matching import Correspondence, ScoreState, greedy_match
from .raster import RasterImage, load_grayscale
from .strokes import StrokePair, StrokeSet, extract_strokes, match_strokes

SCHEMA_VERSION = 1


@dataclass
class KeyframeAnalysis:
    raster: RasterImage
    graph: RegionGraph
    junctions: list[Junction]
    depth: DepthGraph
    strokes: StrokeSet


@dataclass
class MatchResult:
    correspondence: Correspondence
    state: ScoreState
    stroke_pairs: list[StrokePair]
    unmatched_strokes_a: list[int]
    unmatched_strokes_b: list[int]


def analyze_keyframe(source, cfg: PipelineConfig = PipelineConfig()) -> KeyframeAnalysis:
    """Ingest one keyframe: label, depth-rank and stroke-split it."""
    if isinstance(source, RasterImage):
        raster = source
    elif isinstance(source, (bytes, bytearray)):
        raster = load_grayscale(bytes(source))
    else:
        raster = RasterImage(np.asarray(source, dtype=np.uint8))
    graph = build_region_graph(
        raster,
        median_kernel=cfg.kernel,
        threshold=cfg.threshold,
        min_region_area=cfg.min_region_area,
        max_ink_thickness=cfg.max_ink_thickness,
    )
    junctions, depth = compute_depth(graph, cfg.junction_reach)
    strokes = extract_strokes(graph, [j.position for j in junctions], cfg.max_ink_thickness)
    return KeyframeAnalysis(raster, graph, junctions, depth, strokes)


def match_pair(
    ka: KeyframeAnalysis,
    kb: KeyframeAnalysis,
    cfg: PipelineConfig = PipelineConfig(),
    pins=(),
) -> MatchResult:
    """Region correspondence followed by stroke correspondence."""
    corr, state = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg.match_config(), pins)
    affinity = {(p.a, p.b): state.tentative(p.a, p.b) for p in corr.pairs}
    pairs, ua, ub = match_strokes(ka.strokes, kb.strokes, corr, affinity)
    return MatchResult(corr, state, pairs, ua, ub)


# ---------------------------------------------------------------------------
# wire formats
# ---------------------------------------------------------------------------


def canonical_json(obj) -> str:
    """Stable serialization used for hashing and byte-identical outputs."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def correspondence_dict(corr: Correspondence, state: ScoreState, cfg: PipelineConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "mode": cfg.mode,
        "config": cfg.to_dict(),
        "pairs": [
            {"a": p.a, "b": p.b, "provenance": p.provenance, "score": p.score}
            for p in corr.pairs
        ],
        "unmatched_a": list(corr.unmatched_a),
        "unmatched_b": list(corr.unmatched_b),
        "seed_history": [[a, b] for a, b in state.seed_history],
        "background_a": corr.background_a,
        "background_b": corr.background_b,
    }


def correspondence_hash(corr_dict: dict) -> str:
    return hashlib.sha256(canonical_json(corr_dict).encode()).hexdigest()


def stroke_set_dict(strokes: StrokeSet) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "strokes": [
            {
                "id": s.id,
                "region_pair": list(s.region_pair),
                "closed": s.closed,
                "endpoints": list(s.endpoints),
                "points": [[float(x), float(y)] for x, y in s.points],
            }
            for s in strokes.strokes
        ],
        "diagnostics": strokes.diagnostics,
    }


def stroke_pairs_dict(result: MatchResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "pairs": [
            {
                "a": p.stroke_a,
                "b": p.stroke_b,
                "confidence": p.confidence,
                "vertices_a": [[float(x), float(y)] for x, y in p.vertices_a],
                "vertices_b": [[float(x), float(y)] for x, y in p.vertices_b],
            }
            for p in result.stroke_pairs
        ],
        "unmatched_a": result.unmatched_strokes_a,
        "unmatched_b": result.unmatched_strokes_b,
    }


def depth_dict(depth: DepthGraph, junctions: list[Junction]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "ranks": {str(k): v for k, v in sorted(depth.rank.items())},
        "votes": [[f, b, w] for (f, b), w in sorted(depth.votes.items())],
        "background": depth.background_id,
        "junctions": [
            {
                "x": j.position[0],
                "y": j.position[1],
                "radius": j.radius,
                "incident": list(j.incident_regions),
                "coverage": {str(k): v for k, v in sorted(j.coverage.items())},
                "ink_fraction": j.ink_fraction,
            }
            for j in junctions
        ],
    }


def regions_dict(graph: RegionGraph) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "width": graph.source_dims[0],
        "height": graph.source_dims[1],
        "regions": [
            {
                "id": r.id,
                "area": r.area,
                "centroid": [r.centroid[0], r.centroid[1]],
                "border_contact": r.border_contact,
                "is_background": r.is_background,
                "color": "#%02x%02x%02x" % r.display_color,
                "neighbors": [
                    {"id": nb.id, "angle": nb.angle, "shared_length": nb.shared_length}
                    for nb in r.neighbors
                ],
            }
            for r in graph.regions
        ],
    }
