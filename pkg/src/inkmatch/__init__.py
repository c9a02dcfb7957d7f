"""Closed-area and stroke correspondence between raster line-art keyframes."""

from .config import PipelineConfig, load_config_file, parse_config_text
from .depth import Depth, DepthGraph, Junction, junction_radius, relative_depth
from .errors import (
    FormatError,
    InkmatchError,
    MetricUndefinedError,
    NoRegionsError,
    ParameterError,
    PinConflictError,
    RestoreError,
)
from .evaluation import EvalReport, area_match, count_corrections, line_match
from .labeling import LabelMap, Region, RegionGraph, build_region_graph
from .matching import (
    Correspondence,
    CorrPair,
    MatchConfig,
    ScoreState,
    area_ratio,
    greedy_match,
    rematch_with_pins,
    seed_scores,
)
from .pipeline import KeyframeAnalysis, MatchResult, analyze_keyframe, match_pair
from .raster import RasterImage, binarize, load_grayscale, median_denoise
from .strokes import Stroke, StrokePair, StrokeSet, extract_strokes, interpolate, match_strokes, resample

__version__ = "0.1.0"

__all__ = [
    "PipelineConfig",
    "load_config_file",
    "parse_config_text",
    "Depth",
    "DepthGraph",
    "Junction",
    "junction_radius",
    "relative_depth",
    "InkmatchError",
    "FormatError",
    "ParameterError",
    "NoRegionsError",
    "PinConflictError",
    "MetricUndefinedError",
    "RestoreError",
    "EvalReport",
    "area_match",
    "line_match",
    "count_corrections",
    "LabelMap",
    "Region",
    "RegionGraph",
    "build_region_graph",
    "Correspondence",
    "CorrPair",
    "MatchConfig",
    "ScoreState",
    "area_ratio",
    "greedy_match",
    "rematch_with_pins",
    "seed_scores",
    "KeyframeAnalysis",
    "MatchResult",
    "analyze_keyframe",
    "match_pair",
    "RasterImage",
    "load_grayscale",
    "median_denoise",
    "binarize",
    "Stroke",
    "StrokePair",
    "StrokeSet",
    "extract_strokes",
    "match_strokes",
    "resample",
    "interpolate",
    "__version__",
]
