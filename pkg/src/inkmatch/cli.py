"""Command line: one-shot keyframe matching, and the HTTP session server.

    inkmatch match A.png B.png --out results/ [--mode SCD] [--reference ref.json]
    inkmatch serve --port 8623 --store ./sessions

Exit codes for `match`: 0 success, 2 unreadable input, 3 no matchable regions.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import PipelineConfig, load_config_file
from .errors import FormatError, NoRegionsError, ParameterError
from .evaluation import EvalReport, area_match, line_match, mismatched_slots
from .pipeline import (
    analyze_keyframe,
    canonical_json,
    correspondence_dict,
    depth_dict,
    match_pair,
    stroke_pairs_dict,
    stroke_set_dict,
)
from .render import (
    encode_png,
    inbetween_svg,
    junction_overlay,
    label_overlay,
    stroke_overlay_svg,
)
from .session import reference_correspondence
from .strokes import interpolate


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="inkmatch", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", help="match two keyframes and write artifacts")
    m.add_argument("image_a", type=Path)
    m.add_argument("image_b", type=Path)
    m.add_argument("--out", type=Path, required=True, help="output directory")
    m.add_argument("--config", type=Path, help="key = value config file")
    m.add_argument("--mode", choices=["SCD", "SC", "S"], help="override matching mode")
    m.add_argument("--score-rule", choices=["LITERAL", "SIMPLIFIED"], dest="score_rule")
    m.add_argument("--reference", type=Path, help="JSON with region_pairs (and optional stroke_pairs)")
    m.add_argument("--inbetweens", type=int, default=0, metavar="N", help="write N inbetween SVG frames")
    m.add_argument("--debug", action="store_true", help="also write label/junction/depth debug artifacts")

    s = sub.add_parser("serve", help="run the HTTP session service")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=8623)
    s.add_argument("--store", type=Path, help="session store directory (or INKMATCH_STORE)")
    s.add_argument("--ui", type=Path, help="static UI directory to mount at /ui")
    s.add_argument("--restore", action="store_true", help="restore persisted sessions at startup")
    return parser


def _load_pipeline_config(args) -> PipelineConfig:
    cfg = load_config_file(args.config) if args.config else PipelineConfig()
    overrides = {}
    if args.mode:
        overrides["mode"] = args.mode
    if args.score_rule:
        overrides["score_rule"] = args.score_rule
    if overrides:
        from dataclasses import replace

        cfg = replace(cfg, **overrides)
    return cfg


def _cmd_match(args) -> int:
    try:
        cfg = _load_pipeline_config(args)
    except (ParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        data_a = args.image_a.read_bytes()
        data_b = args.image_b.read_bytes()
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 2
    try:
        ka = analyze_keyframe(data_a, cfg)
        kb = analyze_keyframe(data_b, cfg)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = match_pair(ka, kb, cfg)
    except NoRegionsError as exc:
        regions = (len(ka.graph.non_background_ids()), len(kb.graph.non_background_ids()))
        print(
            f"error: {exc} (non-background regions: A={regions[0]}, B={regions[1]})",
            file=sys.stderr,
        )
        return 3

    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    _write(out / "correspondence.json", correspondence_dict(result.correspondence, result.state, cfg))
    _write(out / "stroke_pairs.json", stroke_pairs_dict(result))
    _write(out / "strokes_a.json", stroke_set_dict(ka.strokes))
    _write(out / "strokes_b.json", stroke_set_dict(kb.strokes))
    corr = result.correspondence
    (out / "overlay_a.png").write_bytes(encode_png(label_overlay(ka.graph, corr, "a")))
    (out / "overlay_b.png").write_bytes(encode_png(label_overlay(kb.graph, corr, "b")))
    (out / "strokes.svg").write_text(
        stroke_overlay_svg(ka.strokes, kb.strokes, result.stroke_pairs, ka.graph.source_dims),
        encoding="utf-8",
    )
    if args.inbetweens > 0:
        frames_dir = out / "inbetweens"
        frames_dir.mkdir(exist_ok=True)
        for k in range(1, args.inbetweens + 1):
            t = k / (args.inbetweens + 1)
            svg = inbetween_svg(interpolate(result.stroke_pairs, t), ka.graph.source_dims)
            (frames_dir / f"frame_{k:03d}.svg").write_text(svg, encoding="utf-8")
    if args.debug:
        (out / "labels_a.png").write_bytes(encode_png(label_overlay(ka.graph)))
        (out / "labels_b.png").write_bytes(encode_png(label_overlay(kb.graph)))
        (out / "junctions_a.png").write_bytes(encode_png(junction_overlay(ka.graph, ka.junctions)))
        (out / "junctions_b.png").write_bytes(encode_png(junction_overlay(kb.graph, kb.junctions)))
        _write(out / "depth_a.json", depth_dict(ka.depth, ka.junctions))
        _write(out / "depth_b.json", depth_dict(kb.depth, kb.junctions))
    if args.reference:
        try:
            ref_data = json.loads(args.reference.read_text(encoding="utf-8"))
            region_pairs = [(int(a), int(b)) for a, b in ref_data["region_pairs"]]
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            print(f"error: bad reference file: {exc}", file=sys.stderr)
            return 2
        ref_corr = reference_correspondence(ka.graph, kb.graph, region_pairs)
        n = len(ka.graph.non_background_ids())
        m = len(kb.graph.non_background_ids())
        am = area_match(corr, ref_corr, n, m)
        lm = None
        if "stroke_pairs" in ref_data:
            ref_strokes = [(int(a), int(b)) for a, b in ref_data["stroke_pairs"]]
            auto_strokes = [(p.stroke_a, p.stroke_b) for p in result.stroke_pairs]
            an = len(ka.strokes.strokes)
            bn = len(kb.strokes.strokes)
            lm = line_match(auto_strokes, ref_strokes, an, bn)
        report = EvalReport(am, lm, 0, mismatched_slots(corr, ref_corr))
        _write(out / "eval.json", report.to_json_dict())
        (out / "eval.txt").write_text(report.to_text() + "\n", encoding="utf-8")
        print(report.to_text())
    print(f"matched {len(corr.pairs)} region pairs, {len(result.stroke_pairs)} stroke pairs -> {out}")
    return 0


def _write(path: Path, obj) -> None:
    path.write_text(canonical_json(obj), encoding="utf-8")


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    from .session import SessionManager

    manager = SessionManager(args.store) if args.store else None
    ui = args.ui if args.ui else None
    app = create_app(manager, ui_dir=ui)
    if args.restore and manager is not None:
        restored = manager.restore_all()
        if restored:
            print(f"restored sessions: {', '.join(restored)}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "match":
        return _cmd_match(args)
    return _cmd_serve(args)


if __name__ == "__main__":
    sys.exit(main())
