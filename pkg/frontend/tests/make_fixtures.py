#!/usr/bin/env python3
"""Write the seeded UI-test fixtures: a keyframe pair with one known swap.

Usage: python3 make_fixtures.py OUTDIR

Emits a.png, b.png and ref.json ({"region_pairs": [[a, b], ...]}). Under the
default config the matcher swaps exactly one region duo on this pair, which
the two-click pin flow must fix.
"""

import json
import sys
from pathlib import Path

from PIL import Image

from inkmatch import PipelineConfig, analyze_keyframe, synth


def main() -> int:
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    scene = synth.badge_scene(77, flip=True)
    Image.fromarray(scene.image_a).save(out / "a.png")
    Image.fromarray(scene.image_b).save(out / "b.png")
    cfg = PipelineConfig()
    ka = analyze_keyframe(scene.image_a, cfg)
    kb = analyze_keyframe(scene.image_b, cfg)
    truth = synth.derive_truth(ka.graph, kb.graph, scene.probes)
    (out / "ref.json").write_text(json.dumps({"region_pairs": [list(p) for p in truth]}))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
