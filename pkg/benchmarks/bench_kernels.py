#!/usr/bin/env python3
"""Benchmark the jitted kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--size 1024] [--repeat 3]

Times each hot kernel on a synthetic line-art frame of the given size, plus
the end-to-end pipeline under both backends. The first jitted call compiles
(or loads the on-disk cache); a warmup pass keeps that out of the numbers.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from inkmatch import PipelineConfig, analyze_keyframe, kernels, match_pair, synth
from inkmatch.raster import RasterImage, binarize, median_denoise


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=1024)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if not kernels._HAVE_NUMBA:
        print("numba not importable; nothing to compare")
        return 1

    scene = synth.rooms_scene(7, rows=7, cols=8, size=args.size)
    img = scene.image_a
    raster = RasterImage(img)

    kernels.set_backend(True)
    kernels.warmup()
    den = median_denoise(raster, 5)
    mask = binarize(den)
    labels, _ = kernels.label_components_4(mask)
    _, _, _, filled = kernels.propagate_and_count_pairs(labels, 4)

    cases = [
        ("median 5x5", lambda: kernels.median_filter_u8(img, 5)),
        ("label 4-conn", lambda: kernels.label_components_4(mask)),
        ("propagate+pairs", lambda: kernels.propagate_and_count_pairs(labels, 4)),
        ("stroke support", lambda: kernels.stroke_support(labels, filled)),
        ("junction cands", lambda: kernels.junction_candidates(labels, 4)),
    ]

    print(f"frame {args.size}x{args.size}, best of {args.repeat}\n")
    print(f"{'kernel':<18} {'numba':>10} {'numpy':>10} {'speedup':>9}")
    print("-" * 51)
    for name, fn in cases:
        kernels.set_backend(True)
        t_nb = best_of(fn, args.repeat)
        kernels.set_backend(False)
        t_np = best_of(fn, args.repeat)
        print(f"{name:<18} {t_nb * 1000:>8.1f}ms {t_np * 1000:>8.1f}ms {t_np / t_nb:>8.1f}x")

    cfg = PipelineConfig()

    def full_pipeline():
        ka = analyze_keyframe(scene.image_a, cfg)
        kb = analyze_keyframe(scene.image_b, cfg)
        match_pair(ka, kb, cfg)

    kernels.set_backend(True)
    t_nb = best_of(full_pipeline, max(1, args.repeat - 1))
    kernels.set_backend(False)
    t_np = best_of(full_pipeline, max(1, args.repeat - 1))
    kernels.set_backend(True)
    print("-" * 51)
    print(f"{'full pipeline':<18} {t_nb * 1000:>8.0f}ms {t_np * 1000:>8.0f}ms {t_np / t_nb:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
