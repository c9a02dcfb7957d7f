import json

import numpy as np
import pytest

from inkmatch import synth
from inkmatch.cli import main

from _util import to_png


@pytest.fixture()
def pngs(tmp_path):
    scene = synth.compass_scene(51)
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    a.write_bytes(to_png(scene.image_a))
    b.write_bytes(to_png(scene.image_b))
    return a, b


def test_match_identical_files_reports_100(tmp_path, pngs, capsys):
    a, _ = pngs
    out = tmp_path / "out"
    # a reference mapping every region to itself, derived from the output ids
    rc = main(["match", str(a), str(a), "--out", str(out)])
    assert rc == 0
    corr = json.loads((out / "correspondence.json").read_text())
    ref = {"region_pairs": [[p["a"], p["b"]] for p in corr["pairs"]]}
    ref_path = tmp_path / "ref.json"
    ref_path.write_text(json.dumps(ref))
    rc = main(["match", str(a), str(a), "--out", str(out), "--reference", str(ref_path)])
    assert rc == 0
    report = json.loads((out / "eval.json").read_text())
    assert report["area_match"] == 100.0
    text = capsys.readouterr().out
    assert "AreaMatch" in text and "100.000" in text


def test_match_writes_artifacts(tmp_path, pngs):
    a, b = pngs
    out = tmp_path / "out"
    rc = main([
        "match", str(a), str(b), "--out", str(out),
        "--inbetweens", "2", "--debug", "--mode", "SCD",
    ])
    assert rc == 0
    for name in (
        "correspondence.json", "stroke_pairs.json", "strokes_a.json", "strokes_b.json",
        "overlay_a.png", "overlay_b.png", "strokes.svg",
        "labels_a.png", "junctions_a.png", "depth_a.json",
    ):
        assert (out / name).exists(), name
    assert (out / "inbetweens" / "frame_001.svg").exists()
    assert (out / "inbetweens" / "frame_002.svg").exists()
    corr = json.loads((out / "correspondence.json").read_text())
    assert corr["schema_version"] == 1
    assert corr["mode"] == "SCD"


def test_match_missing_file_exit_2(tmp_path, pngs):
    a, _ = pngs
    rc = main(["match", str(a), str(tmp_path / "missing.png"), "--out", str(tmp_path / "o")])
    assert rc == 2


def test_match_undecodable_exit_2(tmp_path):
    bad = tmp_path / "bad.png"
    bad.write_bytes(b"not a png at all")
    rc = main(["match", str(bad), str(bad), "--out", str(tmp_path / "o")])
    assert rc == 2


def test_match_zero_regions_exit_3(tmp_path):
    ink = tmp_path / "ink.png"
    ink.write_bytes(to_png(np.zeros((64, 64), np.uint8)))
    rc = main(["match", str(ink), str(ink), "--out", str(tmp_path / "o")])
    assert rc == 3


def test_match_with_config_file(tmp_path, pngs):
    a, b = pngs
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("mode = S\nthreshold = 200\n")
    out = tmp_path / "out"
    rc = main(["match", str(a), str(b), "--out", str(out), "--config", str(cfg)])
    assert rc == 0
    corr = json.loads((out / "correspondence.json").read_text())
    assert corr["mode"] == "S"
    assert corr["config"]["threshold"] == 200


def test_match_deterministic_output_bytes(tmp_path, pngs):
    a, b = pngs
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    assert main(["match", str(a), str(b), "--out", str(out1)]) == 0
    assert main(["match", str(a), str(b), "--out", str(out2)]) == 0
    assert (out1 / "correspondence.json").read_bytes() == (out2 / "correspondence.json").read_bytes()
    assert (out1 / "stroke_pairs.json").read_bytes() == (out2 / "stroke_pairs.json").read_bytes()
