import pytest

from inkmatch.config import PipelineConfig, config_from_dict, load_config_file, parse_config_text
from inkmatch.errors import ParameterError


def test_defaults():
    cfg = PipelineConfig()
    assert cfg.threshold == 220
    assert cfg.kernel == 5
    assert cfg.min_region_area == 10
    assert cfg.angle_const_a == 180.0
    assert cfg.situation_const_s == 1.0
    assert cfg.mode == "SCD"
    assert cfg.score_rule == "LITERAL"


def test_parse_key_value_text():
    cfg = parse_config_text(
        """
        # comment line
        threshold = 200
        kernel = 3
        a = 120       # trailing comment
        s = 2
        mode = sc
        score_rule = simplified
        min_region_area = 0
        """
    )
    assert cfg.threshold == 200
    assert cfg.kernel == 3
    assert cfg.angle_const_a == 120.0
    assert cfg.situation_const_s == 2.0
    assert cfg.mode == "SC"
    assert cfg.score_rule == "SIMPLIFIED"
    assert cfg.min_region_area == 0


def test_unknown_key_rejected():
    with pytest.raises(ParameterError):
        parse_config_text("nonsense = 1")


def test_bad_value_rejected():
    with pytest.raises(ParameterError):
        parse_config_text("threshold = not-a-number")
    with pytest.raises(ParameterError):
        parse_config_text("kernel = 4")  # even kernel
    with pytest.raises(ValueError):
        parse_config_text("mode = FANCY")


def test_missing_equals_rejected():
    with pytest.raises(ParameterError):
        parse_config_text("threshold 200")


def test_round_trip_via_dict():
    cfg = PipelineConfig(threshold=210, mode="SC")
    again = config_from_dict(cfg.to_dict())
    assert again == cfg


def test_load_config_file(tmp_path):
    p = tmp_path / "inkmatch.cfg"
    p.write_text("threshold = 230\nmode = S\n", encoding="utf-8")
    cfg = load_config_file(p)
    assert cfg.threshold == 230 and cfg.mode == "S"
