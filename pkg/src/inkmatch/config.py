"""Pipeline configuration and the `key = value` config file format.

Recognized keys (all optional, shown with defaults):

    threshold = 220          # luma above this is paper, at or below is ink
    kernel = 5               # median filter side length, odd
    min_region_area = 10     # merge smaller regions into a neighbor; 0 = off
    max_ink_thickness = 8    # adjacency reach across ink, pixels
    junction_reach = 4       # half-window for junction candidate detection
    a = 180                  # angle constant in the relation factor
    s = 1                    # situation constant in the relation factor
    mode = SCD               # SCD | SC | S
    score_rule = LITERAL     # LITERAL | SIMPLIFIED
    shape_scorer = moments

Lines starting with `#` and blank lines are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict

from .errors import ParameterError
from .matching import MatchConfig


@dataclass(frozen=True)
class PipelineConfig:
    threshold: int = 220
    kernel: int = 5
    min_region_area: int = 10
    max_ink_thickness: int = 8
    junction_reach: int = 4
    angle_const_a: float = 180.0
    situation_const_s: float = 1.0
    mode: str = "SCD"
    score_rule: str = "LITERAL"
    shape_scorer: str = "moments"

    def match_config(self) -> MatchConfig:
        return MatchConfig(
            angle_const_a=self.angle_const_a,
            situation_const_s=self.situation_const_s,
            mode=self.mode,
            score_rule=self.score_rule,
            shape_scorer=self.shape_scorer,
        )

    def to_dict(self) -> dict:
        return asdict(self)


_KEY_ALIASES = {
    "a": "angle_const_a",
    "s": "situation_const_s",
}
_INT_FIELDS = {"threshold", "kernel", "min_region_area", "max_ink_thickness", "junction_reach"}
_FLOAT_FIELDS = {"angle_const_a", "situation_const_s"}
_STR_FIELDS = {"mode", "score_rule", "shape_scorer"}


def config_from_dict(data: dict) -> PipelineConfig:
    kwargs = {}
    for raw_key, value in data.items():
        key = _KEY_ALIASES.get(str(raw_key).strip(), str(raw_key).strip())
        try:
            if key in _INT_FIELDS:
                kwargs[key] = int(value)
            elif key in _FLOAT_FIELDS:
                kwargs[key] = float(value)
            elif key in _STR_FIELDS:
                kwargs[key] = str(value).strip().upper() if key != "shape_scorer" else str(value).strip()
            else:
                raise ParameterError(f"unknown config key {raw_key!r}")
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"bad value for config key {raw_key!r}: {value!r}") from exc
    cfg = PipelineConfig(**kwargs)
    cfg.match_config()  # validates mode / score_rule / constants
    if cfg.kernel < 1 or cfg.kernel % 2 == 0:
        raise ParameterError("kernel must be odd and >= 1")
    return cfg


def parse_config_text(text: str) -> PipelineConfig:
    data = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ParameterError(f"config line {lineno} is not `key = value`: {line!r}")
        key, _, value = stripped.partition("=")
        data[key.strip()] = value.split("#", 1)[0].strip()
    return config_from_dict(data)


def load_config_file(path) -> PipelineConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())
