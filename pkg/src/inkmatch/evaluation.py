"""Correspondence accuracy metrics and correction-effort counting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import MetricUndefinedError
from .matching import Correspondence


@dataclass(frozen=True)
class CorrectionEvent:
    kind: str  # "match", "pin" or "unpin"
    area_match: float | None = None  # accuracy vs reference after this event


@dataclass
class EvalReport:
    area_match: float
    line_match: float | None
    corrections: int
    mismatches: list[dict] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "schema_version": 1,
            "area_match": self.area_match,
            "line_match": self.line_match,
            "corrections": self.corrections,
            "mismatches": self.mismatches,
        }

    def to_text(self) -> str:
        rows = [("AreaMatch", f"{self.area_match:.3f}")]
        if self.line_match is not None:
            rows.append(("LineMatch", f"{self.line_match:.3f}"))
        rows.append(("Corrections", str(self.corrections)))
        width = max(len(k) for k, _ in rows)
        vwidth = max(len(v) for _, v in rows)
        lines = [f"{'':<{width}} | value", f"{'-' * width}-+-{'-' * max(5, vwidth)}"]
        lines.extend(f"{k:<{width}} | {v:>{max(5, vwidth)}}" for k, v in rows)
        return "\n".join(lines)


def _slot_ids(auto_map: dict, ref_map: dict, auto_rest, ref_rest) -> set:
    return set(auto_map) | set(ref_map) | set(auto_rest) | set(ref_rest)


def mismatched_slots(auto: Correspondence, ref: Correspondence) -> list[dict]:
    """Region slots (on either side) whose assignment differs from the reference."""
    am, rm = auto.mapping(), ref.mapping()
    arm, rrm = auto.reverse_mapping(), ref.reverse_mapping()
    out = []
    for a in sorted(_slot_ids(am, rm, auto.unmatched_a, ref.unmatched_a)):
        if am.get(a) != rm.get(a):
            out.append({"side": "a", "id": a, "auto": am.get(a), "reference": rm.get(a)})
    for b in sorted(_slot_ids(arm, rrm, auto.unmatched_b, ref.unmatched_b)):
        if arm.get(b) != rrm.get(b):
            out.append({"side": "b", "id": b, "auto": arm.get(b), "reference": rrm.get(b)})
    return out


def area_match_percent(n: int, m: int, mismatch: int) -> float:
    """((n + m) - MissmatchArea) / (n + m) * 100."""
    if n + m == 0:
        raise MetricUndefinedError("area_match undefined for empty graphs")
    return (n + m - mismatch) / (n + m) * 100.0


def area_match(auto: Correspondence, ref: Correspondence, n: int, m: int) -> float:
    """Region-correspondence accuracy of `auto` against `ref`, in percent."""
    return area_match_percent(n, m, len(mismatched_slots(auto, ref)))


def line_match_percent(an: int, bn: int, mismatch: int) -> float:
    """((an + bn) - MissmatchLine) / (an + bn) * 100."""
    if an + bn == 0:
        raise MetricUndefinedError("line_match undefined without strokes")
    return (an + bn - mismatch) / (an + bn) * 100.0


def line_match(
    auto_pairs: Iterable[tuple[int, int]],
    ref_pairs: Iterable[tuple[int, int]],
    an: int,
    bn: int,
) -> float:
    """Stroke-correspondence accuracy of `auto_pairs` against `ref_pairs`.

    A stroke the reference pairs but the evaluated result leaves unpaired
    counts as a mismatch on that slot.
    """
    am = {a: b for a, b in auto_pairs}
    rm = {a: b for a, b in ref_pairs}
    arm = {b: a for a, b in am.items()}
    rrm = {b: a for a, b in rm.items()}
    mismatch = sum(1 for a in set(am) | set(rm) if am.get(a) != rm.get(a))
    mismatch += sum(1 for b in set(arm) | set(rrm) if arm.get(b) != rrm.get(b))
    return line_match_percent(an, bn, mismatch)


def count_corrections(events: Iterable[CorrectionEvent]) -> int:
    """Pin events applied before the area accuracy first reached 100%.

    Unpins never count. If the accuracy never reaches 100% in the log, every
    pin counts.
    """
    pins = 0
    for ev in events:
        if ev.kind == "pin":
            pins += 1
        if ev.area_match is not None and ev.area_match >= 100.0 - 1e-9:
            return pins
    return pins
