"""Match sessions: pipeline state, pin corrections, event log, persistence.

A session is fully determined by its two input PNGs, its config and its
ordered pin list; every mutation re-runs the matcher (deterministic), so a
restored session reproduces the exact correspondence. The event log records
the initial match and every pin/unpin, with accuracy against the optional
reference at each step.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .config import PipelineConfig, config_from_dict
from .errors import PinConflictError, RestoreError
from .evaluation import CorrectionEvent, area_match, count_corrections, mismatched_slots
from .matching import Correspondence, CorrPair
from .pipeline import (
    SCHEMA_VERSION,
    KeyframeAnalysis,
    MatchResult,
    analyze_keyframe,
    canonical_json,
    correspondence_dict,
    correspondence_hash,
    depth_dict,
    match_pair,
    regions_dict,
)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def reference_correspondence(graph_a, graph_b, pairs) -> Correspondence:
    """Wrap bare (a, b) id pairs as a full reference correspondence."""
    used_a = {a for a, _ in pairs}
    used_b = {b for _, b in pairs}
    return Correspondence(
        pairs=[CorrPair(a, b, "AUTO", 1.0) for a, b in sorted(pairs)],
        unmatched_a=[i for i in graph_a.non_background_ids() if i not in used_a],
        unmatched_b=[i for i in graph_b.non_background_ids() if i not in used_b],
        background_a=graph_a.background_id,
        background_b=graph_b.background_id,
    )


@dataclass
class Session:
    id: str
    png_a: bytes
    png_b: bytes
    config: PipelineConfig
    ka: KeyframeAnalysis
    kb: KeyframeAnalysis
    result: MatchResult
    pins: list[tuple[int, int]] = field(default_factory=list)
    events: list[dict] = field(default_factory=list)
    reference: list[tuple[int, int]] | None = None
    created: str = field(default_factory=_now)
    updated: str = field(default_factory=_now)
    lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    # -- evaluation against the optional reference ---------------------------

    def _eval_area(self) -> float | None:
        if self.reference is None:
            return None
        ref = reference_correspondence(self.ka.graph, self.kb.graph, self.reference)
        n = len(self.ka.graph.non_background_ids())
        m = len(self.kb.graph.non_background_ids())
        return area_match(self.result.correspondence, ref, n, m)

    def _record(self, kind: str, **payload) -> None:
        self.events.append(
            {"kind": kind, "at": _now(), "area_match": self._eval_area(), **payload}
        )
        self.updated = _now()

    def record_initial(self) -> None:
        self._record("match")

    # -- mutations ------------------------------------------------------------

    def apply_pin(self, a: int, b: int) -> None:
        with self.lock:
            for pa, pb in self.pins:
                if pa == a or pb == b:
                    raise PinConflictError(
                        f"pin ({a}, {b}) conflicts with existing pin ({pa}, {pb})"
                    )
            pins = self.pins + [(a, b)]
            self.result = match_pair(self.ka, self.kb, self.config, pins)  # validates ids
            self.pins = pins
            self._record("pin", a=a, b=b)

    def remove_pin(self, a: int) -> None:
        with self.lock:
            if all(pa != a for pa, _ in self.pins):
                raise KeyError(f"no pin on region a={a}")
            self.pins = [(pa, pb) for pa, pb in self.pins if pa != a]
            self.result = match_pair(self.ka, self.kb, self.config, self.pins)
            self._record("unpin", a=a)

    # -- serialization ---------------------------------------------------------

    def correspondence_json(self) -> dict:
        return correspondence_dict(self.result.correspondence, self.result.state, self.config)

    def state_hash(self) -> str:
        return correspondence_hash(self.correspondence_json())

    def corrections(self) -> int:
        return count_corrections(
            CorrectionEvent(e["kind"], e.get("area_match")) for e in self.events
        )

    def state_dict(self) -> dict:
        corr = self.result.correspondence
        out = {
            "schema_version": SCHEMA_VERSION,
            "session_id": self.id,
            "created": self.created,
            "updated": self.updated,
            "config": self.config.to_dict(),
            "frames": {
                "a": {**regions_dict(self.ka.graph), "depth": depth_dict(self.ka.depth, self.ka.junctions)},
                "b": {**regions_dict(self.kb.graph), "depth": depth_dict(self.kb.depth, self.kb.junctions)},
            },
            "correspondence": self.correspondence_json(),
            "pins": [[a, b] for a, b in self.pins],
            "events": self.events,
            "state_hash": self.state_hash(),
            "eval": None,
        }
        if self.reference is not None:
            ref = reference_correspondence(self.ka.graph, self.kb.graph, self.reference)
            mism = mismatched_slots(corr, ref)
            out["eval"] = {
                "area_match": self._eval_area(),
                "mismatches": mism,
                "mismatch_count": len(mism),
                "corrections": self.corrections(),
            }
        return out


class SessionManager:
    """In-memory session registry with optional directory persistence."""

    def __init__(self, store_dir: str | Path | None = None):
        self.store_dir = Path(store_dir) if store_dir else None
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(
        self,
        png_a: bytes,
        png_b: bytes,
        config: PipelineConfig = PipelineConfig(),
        reference: list[tuple[int, int]] | None = None,
        session_id: str | None = None,
    ) -> Session:
        sid = session_id or secrets.token_hex(8)
        ka = analyze_keyframe(png_a, config)
        kb = analyze_keyframe(png_b, config)
        result = match_pair(ka, kb, config)
        session = Session(
            id=sid, png_a=png_a, png_b=png_b, config=config, ka=ka, kb=kb,
            result=result, reference=reference,
        )
        session.record_initial()
        with self._lock:
            self._sessions[sid] = session
        self.save(session)
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            return self._sessions[sid]

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)

    def pin(self, sid: str, a: int, b: int) -> Session:
        session = self.get(sid)
        session.apply_pin(a, b)
        self.save(session)
        return session

    def unpin(self, sid: str, a: int) -> Session:
        session = self.get(sid)
        session.remove_pin(a)
        self.save(session)
        return session

    # -- persistence ------------------------------------------------------------

    def save(self, session: Session) -> None:
        if self.store_dir is None:
            return
        root = self.store_dir / session.id
        root.mkdir(parents=True, exist_ok=True)
        (root / "a.png").write_bytes(session.png_a)
        (root / "b.png").write_bytes(session.png_b)
        meta = {
            "schema_version": SCHEMA_VERSION,
            "id": session.id,
            "created": session.created,
            "updated": session.updated,
            "config": session.config.to_dict(),
            "pins": [[a, b] for a, b in session.pins],
            "events": session.events,
            "reference": [[a, b] for a, b in session.reference] if session.reference else None,
        }
        (root / "session.json").write_text(canonical_json(meta), encoding="utf-8")
        (root / "correspondence.json").write_text(
            canonical_json(session.correspondence_json()), encoding="utf-8"
        )

    def restore(self, sid: str) -> Session:
        """Rebuild a session from disk; errors name the offending file."""
        if self.store_dir is None:
            raise RestoreError("no store directory configured")
        root = self.store_dir / sid
        blobs = {}
        for name in ("a.png", "b.png", "session.json", "correspondence.json"):
            path = root / name
            if not path.exists():
                raise RestoreError(f"missing {path}")
            blobs[name] = path.read_bytes()
        try:
            meta = json.loads(blobs["session.json"])
        except json.JSONDecodeError as exc:
            raise RestoreError(f"corrupt {root / 'session.json'}: {exc}") from exc
        try:
            config = config_from_dict(meta["config"])
            pins = [tuple(p) for p in meta["pins"]]
            reference = [tuple(p) for p in meta["reference"]] if meta.get("reference") else None
        except (KeyError, TypeError, ValueError) as exc:
            raise RestoreError(f"corrupt {root / 'session.json'}: {exc}") from exc
        try:
            ka = analyze_keyframe(blobs["a.png"], config)
        except Exception as exc:
            raise RestoreError(f"corrupt {root / 'a.png'}: {exc}") from exc
        try:
            kb = analyze_keyframe(blobs["b.png"], config)
        except Exception as exc:
            raise RestoreError(f"corrupt {root / 'b.png'}: {exc}") from exc
        result = match_pair(ka, kb, config, pins)
        session = Session(
            id=sid, png_a=blobs["a.png"], png_b=blobs["b.png"], config=config,
            ka=ka, kb=kb, result=result, pins=list(pins),
            events=list(meta.get("events", [])), reference=reference,
            created=meta.get("created", _now()), updated=meta.get("updated", _now()),
        )
        stored = blobs["correspondence.json"].decode("utf-8")
        if canonical_json(session.correspondence_json()) != stored:
            raise RestoreError(f"stale {root / 'correspondence.json'}: recomputed state differs")
        with self._lock:
            self._sessions[sid] = session
        return session

    def restore_all(self) -> list[str]:
        if self.store_dir is None or not self.store_dir.exists():
            return []
        restored = []
        for child in sorted(self.store_dir.iterdir()):
            if child.is_dir() and (child / "session.json").exists():
                self.restore(child.name)
                restored.append(child.name)
        return restored
