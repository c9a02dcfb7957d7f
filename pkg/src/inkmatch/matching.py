"""Greedy one-to-one closed-area correspondence between two keyframes.

Every non-background pair gets a tentative score (shape similarity times
area ratio). The best pair seeds the match; from each seed, scores of
uncommitted neighbor pairs are refreshed with an angle/depth relation
factor, the best refreshed pair commits and becomes the next seed, and
disconnected parts fall back to the best tentative score. User pins commit
first and are never overridden. A final pass replays the seeds with the
two keyframes' roles exchanged, refining scores but never pairings.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .depth import DepthGraph, relative_depth
from .errors import NoRegionsError, PinConflictError
from .labeling import RegionGraph, centroid_angle
from .shape import get_scorer

MODES = ("SCD", "SC", "S")
SCORE_RULES = ("LITERAL", "SIMPLIFIED")

AUTO = "AUTO"
PINNED = "PINNED"


@dataclass(frozen=True)
class MatchConfig:
    angle_const_a: float = 180.0
    situation_const_s: float = 1.0
    mode: str = "SCD"
    score_rule: str = "LITERAL"
    shape_scorer: str = "moments"

    def __post_init__(self):
        if self.angle_const_a <= 0:
            raise ValueError("angle_const_a must be > 0")
        if self.situation_const_s <= 0:
            raise ValueError("situation_const_s must be > 0")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.score_rule not in SCORE_RULES:
            raise ValueError(f"score_rule must be one of {SCORE_RULES}, got {self.score_rule!r}")


@dataclass
class ScoreState:
    a_ids: list[int]
    b_ids: list[int]
    ps: np.ndarray  # tentative scores N*S, shape (n, m), in [0, 1]
    score: np.ndarray  # current propagated scores, shape (n, m)
    updated: np.ndarray  # bool, shape (n, m)
    seed_history: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        self._ia = {a: i for i, a in enumerate(self.a_ids)}
        self._ib = {b: j for j, b in enumerate(self.b_ids)}

    def index_a(self, aid: int) -> int:
        return self._ia[aid]

    def index_b(self, bid: int) -> int:
        return self._ib[bid]

    def tentative(self, aid: int, bid: int) -> float:
        return float(self.ps[self._ia[aid], self._ib[bid]])


@dataclass(frozen=True)
class CorrPair:
    a: int
    b: int
    provenance: str  # AUTO or PINNED
    score: float


@dataclass
class Correspondence:
    pairs: list[CorrPair]
    unmatched_a: list[int]
    unmatched_b: list[int]
    background_a: int | None = None
    background_b: int | None = None

    def mapping(self) -> dict[int, int]:
        return {p.a: p.b for p in self.pairs}

    def reverse_mapping(self) -> dict[int, int]:
        return {p.b: p.a for p in self.pairs}


def area_ratio(area_a: float, area_b: float) -> float:
    """Size agreement in (0, 1]: smaller area over larger."""
    return min(area_a, area_b) / max(area_a, area_b)


def angular_distance(theta_a: float, theta_b: float) -> float:
    """|theta_a - theta_b| wrapped to [0, 180] degrees."""
    d = abs(theta_a - theta_b) % 360.0
    return min(d, 360.0 - d)


def angle_def(seed_a, a_i, seed_b, b_j) -> float:
    """Angular distance between the seed->region directions of each frame."""
    ta = centroid_angle(seed_a.centroid, a_i.centroid)
    tb = centroid_angle(seed_b.centroid, b_j.centroid)
    return angular_distance(ta, tb)


def situation(
    seed: tuple[int, int],
    a_i: int,
    b_j: int,
    depth_a: DepthGraph,
    depth_b: DepthGraph,
) -> float:
    """1 when the seed/region depth relation agrees across frames, else 0."""
    sa, sb = seed
    return 1.0 if relative_depth(depth_a, sa, a_i) == relative_depth(depth_b, sb, b_j) else 0.0


def relation_value(angle_def_deg: float, situation_value: float, cfg: MatchConfig) -> float:
    """(1 + ((a - AngleDef)/a)^2) * (1 + Situation/s)."""
    a = cfg.angle_const_a
    return (1.0 + ((a - angle_def_deg) / a) ** 2) * (
        1.0 + situation_value / cfg.situation_const_s
    )


def relation(
    seed: tuple[int, int],
    a_i: int,
    b_j: int,
    A: RegionGraph,
    B: RegionGraph,
    depth_a: DepthGraph,
    depth_b: DepthGraph,
    cfg: MatchConfig,
) -> float:
    """Positional/depth agreement factor relative to the seed pair, >= 1."""
    sa, sb = seed
    adef = angle_def(A.region(sa), A.region(a_i), B.region(sb), B.region(b_j))
    # modes SC and S ablate the depth term by holding it at full agreement
    sit = situation(seed, a_i, b_j, depth_a, depth_b) if cfg.mode == "SCD" else 1.0
    return relation_value(adef, sit, cfg)


def _score_value(ps_value: float, relation_value: float, rule: str) -> float:
    if rule == "LITERAL":
        # Score = PS * (N * S * R) with PS = N * S
        return ps_value * ps_value * relation_value
    return ps_value * relation_value


def pair_score(
    state: ScoreState, aid: int, bid: int, relation_value: float, cfg: MatchConfig
) -> float:
    """Refresh one pair's score from its tentative score and relation factor."""
    i, j = state.index_a(aid), state.index_b(bid)
    value = _score_value(float(state.ps[i, j]), relation_value, cfg.score_rule)
    state.score[i, j] = value
    state.updated[i, j] = True
    return value


def seed_scores(
    A: RegionGraph, B: RegionGraph, cfg: MatchConfig
) -> tuple[ScoreState, tuple[int, int]]:
    """Tentative scores for all non-background pairs plus the first seed."""
    state, min_area = _build_state(A, B, cfg)
    first = _argmax(
        state,
        ((i, j) for i in range(len(state.a_ids)) for j in range(len(state.b_ids))),
        state.ps,
        min_area,
    )
    return state, (state.a_ids[first[0]], state.b_ids[first[1]])


def _build_state(A: RegionGraph, B: RegionGraph, cfg: MatchConfig):
    a_ids = A.non_background_ids()
    b_ids = B.non_background_ids()
    if not a_ids or not b_ids:
        raise NoRegionsError("both keyframes need at least one non-background region")
    scorer = get_scorer(cfg.shape_scorer)
    desc_a = {aid: scorer.describe(A.region_mask(aid)) for aid in a_ids}
    desc_b = {bid: scorer.describe(B.region_mask(bid)) for bid in b_ids}
    n, m = len(a_ids), len(b_ids)
    ps = np.zeros((n, m))
    for i, aid in enumerate(a_ids):
        for j, bid in enumerate(b_ids):
            shape_n = scorer.similarity(desc_a[aid], desc_b[bid])
            ps[i, j] = shape_n * area_ratio(A.region(aid).area, B.region(bid).area)
    areas_a = np.array([A.region(aid).area for aid in a_ids], dtype=np.float64)
    areas_b = np.array([B.region(bid).area for bid in b_ids], dtype=np.float64)
    min_area = np.minimum.outer(areas_a, areas_b)
    state = ScoreState(a_ids=a_ids, b_ids=b_ids, ps=ps, score=np.zeros((n, m)), updated=np.zeros((n, m), bool))
    return state, min_area


def _argmax(state: ScoreState, candidates, values: np.ndarray, min_area: np.ndarray):
    """Best (i, j) by value, ties to larger min area then smaller region ids."""
    best = None
    best_key = None
    for i, j in candidates:
        key = (values[i, j], min_area[i, j], -state.a_ids[i], -state.b_ids[j])
        if best_key is None or key > best_key:
            best, best_key = (i, j), key
    return best


class _Matcher:
    def __init__(self, A, B, depth_a, depth_b, cfg: MatchConfig):
        self.A, self.B = A, B
        self.depth_a, self.depth_b = depth_a, depth_b
        self.cfg = cfg
        self.state, self.min_area = _build_state(A, B, cfg)
        self.committed_a: dict[int, int] = {}
        self.committed_b: dict[int, int] = {}
        self.records: list[CorrPair] = []

    def commit(self, aid: int, bid: int, provenance: str, value: float) -> None:
        self.committed_a[aid] = bid
        self.committed_b[bid] = aid
        self.records.append(CorrPair(aid, bid, provenance, float(value)))
        i, j = self.state.index_a(aid), self.state.index_b(bid)
        self.state.updated[i, j] = True

    def neighbor_candidates(self, seed_a: int, seed_b: int):
        """Uncommitted non-background neighbor products of the seed regions."""
        bg_a, bg_b = self.A.background_id, self.B.background_id
        na = [
            nb.id
            for nb in self.A.region(seed_a).neighbors
            if nb.id != bg_a and nb.id not in self.committed_a
        ]
        nb_ = [
            nb.id
            for nb in self.B.region(seed_b).neighbors
            if nb.id != bg_b and nb.id not in self.committed_b
        ]
        return na, nb_

    def propagate(self, seed_a: int, seed_b: int) -> None:
        self.state.seed_history.append((seed_a, seed_b))
        na, nb = self.neighbor_candidates(seed_a, seed_b)
        for aid in na:
            for bid in nb:
                r = relation(
                    (seed_a, seed_b), aid, bid, self.A, self.B, self.depth_a, self.depth_b, self.cfg
                )
                pair_score(self.state, aid, bid, r, self.cfg)

    def propagate_swapped(self, seed_a: int, seed_b: int) -> None:
        """Score refresh with keyframe roles exchanged; pairings untouched."""
        bg_a, bg_b = self.A.background_id, self.B.background_id
        nb = [x.id for x in self.B.region(seed_b).neighbors if x.id != bg_b]
        na = [x.id for x in self.A.region(seed_a).neighbors if x.id != bg_a]
        st = self.state
        for bid in nb:
            for aid in na:
                r = relation(
                    (seed_b, seed_a), bid, aid, self.B, self.A, self.depth_b, self.depth_a, self.cfg
                )
                i, j = st.index_a(aid), st.index_b(bid)
                st.score[i, j] = _score_value(float(st.ps[i, j]), r, self.cfg.score_rule)
                st.updated[i, j] = True

    def uncommitted_pairs(self):
        st = self.state
        for i, aid in enumerate(st.a_ids):
            if aid in self.committed_a:
                continue
            for j, bid in enumerate(st.b_ids):
                if bid not in self.committed_b:
                    yield i, j

    def exhausted(self) -> bool:
        return len(self.committed_a) == len(self.state.a_ids) or len(self.committed_b) == len(
            self.state.b_ids
        )

    def run(self, pins) -> None:
        st = self.state
        for aid, bid in pins:
            self.commit(aid, bid, PINNED, st.tentative(aid, bid))

        if self.cfg.mode == "S":
            # shape-only ablation: straight descending-tentative assignment
            while not self.exhausted():
                i, j = _argmax(st, self.uncommitted_pairs(), st.ps, self.min_area)
                aid, bid = st.a_ids[i], st.b_ids[j]
                self.commit(aid, bid, AUTO, st.ps[i, j])
                st.seed_history.append((aid, bid))
            return

        if pins:
            for aid, bid in pins:
                self.propagate(aid, bid)
        elif not self.exhausted():
            first = _argmax(st, self.uncommitted_pairs(), st.ps, self.min_area)
            aid, bid = st.a_ids[first[0]], st.b_ids[first[1]]
            self.commit(aid, bid, AUTO, st.ps[first])
            self.propagate(aid, bid)

        while not self.exhausted():
            fresh = [(i, j) for i, j in self.uncommitted_pairs() if st.updated[i, j]]
            if fresh:
                i, j = _argmax(st, fresh, st.score, self.min_area)
                value = st.score[i, j]
            else:
                # disconnected from every seed so far: best tentative score
                i, j = _argmax(st, self.uncommitted_pairs(), st.ps, self.min_area)
                value = st.ps[i, j]
            aid, bid = st.a_ids[i], st.b_ids[j]
            if (aid, bid) in st.seed_history and len(self.committed_a) < len(st.a_ids):
                # guarded by construction: committed pairs leave candidacy
                raise AssertionError("seed pair re-selected")
            self.commit(aid, bid, AUTO, value)
            self.propagate(aid, bid)

        for seed_a, seed_b in list(st.seed_history):
            self.propagate_swapped(seed_a, seed_b)

    def correspondence(self) -> Correspondence:
        pairs = sorted(self.records, key=lambda p: p.a)
        unmatched_a = [a for a in self.state.a_ids if a not in self.committed_a]
        unmatched_b = [b for b in self.state.b_ids if b not in self.committed_b]
        return Correspondence(
            pairs=pairs,
            unmatched_a=unmatched_a,
            unmatched_b=unmatched_b,
            background_a=self.A.background_id,
            background_b=self.B.background_id,
        )


def _validate_pins(pins, A: RegionGraph, B: RegionGraph) -> list[tuple[int, int]]:
    clean = []
    seen_a: set[int] = set()
    seen_b: set[int] = set()
    for aid, bid in pins:
        if not A.has_region(aid) or A.region(aid).is_background:
            raise PinConflictError(f"pin references invalid region a={aid}")
        if not B.has_region(bid) or B.region(bid).is_background:
            raise PinConflictError(f"pin references invalid region b={bid}")
        if aid in seen_a or bid in seen_b:
            raise PinConflictError(f"pin ({aid}, {bid}) duplicates a pinned region id")
        seen_a.add(aid)
        seen_b.add(bid)
        clean.append((int(aid), int(bid)))
    return clean


def greedy_match(
    A: RegionGraph,
    B: RegionGraph,
    depth_a: DepthGraph,
    depth_b: DepthGraph,
    cfg: MatchConfig,
    pins=(),
) -> tuple[Correspondence, ScoreState]:
    """Full correspondence estimation; pins commit first and always survive."""
    clean = _validate_pins(pins, A, B)
    matcher = _Matcher(A, B, depth_a, depth_b, cfg)
    matcher.run(clean)
    return matcher.correspondence(), matcher.state


def rematch_with_pins(
    A: RegionGraph,
    B: RegionGraph,
    depth_a: DepthGraph,
    depth_b: DepthGraph,
    cfg: MatchConfig,
    pins,
) -> tuple[Correspondence, ScoreState]:
    """Re-run the matcher after a correction; identical to greedy_match(pins)."""
    return greedy_match(A, B, depth_a, depth_b, cfg, pins)
