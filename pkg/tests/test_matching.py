import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from inkmatch import PipelineConfig, analyze_keyframe, match_pair, synth
from inkmatch.errors import NoRegionsError, PinConflictError
from inkmatch.matching import (
    MatchConfig,
    angular_distance,
    area_ratio,
    greedy_match,
    pair_score,
    relation_value,
    rematch_with_pins,
    seed_scores,
)
from inkmatch.pipeline import canonical_json, correspondence_dict

from _util import DEFAULT_CFG, analyze_scene, brute_force_best_sum, truth_pairs


def test_area_ratio_examples():
    assert area_ratio(200, 100) == 0.5
    assert area_ratio(7, 7) == 1.0
    assert area_ratio(1, 1_000_000) == 1e-6
    assert area_ratio(100, 200) == area_ratio(200, 100)


def test_area_ratio_scale_invariant():
    assert area_ratio(2 * 123, 2 * 457) == pytest.approx(area_ratio(123, 457), rel=1e-12)


def test_angular_distance_examples():
    assert angular_distance(30, 30) == 0.0
    assert angular_distance(10, 350) == 20.0
    assert angular_distance(0, 180) == 180.0


@given(st.floats(0, 360), st.floats(0, 360))
def test_angular_distance_range_and_symmetry(a, b):
    d = angular_distance(a, b)
    assert 0.0 <= d <= 180.0
    assert d == angular_distance(b, a)


def test_relation_examples():
    cfg = MatchConfig()
    assert relation_value(0.0, 1.0, cfg) == 4.0
    assert relation_value(180.0, 0.0, cfg) == 1.0
    assert relation_value(90.0, 1.0, cfg) == 2.5


def test_relation_bounds():
    cfg = MatchConfig(situation_const_s=2.0)
    for adef in np.linspace(0, 180, 19):
        for sit in (0.0, 1.0):
            r = relation_value(float(adef), sit, cfg)
            assert 1.0 <= r <= 2.0 * (1.0 + 1.0 / cfg.situation_const_s)


def _two_region_state():
    scene = synth.rooms_scene(5, rows=1, cols=2, size=128)
    ka, kb = analyze_scene(scene)
    return seed_scores(ka.graph, kb.graph, DEFAULT_CFG.match_config())


def test_pair_score_rules():
    state, _ = _two_region_state()
    aid, bid = state.a_ids[0], state.b_ids[0]
    i, j = state.index_a(aid), state.index_b(bid)
    state.ps[i, j] = 0.5
    literal = pair_score(state, aid, bid, 2.0, MatchConfig(score_rule="LITERAL"))
    assert literal == pytest.approx(0.5 * 0.5 * 2.0)
    simplified = pair_score(state, aid, bid, 2.0, MatchConfig(score_rule="SIMPLIFIED"))
    assert simplified == pytest.approx(1.0)
    assert state.updated[i, j]
    state.ps[i, j] = 1.0
    assert pair_score(state, aid, bid, 4.0, MatchConfig()) == pytest.approx(4.0)


def test_seed_scores_identity_diagonal():
    img = synth.compass_scene(3).image_a
    ka = analyze_keyframe(img, DEFAULT_CFG)
    kb = analyze_keyframe(img.copy(), DEFAULT_CFG)
    state, first = seed_scores(ka.graph, kb.graph, DEFAULT_CFG.match_config())
    for k, aid in enumerate(state.a_ids):
        assert state.ps[k, k] == pytest.approx(1.0)
    assert first[0] == first[1]


def test_seed_prefers_larger_of_identical_shapes():
    scene = synth.canvas(256)
    synth.draw_rect(scene, 20, 20, 120, 120)  # big square
    synth.draw_rect(scene, 160, 60, 210, 110)  # small square
    ka = analyze_keyframe(scene, DEFAULT_CFG)
    kb = analyze_keyframe(scene.copy(), DEFAULT_CFG)
    state, first = seed_scores(ka.graph, kb.graph, DEFAULT_CFG.match_config())
    big = max(ka.graph.non_background_ids(), key=lambda i: ka.graph.region(i).area)
    assert first == (big, big)


def test_empty_graph_raises():
    blank = analyze_keyframe(synth.canvas(32), DEFAULT_CFG)  # one region: background only
    with pytest.raises(NoRegionsError):
        seed_scores(blank.graph, blank.graph, DEFAULT_CFG.match_config())


def test_identity_match_is_identity():
    img = synth.badge_scene(5).image_a
    ka = analyze_keyframe(img, DEFAULT_CFG)
    kb = analyze_keyframe(img.copy(), DEFAULT_CFG)
    corr, state = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, DEFAULT_CFG.match_config())
    assert corr.mapping() == {i: i for i in ka.graph.non_background_ids()}
    assert corr.unmatched_a == [] and corr.unmatched_b == []


def test_missing_region_lands_in_unmatched():
    scene_a = synth.canvas(256)
    synth.draw_rect(scene_a, 20, 20, 100, 100)
    synth.draw_circle(scene_a, 180, 60, 30)
    scene_b = synth.canvas(256)
    synth.draw_rect(scene_b, 30, 30, 110, 110)
    ka = analyze_keyframe(scene_a, DEFAULT_CFG)
    kb = analyze_keyframe(scene_b, DEFAULT_CFG)
    corr, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, DEFAULT_CFG.match_config())
    assert len(corr.pairs) == 1
    assert len(corr.unmatched_a) == 1
    assert corr.unmatched_b == []


def test_translated_shapes_agree_with_brute_force():
    scene = synth.scatter_scene(7)
    ka, kb = analyze_scene(scene)
    res = match_pair(ka, kb, DEFAULT_CFG)
    greedy_sum = sum(res.state.tentative(p.a, p.b) for p in res.correspondence.pairs)
    assert greedy_sum >= 0.8 * brute_force_best_sum(res.state)
    assert res.correspondence.mapping() == dict(truth_pairs(scene, ka, kb))


def test_determinism_byte_identical():
    scene = synth.compass_scene(9)
    cfg = DEFAULT_CFG
    ka, kb = analyze_scene(scene)
    r1 = match_pair(ka, kb, cfg)
    r2 = match_pair(ka, kb, cfg)
    j1 = canonical_json(correspondence_dict(r1.correspondence, r1.state, cfg))
    j2 = canonical_json(correspondence_dict(r2.correspondence, r2.state, cfg))
    assert j1 == j2
    assert r1.state.seed_history == r2.state.seed_history


def test_swapped_inputs_give_transposed_pairs():
    scene = synth.scatter_scene(21)
    ka, kb = analyze_scene(scene)
    cfg = DEFAULT_CFG.match_config()
    fwd, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg)
    rev, _ = greedy_match(kb.graph, ka.graph, kb.depth, ka.depth, cfg)
    assert {(p.a, p.b) for p in fwd.pairs} == {(p.b, p.a) for p in rev.pairs}


def test_upscaled_frames_match_identically():
    scene = synth.compass_scene(4)
    ka, kb = analyze_scene(scene)
    cfg = DEFAULT_CFG
    base = match_pair(ka, kb, cfg).correspondence.mapping()
    big_a = np.kron(scene.image_a, np.ones((2, 2), np.uint8))
    big_b = np.kron(scene.image_b, np.ones((2, 2), np.uint8))
    ka2 = analyze_keyframe(big_a, cfg)
    kb2 = analyze_keyframe(big_b, cfg)
    scaled = match_pair(ka2, kb2, cfg).correspondence.mapping()
    assert scaled == base  # region ids are raster-ordered, preserved by scaling


def test_mode_s_skips_propagation():
    scene = synth.compass_scene(1)
    cfg_s = PipelineConfig(mode="S")
    ka, kb = analyze_scene(scene, cfg_s)
    res = match_pair(ka, kb, cfg_s)
    truth = dict(truth_pairs(scene, ka, kb))
    got = res.correspondence.mapping()
    # shape-only confuses the size-swapped congruent arms by design
    assert got != truth
    center = max(truth, key=lambda i: ka.graph.region(i).area)
    assert got[center] == truth[center]


def test_pins_override_auto_result():
    scene = synth.badge_scene(3, flip=True)
    ka, kb = analyze_scene(scene)
    truth = dict(truth_pairs(scene, ka, kb))
    cfg = DEFAULT_CFG.match_config()
    auto, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg)
    wrong = {a for a, b in auto.mapping().items() if truth[a] != b}
    assert wrong, "flip-badge should defeat the depth mode"
    pin = (min(wrong), truth[min(wrong)])
    fixed, _ = rematch_with_pins(ka.graph, kb.graph, ka.depth, kb.depth, cfg, [pin])
    assert fixed.mapping() == truth  # one pin untangles the swapped duo
    prov = {(p.a, p.b): p.provenance for p in fixed.pairs}
    assert prov[pin] == "PINNED"


def test_pin_then_unpin_returns_to_auto():
    scene = synth.badge_scene(3, flip=True)
    ka, kb = analyze_scene(scene)
    cfg = DEFAULT_CFG.match_config()
    auto, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg)
    pinned, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg, [(3, 3)])
    again, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg)
    assert {(p.a, p.b, p.provenance) for p in auto.pairs} == {
        (p.a, p.b, p.provenance) for p in again.pairs
    }


def test_pin_of_correct_pair_changes_only_provenance():
    scene = synth.badge_scene(5)
    ka, kb = analyze_scene(scene)
    cfg = DEFAULT_CFG.match_config()
    auto, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg)
    some = auto.pairs[0]
    pinned, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg, [(some.a, some.b)])
    assert pinned.mapping() == auto.mapping()
    prov = {(p.a, p.b): p.provenance for p in pinned.pairs}
    assert prov[(some.a, some.b)] == "PINNED"


def test_pin_conflicts_rejected():
    scene = synth.badge_scene(5)
    ka, kb = analyze_scene(scene)
    cfg = DEFAULT_CFG.match_config()
    with pytest.raises(PinConflictError):
        greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg, [(2, 2), (2, 3)])
    with pytest.raises(PinConflictError):
        greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg, [(2, 2), (3, 2)])
    with pytest.raises(PinConflictError):
        greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg, [(999, 2)])
    bg = ka.graph.background_id
    with pytest.raises(PinConflictError):
        greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg, [(bg, 2)])


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(4))), st.integers(1, 4))
def test_pin_supremacy_random_orders(order, take):
    scene = synth.badge_scene(2)
    ka, kb = analyze_scene(scene)
    truth = truth_pairs(scene, ka, kb)
    pins = [truth[i] for i in order[:take]]
    cfg = DEFAULT_CFG.match_config()
    corr, _ = greedy_match(ka.graph, kb.graph, ka.depth, kb.depth, cfg, pins)
    got = {(p.a, p.b): p.provenance for p in corr.pairs}
    for pin in pins:
        assert got[pin] == "PINNED"
    ids_a = [p.a for p in corr.pairs]
    ids_b = [p.b for p in corr.pairs]
    assert len(set(ids_a)) == len(ids_a)
    assert len(set(ids_b)) == len(ids_b)


def test_score_state_bounds():
    scene = synth.scatter_scene(13)
    ka, kb = analyze_scene(scene)
    res = match_pair(ka, kb, DEFAULT_CFG)
    st_ = res.state
    assert (st_.ps >= 0.0).all() and (st_.ps <= 1.0).all()
    assert (st_.score >= 0.0).all()
    cap = 2.0 * (1.0 + 1.0 / DEFAULT_CFG.situation_const_s)
    assert (st_.score <= cap + 1e-9).all()
    assert len(set(st_.seed_history)) == len(st_.seed_history)
