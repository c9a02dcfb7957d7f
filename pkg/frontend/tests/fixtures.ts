import type { SessionState } from "../src/api.js";

/** A hand-built two-frame session: regions 2/3 matched, 4 unmatched in A. */
export function mockSession(): SessionState {
  const frame = (ids: number[], bg: number) => ({
    width: 64,
    height: 64,
    regions: ids.map((id) => ({
      id,
      area: id === bg ? 3000 : 100 * id,
      centroid: [10 * id, 12 * id] as [number, number],
      border_contact: id === bg ? 200 : 0,
      is_background: id === bg,
      color: `#0000${(id * 16).toString(16).padStart(2, "0")}`,
      neighbors: [],
    })),
    depth: { ranks: Object.fromEntries(ids.map((id) => [String(id), 0])), background: bg },
  });
  return {
    session_id: "mock",
    created: "",
    updated: "",
    config: {},
    frames: { a: frame([1, 2, 3, 4], 1), b: frame([1, 2, 3], 1) },
    correspondence: {
      pairs: [
        { a: 2, b: 3, provenance: "AUTO", score: 0.9 },
        { a: 3, b: 2, provenance: "PINNED", score: 0.8 },
      ],
      unmatched_a: [4],
      unmatched_b: [],
      background_a: 1,
      background_b: 1,
      seed_history: [[2, 3]],
      mode: "SCD",
    },
    pins: [[3, 2]],
    events: [{ kind: "match", area_match: 50.0 }],
    state_hash: "abc",
    eval: {
      area_match: 50.0,
      mismatches: [
        { side: "a", id: 2, auto: 3, reference: 2 },
        { side: "b", id: 2, auto: 3, reference: 2 },
      ],
      mismatch_count: 2,
      corrections: 0,
    },
  };
}
