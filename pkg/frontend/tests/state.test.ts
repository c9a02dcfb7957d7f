import { describe, expect, it } from "vitest";

import { ViewState } from "../src/state.js";
import { mockSession } from "./fixtures.js";

function freshState(): ViewState {
  const vs = new ViewState();
  vs.applyServerState(mockSession());
  return vs;
}

describe("pair color resolution", () => {
  it("matched regions on both sides share the A-side display color", () => {
    const vs = freshState();
    // pair (2, 3): region 2 in A and region 3 in B both use A2's color
    expect(vs.pairColorFor("a", 2)).toBe("#000020");
    expect(vs.pairColorFor("b", 3)).toBe("#000020");
  });

  it("unmatched regions resolve to null (rendered hatched)", () => {
    const vs = freshState();
    expect(vs.pairColorFor("a", 4)).toBeNull();
  });

  it("background resolves to white", () => {
    const vs = freshState();
    expect(vs.pairColorFor("a", 1)).toBe("#ffffff");
    expect(vs.pairColorFor("b", 1)).toBe("#ffffff");
  });
});

describe("partner lookup and pins", () => {
  it("maps partners in both directions", () => {
    const vs = freshState();
    expect(vs.partnerOf("a", 2)).toBe(3);
    expect(vs.partnerOf("b", 2)).toBe(3);
    expect(vs.partnerOf("a", 4)).toBeNull();
  });

  it("reports pinned pairs and pinned membership", () => {
    const vs = freshState();
    expect(vs.pinnedPairs().map((p) => [p.a, p.b])).toEqual([[3, 2]]);
    expect(vs.isPinned("a", 3)).toBe(true);
    expect(vs.isPinned("b", 2)).toBe(true);
    expect(vs.isPinned("a", 2)).toBe(false);
  });

  it("mirrors the server's mismatch counter", () => {
    const vs = freshState();
    expect(vs.mismatchCount()).toBe(2);
  });
});

describe("two-click pin flow", () => {
  it("selecting one region per frame yields a pin request", () => {
    const vs = freshState();
    expect(vs.click("a", 2)).toEqual({ kind: "selected", side: "a", id: 2 });
    expect(vs.click("b", 2)).toEqual({ kind: "pin", a: 2, b: 2 });
  });

  it("clicking ink or background clears the selection", () => {
    const vs = freshState();
    vs.click("a", 2);
    expect(vs.click("a", 0)).toEqual({ kind: "cleared" });
    expect(vs.selected).toEqual({ a: null, b: null });
    vs.click("a", 2);
    expect(vs.click("b", 1)).toEqual({ kind: "cleared" }); // background
  });

  it("reselecting on the same side replaces the selection", () => {
    const vs = freshState();
    vs.click("a", 2);
    expect(vs.click("a", 3)).toEqual({ kind: "selected", side: "a", id: 3 });
    expect(vs.selected.a).toBe(3);
  });

  it("a rejected pin keeps the selection for adjustment", () => {
    const vs = freshState();
    vs.click("a", 2);
    vs.click("b", 2);
    vs.pinRejected();
    expect(vs.selected).toEqual({ a: 2, b: 2 });
  });

  it("a successful pin adopts the server state and clears selection", () => {
    const vs = freshState();
    vs.click("a", 2);
    vs.click("b", 2);
    const next = mockSession();
    next.correspondence.pairs = [
      { a: 2, b: 2, provenance: "PINNED", score: 1.0 },
      { a: 3, b: 3, provenance: "AUTO", score: 1.0 },
    ];
    next.eval!.mismatch_count = 0;
    vs.pinSucceeded(next);
    expect(vs.selected).toEqual({ a: null, b: null });
    expect(vs.mismatchCount()).toBe(0);
    expect(vs.pairColorFor("b", 2)).toBe("#000020"); // recolored to A2's color
  });
});
