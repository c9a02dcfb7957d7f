/** View state for the correction loop.
 *
 * Pure logic, no DOM: selections, the pin mirror, display mode and the
 * per-region color resolution used by both canvases. The server is the
 * single source of truth — this class only caches its latest state and
 * derives what to draw from it.
 */

import type { CorrPair, SessionState } from "./api.js";

export type Side = "a" | "b";
export type DisplayMode = "regions" | "strokes" | "depth" | "inbetween";

export type ClickOutcome =
  | { kind: "noop" }
  | { kind: "cleared" }
  | { kind: "selected"; side: Side; id: number }
  | { kind: "pin"; a: number; b: number };

export class ViewState {
  session: SessionState | null = null;
  selected: { a: number | null; b: number | null } = { a: null, b: null };
  hovered: { side: Side; id: number } | null = null;
  mode: DisplayMode = "regions";
  t = 0.5;

  applyServerState(state: SessionState): void {
    this.session = state;
    this.selected = { a: null, b: null };
    this.hovered = null;
  }

  private corr(): { toB: Map<number, number>; toA: Map<number, number> } {
    const toB = new Map<number, number>();
    const toA = new Map<number, number>();
    for (const p of this.session?.correspondence.pairs ?? []) {
      toB.set(p.a, p.b);
      toA.set(p.b, p.a);
    }
    return { toB, toA };
  }

  isBackground(side: Side, id: number): boolean {
    const frame = this.session?.frames[side];
    return frame?.regions.find((r) => r.id === id)?.is_background ?? false;
  }

  partnerOf(side: Side, id: number): number | null {
    const { toB, toA } = this.corr();
    return (side === "a" ? toB.get(id) : toA.get(id)) ?? null;
  }

  /** Fill color for a region: its pair color (the A-side partner's display
   * color, so matched pairs render identically), or null when unmatched
   * (drawn hatched). Background regions return "white". */
  pairColorFor(side: Side, id: number): string | null {
    if (!this.session) return null;
    if (this.isBackground(side, id)) return "#ffffff";
    const aSideId = side === "a" ? (this.partnerOf("a", id) !== null ? id : null) : this.partnerOf("b", id);
    if (aSideId === null) return null;
    const region = this.session.frames.a.regions.find((r) => r.id === aSideId);
    return region?.color ?? null;
  }

  pinnedPairs(): CorrPair[] {
    return (this.session?.correspondence.pairs ?? []).filter((p) => p.provenance === "PINNED");
  }

  isPinned(side: Side, id: number): boolean {
    return this.pinnedPairs().some((p) => (side === "a" ? p.a === id : p.b === id));
  }

  /** Mismatch counter shown in the toolbar; null without a reference. */
  mismatchCount(): number | null {
    return this.session?.eval?.mismatch_count ?? null;
  }

  /** One click on a canvas. Selecting a region on each side yields a pin
   * request; clicking ink or background clears the selection. */
  click(side: Side, id: number): ClickOutcome {
    if (!this.session) return { kind: "noop" };
    if (id === 0 || this.isBackground(side, id)) {
      this.selected = { a: null, b: null };
      return { kind: "cleared" };
    }
    this.selected[side] = id;
    const { a, b } = this.selected;
    if (a !== null && b !== null) {
      return { kind: "pin", a, b };
    }
    return { kind: "selected", side, id };
  }

  /** On 409 the selection is retained so the user can adjust one side. */
  pinRejected(): void {}

  pinSucceeded(state: SessionState): void {
    this.applyServerState(state);
  }
}
