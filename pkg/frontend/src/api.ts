/** Typed client for the inkmatch session service. The UI never computes
 * correspondences itself; every displayed pairing comes from this API. */

export interface NeighborInfo {
  id: number;
  angle: number;
  shared_length: number;
}

export interface RegionInfo {
  id: number;
  area: number;
  centroid: [number, number];
  border_contact: number;
  is_background: boolean;
  color: string;
  neighbors: NeighborInfo[];
}

export interface FrameInfo {
  width: number;
  height: number;
  regions: RegionInfo[];
  depth: { ranks: Record<string, number>; background: number | null };
}

export interface CorrPair {
  a: number;
  b: number;
  provenance: "AUTO" | "PINNED";
  score: number;
}

export interface CorrespondenceInfo {
  pairs: CorrPair[];
  unmatched_a: number[];
  unmatched_b: number[];
  background_a: number | null;
  background_b: number | null;
  seed_history: [number, number][];
  mode: string;
}

export interface MismatchSlot {
  side: "a" | "b";
  id: number;
  auto: number | null;
  reference: number | null;
}

export interface EvalInfo {
  area_match: number;
  mismatches: MismatchSlot[];
  mismatch_count: number;
  corrections: number;
}

export interface SessionState {
  session_id: string;
  created: string;
  updated: string;
  config: Record<string, unknown>;
  frames: { a: FrameInfo; b: FrameInfo };
  correspondence: CorrespondenceInfo;
  pins: [number, number][];
  events: { kind: string; area_match: number | null }[];
  state_hash: string;
  eval: EvalInfo | null;
}

export interface StrokePairInfo {
  a: number;
  b: number;
  confidence: number;
  vertices_a: [number, number][];
  vertices_b: [number, number][];
}

export interface StrokeInfo {
  id: number;
  region_pair: [number, number];
  closed: boolean;
  points: [number, number][];
}

export interface StrokesPayload {
  strokes_a: { strokes: StrokeInfo[] };
  strokes_b: { strokes: StrokeInfo[] };
  pairs: { pairs: StrokePairInfo[]; unmatched_a: number[]; unmatched_b: number[] };
}

export interface PinResult {
  ok: boolean;
  status: number;
  state?: SessionState;
  detail?: string;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  async createSession(
    imageA: Blob,
    imageB: Blob,
    reference?: [number, number][],
    config?: Record<string, unknown>,
  ): Promise<string> {
    const form = new FormData();
    form.append("image_a", imageA, "a.png");
    form.append("image_b", imageB, "b.png");
    if (reference) form.append("reference", JSON.stringify({ region_pairs: reference }));
    if (config) form.append("config", JSON.stringify(config));
    const resp = await fetch(this.url("/sessions"), { method: "POST", body: form });
    if (resp.status !== 201) throw new Error(`create failed: ${resp.status} ${await resp.text()}`);
    const body = (await resp.json()) as { session_id: string };
    return body.session_id;
  }

  async getSession(id: string): Promise<SessionState> {
    const resp = await fetch(this.url(`/sessions/${id}`));
    if (!resp.ok) throw new Error(`get session failed: ${resp.status}`);
    return (await resp.json()) as SessionState;
  }

  async postPin(id: string, a: number, b: number): Promise<PinResult> {
    const resp = await fetch(this.url(`/sessions/${id}/pins`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ a, b }),
    });
    if (resp.status === 200) {
      return { ok: true, status: 200, state: (await resp.json()) as SessionState };
    }
    const detail = ((await resp.json()) as { detail?: string }).detail ?? "pin failed";
    return { ok: false, status: resp.status, detail };
  }

  async deletePin(id: string, a: number): Promise<SessionState> {
    const resp = await fetch(this.url(`/sessions/${id}/pins/${a}`), { method: "DELETE" });
    if (!resp.ok) throw new Error(`unpin failed: ${resp.status}`);
    return (await resp.json()) as SessionState;
  }

  async strokes(id: string): Promise<StrokesPayload> {
    const resp = await fetch(this.url(`/sessions/${id}/strokes`));
    if (!resp.ok) throw new Error(`strokes failed: ${resp.status}`);
    return (await resp.json()) as StrokesPayload;
  }

  async inbetweenSvg(id: string, t: number): Promise<string> {
    const resp = await fetch(this.url(`/sessions/${id}/inbetween?t=${t}`));
    if (!resp.ok) throw new Error(`inbetween failed: ${resp.status}`);
    return await resp.text();
  }

  overlayUrl(id: string, side: "a" | "b", colors: "pair" | "id", bust?: string): string {
    const tag = bust ? `&v=${encodeURIComponent(bust)}` : "";
    return this.url(`/sessions/${id}/overlay/${side}.png?colors=${colors}${tag}`);
  }
}
