/** Full round-trip against a live backend: load a seeded session with one
 * known swap, pin it with two clicks, watch both regions recolor and the
 * mismatch counter reach zero, and check the inbetween endpoints at
 * t in {0, 1} against the keyframe stroke overlays within 1 px.
 *
 * Spawns `inkmatch serve` (the real Python service); requires the primary
 * package to be installed in the ambient Python environment.
 */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient, type SessionState } from "../src/api.js";
import { maxVertexDistance, parseSvgPolylines, type Point } from "../src/geometry.js";
import { ViewState } from "../src/state.js";

let server: ChildProcess | null = null;
let api: ApiClient;
let sessionId: string;
let fixtureDir: string;

async function freePort(): Promise<number> {
  return await new Promise((resolve, reject) => {
    const srv = createServer();
    srv.once("error", reject);
    srv.listen(0, "127.0.0.1", () => {
      const port = (srv.address() as { port: number }).port;
      srv.close(() => resolve(port));
    });
  });
}

async function waitForHealth(base: string, tries = 120): Promise<void> {
  for (let i = 0; i < tries; i++) {
    try {
      const resp = await fetch(`${base}/healthz`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 500));
  }
  throw new Error("backend did not become healthy");
}

beforeAll(async () => {
  fixtureDir = mkdtempSync(join(tmpdir(), "inkmatch-ui-"));
  const gen = spawnSync("python3", [join(__dirname, "make_fixtures.py"), fixtureDir], {
    encoding: "utf-8",
  });
  if (gen.status !== 0) {
    throw new Error(`fixture generation failed: ${gen.stderr}`);
  }
  const port = await freePort();
  server = spawn("inkmatch", ["serve", "--port", String(port)], {
    stdio: ["ignore", "pipe", "pipe"],
  });
  const base = `http://127.0.0.1:${port}`;
  await waitForHealth(base);
  api = new ApiClient(base);

  const blob = (name: string) => new Blob([readFileSync(join(fixtureDir, name))]);
  const reference = JSON.parse(readFileSync(join(fixtureDir, "ref.json"), "utf-8"))
    .region_pairs as [number, number][];
  sessionId = await api.createSession(blob("a.png"), blob("b.png"), reference);
}, 240_000);

afterAll(() => {
  server?.kill();
});

describe("seeded session with one known swap", () => {
  let initial: SessionState;

  it("loads with exactly one swapped duo", async () => {
    initial = await api.getSession(sessionId);
    expect(initial.eval).not.toBeNull();
    expect(initial.eval!.area_match).toBeLessThan(100);
    const wrongA = initial.eval!.mismatches.filter((m) => m.side === "a");
    expect(wrongA).toHaveLength(2); // one duo = two mismatched a-slots
  });

  it("two clicks pin the duo; both regions recolor and the counter hits 0", async () => {
    const vs = new ViewState();
    vs.applyServerState(initial);
    const duo = initial.eval!.mismatches.filter((m) => m.side === "a");
    const [first, second] = [duo[0]!, duo[1]!];

    const colorsBefore = {
      bFirst: vs.pairColorFor("b", first.reference!),
      bSecond: vs.pairColorFor("b", second.reference!),
    };

    // click the region in frame A, then its true partner in frame B
    const select = vs.click("a", first.id);
    expect(select.kind).toBe("selected");
    const outcome = vs.click("b", first.reference!);
    expect(outcome).toEqual({ kind: "pin", a: first.id, b: first.reference });

    const result = await api.postPin(sessionId, first.id, first.reference!);
    expect(result.ok).toBe(true);
    vs.pinSucceeded(result.state!);

    // one refresh: the counter is zero and both duo regions recolored
    expect(vs.mismatchCount()).toBe(0);
    expect(result.state!.eval!.area_match).toBe(100);
    const colorsAfter = {
      bFirst: vs.pairColorFor("b", first.reference!),
      bSecond: vs.pairColorFor("b", second.reference!),
    };
    expect(colorsAfter.bFirst).not.toBe(colorsBefore.bFirst);
    expect(colorsAfter.bSecond).not.toBe(colorsBefore.bSecond);
    const pinned = result.state!.correspondence.pairs.filter((p) => p.provenance === "PINNED");
    expect(pinned).toEqual([
      { a: first.id, b: first.reference, provenance: "PINNED", score: pinned[0]!.score },
    ]);
  });

  it("the pair-colored overlays change after the pin", async () => {
    // the overlay is server-rendered; re-fetching after the pin must differ
    const before = await fetch(api.overlayUrl(sessionId, "b", "pair", "pre"));
    const again = await fetch(api.overlayUrl(sessionId, "b", "pair", "post"));
    expect(before.status).toBe(200);
    const b1 = Buffer.from(await before.arrayBuffer());
    const b2 = Buffer.from(await again.arrayBuffer());
    expect(b1.equals(b2)).toBe(true); // same state, stable bytes

    const undone = await api.deletePin(sessionId, (await api.getSession(sessionId)).pins[0]![0]);
    const b3 = Buffer.from(
      await (await fetch(api.overlayUrl(sessionId, "b", "pair", "undo"))).arrayBuffer(),
    );
    expect(b3.equals(b2)).toBe(false); // unpin recolors the canvas image
    // re-apply for the remaining tests
    const wrong = undone.eval!.mismatches.filter((m) => m.side === "a")[0]!;
    await api.postPin(sessionId, wrong.id, wrong.reference!);
  });

  it("inbetween at t in {0, 1} matches the keyframe strokes within 1 px", async () => {
    const strokes = await api.strokes(sessionId);
    const pairs = strokes.pairs.pairs;
    expect(pairs.length).toBeGreaterThan(0);
    for (const [t, key] of [[0, "vertices_a"], [1, "vertices_b"]] as const) {
      const svg = await api.inbetweenSvg(sessionId, t);
      const polys = parseSvgPolylines(svg);
      expect(polys).toHaveLength(pairs.length);
      for (let k = 0; k < pairs.length; k++) {
        const want = pairs[k]![key] as Point[];
        expect(maxVertexDistance(polys[k]!, want)).toBeLessThanOrEqual(1.0);
      }
    }
  });

  it("409 on a conflicting pin leaves the state untouched", async () => {
    const state = await api.getSession(sessionId);
    const pinnedA = state.pins[0]![0];
    const result = await api.postPin(sessionId, pinnedA, 2);
    expect(result.ok).toBe(false);
    expect(result.status).toBe(409);
    const after = await api.getSession(sessionId);
    expect(after.state_hash).toBe(state.state_hash);
  });
});
