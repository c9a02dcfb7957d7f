/** Wiring: DOM events, server round-trips, canvas refresh.
 *
 * The page is served by the session service at /ui; API calls are
 * same-origin. Load with ?session=<id> to open an existing session, or use
 * the upload form to create one.
 */

import { ApiClient, type SessionState, type StrokesPayload } from "./api.js";
import { FrameView, paintDepthView, paintPairView, paintStrokesView } from "./render.js";
import { ViewState, type DisplayMode, type Side } from "./state.js";

const api = new ApiClient("");
const state = new ViewState();
let sessionId: string | null = null;
let views: { a: FrameView | null; b: FrameView | null } = { a: null, b: null };
let strokesCache: StrokesPayload | null = null;

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function canvas(side: Side): HTMLCanvasElement {
  return $(`canvas-${side}`) as HTMLCanvasElement;
}

function toast(message: string, kind: "info" | "error" = "info"): void {
  const el = $("toast");
  el.textContent = message;
  el.className = `toast show ${kind}`;
  window.setTimeout(() => (el.className = "toast"), 2600);
}

async function loadIdOverlay(side: Side): Promise<FrameView> {
  const img = new Image();
  img.src = api.overlayUrl(sessionId!, side, "id", state.session?.state_hash);
  await img.decode();
  const c = document.createElement("canvas");
  c.width = img.naturalWidth;
  c.height = img.naturalHeight;
  const ctx = c.getContext("2d", { willReadFrequently: true })!;
  ctx.drawImage(img, 0, 0);
  return new FrameView(ctx.getImageData(0, 0, c.width, c.height));
}

function repaint(): void {
  const session = state.session;
  if (!session) return;
  for (const side of ["a", "b"] as const) {
    const view = views[side];
    if (!view) continue;
    const c = canvas(side);
    c.width = view.width;
    c.height = view.height;
    const ctx = c.getContext("2d")!;
    if (state.mode === "depth") {
      paintDepthView(ctx, view, session, side);
    } else if (state.mode === "strokes" && strokesCache) {
      const colorById = new Map<number, string>();
      strokesCache.pairs.pairs.forEach((p, k) => {
        const hue = (k * 47) % 360;
        const col = `hsl(${hue} 70% 45%)`;
        colorById.set(side === "a" ? p.a : p.b, col);
      });
      const strokes = (side === "a" ? strokesCache.strokes_a : strokesCache.strokes_b).strokes;
      paintStrokesView(ctx, side, strokes, (id) => colorById.get(id) ?? "#bbbbbb", [
        view.width,
        view.height,
      ]);
    } else {
      paintPairView(ctx, view, side, state);
    }
  }
  renderSidebar();
}

function renderSidebar(): void {
  const session = state.session;
  const counter = $("mismatch-counter");
  if (session?.eval) {
    counter.textContent = `mismatched slots: ${session.eval.mismatch_count} | AreaMatch ${session.eval.area_match.toFixed(1)}% | corrections ${session.eval.corrections}`;
  } else {
    counter.textContent = session ? "no reference attached" : "";
  }
  const list = $("pin-list");
  list.innerHTML = "";
  for (const pin of state.pinnedPairs()) {
    const li = document.createElement("li");
    li.textContent = `A${pin.a} ↔ B${pin.b} `;
    const btn = document.createElement("button");
    btn.textContent = "unpin";
    btn.addEventListener("click", () => void unpin(pin.a));
    li.appendChild(btn);
    list.appendChild(li);
  }
  $("session-label").textContent = session ? `session ${session.session_id}` : "no session";
}

async function refreshFromServer(newState: SessionState): Promise<void> {
  state.applyServerState(newState);
  const [a, b] = await Promise.all([loadIdOverlay("a"), loadIdOverlay("b")]);
  views = { a, b };
  strokesCache = await api.strokes(sessionId!);
  repaint();
  if (state.mode === "inbetween") await refreshInbetween();
}

async function unpin(a: number): Promise<void> {
  try {
    const newState = await api.deletePin(sessionId!, a);
    await refreshFromServer(newState);
    toast(`unpinned A${a}`);
  } catch (err) {
    toast(String(err), "error");
  }
}

function canvasPosition(ev: MouseEvent, side: Side): [number, number] {
  const c = canvas(side);
  const rect = c.getBoundingClientRect();
  const x = Math.floor(((ev.clientX - rect.left) / rect.width) * c.width);
  const y = Math.floor(((ev.clientY - rect.top) / rect.height) * c.height);
  return [x, y];
}

async function onCanvasClick(ev: MouseEvent, side: Side): Promise<void> {
  const view = views[side];
  if (!view || !sessionId) return;
  const [x, y] = canvasPosition(ev, side);
  const id = view.regionAt(x, y);
  const outcome = state.click(side, id);
  repaint();
  if (outcome.kind === "pin") {
    const result = await api.postPin(sessionId, outcome.a, outcome.b);
    if (result.ok && result.state) {
      state.pinSucceeded(result.state);
      await refreshFromServer(result.state);
      toast(`pinned A${outcome.a} ↔ B${outcome.b}`);
    } else if (result.status === 409) {
      state.pinRejected(); // selection retained for adjustment
      toast(`conflict: ${result.detail}`, "error");
    } else {
      toast(`pin failed: ${result.detail}`, "error");
    }
  }
}

function onCanvasMove(ev: MouseEvent, side: Side): void {
  const view = views[side];
  if (!view) return;
  const [x, y] = canvasPosition(ev, side);
  const id = view.regionAt(x, y);
  const next = id > 0 && !state.isBackground(side, id) ? { side, id } : null;
  const changed =
    (next === null) !== (state.hovered === null) ||
    (next !== null && (state.hovered?.id !== next.id || state.hovered?.side !== next.side));
  if (changed && state.mode === "regions") {
    state.hovered = next;
    repaint();
  }
}

let inbetweenTimer: number | undefined;

async function refreshInbetween(): Promise<void> {
  if (!sessionId) return;
  const svg = await api.inbetweenSvg(sessionId, state.t);
  if (!svg.includes("<polyline")) {
    $("inbetween-host").innerHTML =
      '<p class="hint">no matched strokes to interpolate — pin some region pairs first</p>';
    return;
  }
  $("inbetween-host").innerHTML = svg;
}

function scheduleInbetween(): void {
  window.clearTimeout(inbetweenTimer);
  inbetweenTimer = window.setTimeout(() => void refreshInbetween(), 120);
}

function setMode(mode: DisplayMode): void {
  state.mode = mode;
  $("inbetween-panel").style.display = mode === "inbetween" ? "block" : "none";
  $("canvases").style.display = mode === "inbetween" ? "none" : "flex";
  document
    .querySelectorAll<HTMLButtonElement>("#modes button")
    .forEach((b) => b.classList.toggle("active", b.dataset.mode === mode));
  if (mode === "inbetween") void refreshInbetween();
  else repaint();
}

async function openSession(id: string): Promise<void> {
  sessionId = id;
  const url = new URL(window.location.href);
  url.searchParams.set("session", id);
  window.history.replaceState(null, "", url.toString());
  try {
    await refreshFromServer(await api.getSession(id));
  } catch (err) {
    toast(`cannot load session: ${err}`, "error");
  }
}

async function createFromUpload(): Promise<void> {
  const fa = ($("file-a") as HTMLInputElement).files?.[0];
  const fb = ($("file-b") as HTMLInputElement).files?.[0];
  if (!fa || !fb) {
    toast("choose two keyframe PNGs first", "error");
    return;
  }
  try {
    const id = await api.createSession(fa, fb);
    await openSession(id);
    toast(`created session ${id}`);
  } catch (err) {
    toast(String(err), "error");
  }
}

function boot(): void {
  for (const side of ["a", "b"] as const) {
    canvas(side).addEventListener("click", (ev) => void onCanvasClick(ev, side));
    canvas(side).addEventListener("mousemove", (ev) => onCanvasMove(ev, side));
    canvas(side).addEventListener("mouseleave", () => {
      if (state.hovered) {
        state.hovered = null;
        repaint();
      }
    });
  }
  document.querySelectorAll<HTMLButtonElement>("#modes button").forEach((b) => {
    b.addEventListener("click", () => setMode(b.dataset.mode as DisplayMode));
  });
  const slider = $("t-slider") as HTMLInputElement;
  slider.addEventListener("input", () => {
    state.t = Number(slider.value);
    $("t-value").textContent = state.t.toFixed(2);
    scheduleInbetween();
  });
  $("create-btn").addEventListener("click", () => void createFromUpload());
  const fromUrl = new URL(window.location.href).searchParams.get("session");
  if (fromUrl) void openSession(fromUrl);
}

boot();
