/** Canvas painting for the pair view.
 *
 * The server's id-encoded overlay provides exact region picking; the
 * visible canvas is that same bitmap recolored per pair (colors from the
 * server's region display colors), with hatching for unmatched regions,
 * a veil-plus-highlight for the hovered pair, selection rings and pin
 * badges at centroids.
 */

import type { SessionState } from "./api.js";
import { decodeRegionId, hatchAt, hexToRgb } from "./colors.js";
import type { Side, ViewState } from "./state.js";

export class FrameView {
  readonly ids: Uint32Array;
  readonly width: number;
  readonly height: number;

  constructor(idImage: ImageData) {
    this.width = idImage.width;
    this.height = idImage.height;
    this.ids = new Uint32Array(this.width * this.height);
    const px = idImage.data;
    for (let i = 0, j = 0; i < this.ids.length; i++, j += 4) {
      this.ids[i] = decodeRegionId(px[j]!, px[j + 1]!);
    }
  }

  regionAt(x: number, y: number): number {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return 0;
    return this.ids[y * this.width + x]!;
  }
}

export function paintPairView(
  ctx: CanvasRenderingContext2D,
  view: FrameView,
  side: Side,
  state: ViewState,
): void {
  const img = ctx.createImageData(view.width, view.height);
  const data = img.data;
  const colorCache = new Map<number, [number, number, number] | null>();
  const highlightId = hoveredPartnerId(state, side);
  for (let y = 0, i = 0; y < view.height; y++) {
    for (let x = 0; x < view.width; x++, i++) {
      const id = view.ids[i]!;
      let rgb: [number, number, number];
      if (id === 0) {
        rgb = [0, 0, 0];
      } else {
        let cached = colorCache.get(id);
        if (cached === undefined) {
          const hex = state.pairColorFor(side, id);
          cached = hex === null ? null : hexToRgb(hex);
          colorCache.set(id, cached);
        }
        if (cached === null) {
          // unmatched: gray with diagonal hatching
          rgb = hatchAt(x, y) ? [140, 140, 140] : [221, 221, 221];
        } else {
          rgb = cached;
        }
        if (highlightId !== null && id !== highlightId) {
          rgb = [rgb[0] * 0.55 + 100, rgb[1] * 0.55 + 100, rgb[2] * 0.55 + 100] as [
            number,
            number,
            number,
          ];
        }
      }
      const j = i * 4;
      data[j] = rgb[0];
      data[j + 1] = rgb[1];
      data[j + 2] = rgb[2];
      data[j + 3] = 255;
    }
  }
  ctx.putImageData(img, 0, 0);
  drawBadges(ctx, side, state);
}

function hoveredPartnerId(state: ViewState, side: Side): number | null {
  const h = state.hovered;
  if (!h || !state.session) return null;
  if (h.side === side) return h.id;
  return state.partnerOf(h.side, h.id);
}

function drawBadges(ctx: CanvasRenderingContext2D, side: Side, state: ViewState): void {
  const session = state.session;
  if (!session) return;
  const frame = session.frames[side];
  for (const region of frame.regions) {
    const [cx, cy] = region.centroid;
    if (state.isPinned(side, region.id)) {
      ctx.beginPath();
      ctx.arc(cx, cy, 6, 0, Math.PI * 2);
      ctx.fillStyle = "#222222";
      ctx.fill();
      ctx.fillStyle = "#ffd700";
      ctx.beginPath();
      ctx.arc(cx, cy, 4, 0, Math.PI * 2);
      ctx.fill();
    }
    if (state.selected[side] === region.id) {
      ctx.beginPath();
      ctx.arc(cx, cy, 10, 0, Math.PI * 2);
      ctx.strokeStyle = "#ff3366";
      ctx.lineWidth = 3;
      ctx.stroke();
    }
  }
}

export function paintStrokesView(
  ctx: CanvasRenderingContext2D,
  side: Side,
  strokes: { id: number; points: [number, number][] }[],
  colorOf: (strokeId: number) => string,
  size: [number, number],
): void {
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, size[0], size[1]);
  for (const s of strokes) {
    ctx.beginPath();
    for (let k = 0; k < s.points.length; k++) {
      const [x, y] = s.points[k]!;
      if (k === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    }
    ctx.strokeStyle = colorOf(s.id);
    ctx.lineWidth = 2;
    ctx.stroke();
  }
}

export function paintDepthView(
  ctx: CanvasRenderingContext2D,
  view: FrameView,
  session: SessionState,
  side: Side,
): void {
  const ranks = session.frames[side].depth.ranks;
  const maxRank = Math.max(1, ...Object.values(ranks));
  const img = ctx.createImageData(view.width, view.height);
  const data = img.data;
  for (let i = 0; i < view.ids.length; i++) {
    const id = view.ids[i]!;
    const j = i * 4;
    if (id === 0) {
      data[j] = data[j + 1] = data[j + 2] = 0;
    } else {
      const rank = ranks[String(id)] ?? 0;
      const v = 235 - Math.round((rank / maxRank) * 160); // nearer = lighter
      data[j] = v;
      data[j + 1] = v;
      data[j + 2] = 245;
    }
    data[j + 3] = 255;
  }
  ctx.putImageData(img, 0, 0);
  ctx.fillStyle = "#cc2244";
  ctx.font = "13px sans-serif";
  for (const region of session.frames[side].regions) {
    if (region.is_background) continue;
    const rank = ranks[String(region.id)] ?? 0;
    ctx.fillText(String(rank), region.centroid[0] - 3, region.centroid[1] + 4);
  }
}
