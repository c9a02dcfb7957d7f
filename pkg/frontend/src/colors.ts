/** Pixel/color helpers shared by the canvas views. Region picking reads the
 * id-encoded overlay where a pixel's region is exactly R + 256*G (ink = 0),
 * so a click maps to a region without any client-side geometry. */

export function decodeRegionId(r: number, g: number): number {
  return r + 256 * g;
}

export function hexToRgb(hex: string): [number, number, number] {
  const h = hex.startsWith("#") ? hex.slice(1) : hex;
  return [
    parseInt(h.slice(0, 2), 16),
    parseInt(h.slice(2, 4), 16),
    parseInt(h.slice(4, 6), 16),
  ];
}

export function rgbToHex(r: number, g: number, b: number): string {
  const p = (v: number) => v.toString(16).padStart(2, "0");
  return `#${p(r)}${p(g)}${p(b)}`;
}

/** Diagonal hatching for unmatched regions: true where a hatch line falls. */
export function hatchAt(x: number, y: number, period = 7, width = 2): boolean {
  return ((x + y) % period + period) % period < width;
}

export const INK = "#000000";
export const UNMATCHED_FILL = "#cccccc";
export const HIGHLIGHT = "#ffffff";
export const SELECT_RING = "#ff3366";
