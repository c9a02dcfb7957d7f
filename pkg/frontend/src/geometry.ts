/** Small polyline math used by the inbetween preview and its tests. */

export type Point = [number, number];

export function lerpPolyline(a: Point[], b: Point[], t: number): Point[] {
  if (a.length !== b.length) throw new Error("polylines must align");
  return a.map((p, i) => {
    const q = b[i]!;
    return [(1 - t) * p[0] + t * q[0], (1 - t) * p[1] + t * q[1]] as Point;
  });
}

export function maxVertexDistance(a: Point[], b: Point[]): number {
  if (a.length !== b.length) throw new Error("polylines must align");
  let worst = 0;
  for (let i = 0; i < a.length; i++) {
    const dx = a[i]![0] - b[i]![0];
    const dy = a[i]![1] - b[i]![1];
    worst = Math.max(worst, Math.hypot(dx, dy));
  }
  return worst;
}

/** Parse the points of every <polyline> in an SVG document. */
export function parseSvgPolylines(svg: string): Point[][] {
  const out: Point[][] = [];
  const re = /<polyline[^>]*points="([^"]*)"/g;
  let m: RegExpExecArray | null;
  while ((m = re.exec(svg)) !== null) {
    const pts = m[1]!
      .trim()
      .split(/\s+/)
      .filter((s) => s.length)
      .map((pair) => {
        const [x, y] = pair.split(",");
        return [Number(x), Number(y)] as Point;
      });
    if (pts.length) out.push(pts);
  }
  return out;
}
