import { describe, expect, it } from "vitest";

import { lerpPolyline, maxVertexDistance, parseSvgPolylines, type Point } from "../src/geometry.js";

const A: Point[] = [[0, 0], [10, 0], [20, 5]];
const B: Point[] = [[0, 10], [10, 10], [20, 15]];

describe("lerpPolyline", () => {
  it("reproduces the endpoints at t = 0 and t = 1", () => {
    expect(lerpPolyline(A, B, 0)).toEqual(A);
    expect(lerpPolyline(A, B, 1)).toEqual(B);
  });

  it("hits the midpoint at t = 0.5", () => {
    expect(lerpPolyline(A, B, 0.5)).toEqual([[0, 5], [10, 5], [20, 10]]);
  });

  it("rejects misaligned polylines", () => {
    expect(() => lerpPolyline(A, B.slice(1), 0.5)).toThrow();
  });
});

describe("maxVertexDistance", () => {
  it("measures the worst vertex", () => {
    expect(maxVertexDistance(A, B)).toBe(10);
    expect(maxVertexDistance(A, A)).toBe(0);
  });
});

describe("parseSvgPolylines", () => {
  it("extracts every polyline's points", () => {
    const svg = `<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10">
      <rect width="10" height="10" fill="white"/>
      <polyline points="0.00,1.00 2.50,3.25" fill="none" stroke="#000000"/>
      <polyline points="4,4 5,5 6,6" fill="none" stroke="#ff0000"/>
    </svg>`;
    const polys = parseSvgPolylines(svg);
    expect(polys).toHaveLength(2);
    expect(polys[0]).toEqual([[0, 1], [2.5, 3.25]]);
    expect(polys[1]).toEqual([[4, 4], [5, 5], [6, 6]]);
  });
});
