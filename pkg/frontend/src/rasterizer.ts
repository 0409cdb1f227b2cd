// Client-side mirror of the server's landmark rasterizer. Strokes are drawn
// with integer Bresenham segments on a fixed 1024 reference grid, then
// OR-pooled to the requested resolution, so checksums match the service
// byte for byte.

export const LANDMARK_COUNT = 68;
export const REFERENCE_RESOLUTION = 1024;

export interface Stroke {
  indices: number[];
  closed: boolean;
}

function range(start: number, stop: number): number[] {
  const out = [];
  for (let i = start; i < stop; i++) out.push(i);
  return out;
}

// The 7 facial features of the 68-point convention; lips are one feature
// drawn as two loops.
export const FACIAL_GROUPS: Record<string, Stroke[]> = {
  jaw: [{ indices: range(0, 17), closed: false }],
  right_brow: [{ indices: range(17, 22), closed: false }],
  left_brow: [{ indices: range(22, 27), closed: false }],
  nose: [{ indices: range(27, 36), closed: false }],
  right_eye: [{ indices: range(36, 42), closed: true }],
  left_eye: [{ indices: range(42, 48), closed: true }],
  lips: [
    { indices: range(48, 60), closed: true },
    { indices: range(60, 68), closed: true },
  ],
};

export function linePixels(
  r0: number,
  c0: number,
  r1: number,
  c1: number,
): Array<[number, number]> {
  let r = r0;
  let c = c0;
  let dr = Math.abs(r1 - r0);
  let dc = Math.abs(c1 - c0);
  let sr = r1 > r0 ? 1 : -1;
  let sc = c1 > c0 ? 1 : -1;
  const steep = dr > dc;
  if (steep) {
    [r, c] = [c, r];
    [dr, dc] = [dc, dr];
    [sr, sc] = [sc, sr];
  }
  let err = 2 * dr - dc;
  const pixels: Array<[number, number]> = [];
  for (let i = 0; i < dc; i++) {
    pixels.push(steep ? [c, r] : [r, c]);
    while (err >= 0) {
      r += sr;
      err -= 2 * dc;
    }
    c += sc;
    err += 2 * dr;
  }
  pixels.push([r1, c1]);
  return pixels;
}

function toPixel(x: number, y: number, resolution: number): [number, number] {
  const col = Math.min(Math.floor(x * resolution), resolution - 1);
  const row = Math.min(Math.floor(y * resolution), resolution - 1);
  return [row, col];
}

function orPoolHalf(mask: Uint8Array, size: number): Uint8Array {
  const half = size / 2;
  const out = new Uint8Array(half * half);
  for (let r = 0; r < half; r++) {
    for (let c = 0; c < half; c++) {
      const a = mask[2 * r * size + 2 * c];
      const b = mask[2 * r * size + 2 * c + 1];
      const d = mask[(2 * r + 1) * size + 2 * c];
      const e = mask[(2 * r + 1) * size + 2 * c + 1];
      out[r * half + c] = a | b | d | e;
    }
  }
  return out;
}

export function validLandmarks(points: number[][]): boolean {
  if (points.length !== LANDMARK_COUNT) return false;
  return points.every(
    (p) =>
      p.length === 2 &&
      Number.isFinite(p[0]) &&
      Number.isFinite(p[1]) &&
      p[0] >= 0 &&
      p[0] <= 1 &&
      p[1] >= 0 &&
      p[1] <= 1,
  );
}

export function landmarksToEdgeMap(
  points: number[][],
  resolution: number,
): Uint8Array {
  if (!validLandmarks(points)) {
    throw new Error("landmark template needs 68 finite points in [0, 1]");
  }
  if (
    resolution < 8 ||
    resolution > REFERENCE_RESOLUTION ||
    (resolution & (resolution - 1)) !== 0
  ) {
    throw new Error(`resolution must be a power of two in [8, 1024], got ${resolution}`);
  }
  const ref = REFERENCE_RESOLUTION;
  let mask: Uint8Array = new Uint8Array(ref * ref);
  for (const strokes of Object.values(FACIAL_GROUPS)) {
    for (const stroke of strokes) {
      const pts = stroke.indices.map((i) => toPixel(points[i][0], points[i][1], ref));
      const segments: Array<[[number, number], [number, number]]> = [];
      for (let i = 0; i + 1 < pts.length; i++) segments.push([pts[i], pts[i + 1]]);
      if (stroke.closed) segments.push([pts[pts.length - 1], pts[0]]);
      for (const [[r0, c0], [r1, c1]] of segments) {
        for (const [r, c] of linePixels(r0, c0, r1, c1)) {
          mask[r * ref + c] = 1;
        }
      }
    }
  }
  let size = ref;
  while (size > resolution) {
    mask = orPoolHalf(mask, size);
    size /= 2;
  }
  return mask;
}
