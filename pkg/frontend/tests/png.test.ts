import { inflateSync } from "node:zlib";
import { describe, expect, it } from "vitest";

import { encodeMaskPng, toBase64 } from "../src/png.js";

function readChunks(png: Uint8Array) {
  const chunks: Array<{ kind: string; data: Uint8Array }> = [];
  let at = 8; // skip signature
  while (at < png.length) {
    const len =
      (png[at] << 24) | (png[at + 1] << 16) | (png[at + 2] << 8) | png[at + 3];
    const kind = String.fromCharCode(...png.subarray(at + 4, at + 8));
    chunks.push({ kind, data: png.subarray(at + 8, at + 8 + len) });
    at += 12 + len;
  }
  return chunks;
}

describe("mask png encoder", () => {
  it("produces a well-formed 1-bit png that round-trips the pixels", () => {
    const size = 16;
    const mask = new Uint8Array(size * size);
    mask[0] = 1;
    mask[5 * size + 7] = 1;
    mask[3 * size + 15] = 1; // last column exercises bit packing
    const png = encodeMaskPng(mask, size);

    expect(Array.from(png.subarray(0, 8))).toEqual([
      0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a,
    ]);
    const chunks = readChunks(png);
    expect(chunks.map((c) => c.kind)).toEqual(["IHDR", "IDAT", "IEND"]);
    const ihdr = chunks[0].data;
    const width = (ihdr[0] << 24) | (ihdr[1] << 16) | (ihdr[2] << 8) | ihdr[3];
    expect(width).toBe(size);
    expect(ihdr[8]).toBe(1); // bit depth
    expect(ihdr[9]).toBe(0); // grayscale

    const rowBytes = Math.ceil(size / 8);
    const raw = inflateSync(chunks[1].data);
    expect(raw.length).toBe(size * (rowBytes + 1));
    for (let r = 0; r < size; r++) {
      expect(raw[r * (rowBytes + 1)]).toBe(0); // filter byte
      for (let c = 0; c < size; c++) {
        const bit = (raw[r * (rowBytes + 1) + 1 + (c >> 3)] >> (7 - (c & 7))) & 1;
        expect(bit, `pixel (${r}, ${c})`).toBe(mask[r * size + c]);
      }
    }
  });

  it("is deterministic byte for byte", () => {
    const mask = new Uint8Array(64 * 64);
    for (let i = 0; i < mask.length; i += 7) mask[i] = 1;
    const a = encodeMaskPng(mask, 64);
    const b = encodeMaskPng(mask, 64);
    expect(toBase64(a)).toBe(toBase64(b));
  });

  it("rejects mismatched sizes", () => {
    expect(() => encodeMaskPng(new Uint8Array(10), 4)).toThrow();
  });
});
