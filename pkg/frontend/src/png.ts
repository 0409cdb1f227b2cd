// Minimal deterministic grayscale PNG encoder: 8-bit, color type 0, filter
// 0 scanlines, zlib stream built from stored (uncompressed) deflate blocks.
// Deterministic bytes keep repeated requests byte-identical.

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let v = n;
    for (let k = 0; k < 8; k++) {
      v = v & 1 ? 0xedb88320 ^ (v >>> 1) : v >>> 1;
    }
    table[n] = v >>> 0;
  }
  return table;
})();

function crc32(bytes: Uint8Array): number {
  let crc = 0xffffffff;
  for (const b of bytes) {
    crc = CRC_TABLE[(crc ^ b) & 0xff] ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function adler32(bytes: Uint8Array): number {
  let a = 1;
  let b = 0;
  for (const byte of bytes) {
    a = (a + byte) % 65521;
    b = (b + a) % 65521;
  }
  return ((b << 16) | a) >>> 0;
}

function u32(value: number): Uint8Array {
  return new Uint8Array([
    (value >>> 24) & 0xff,
    (value >>> 16) & 0xff,
    (value >>> 8) & 0xff,
    value & 0xff,
  ]);
}

function concat(parts: Uint8Array[]): Uint8Array {
  const total = parts.reduce((n, p) => n + p.length, 0);
  const out = new Uint8Array(total);
  let at = 0;
  for (const part of parts) {
    out.set(part, at);
    at += part.length;
  }
  return out;
}

function chunk(kind: string, data: Uint8Array): Uint8Array {
  const tag = new TextEncoder().encode(kind);
  const body = concat([tag, data]);
  return concat([u32(data.length), body, u32(crc32(body))]);
}

function zlibStored(data: Uint8Array): Uint8Array {
  const parts: Uint8Array[] = [new Uint8Array([0x78, 0x01])];
  const blockSize = 65535;
  for (let at = 0; at < data.length || at === 0; at += blockSize) {
    const slice = data.subarray(at, Math.min(at + blockSize, data.length));
    const final = at + blockSize >= data.length ? 1 : 0;
    const len = slice.length;
    parts.push(
      new Uint8Array([final, len & 0xff, (len >>> 8) & 0xff, ~len & 0xff, (~len >>> 8) & 0xff]),
    );
    parts.push(slice);
    if (final) break;
  }
  parts.push(u32(adler32(data)));
  return concat(parts);
}

/** Encode a square {0,1} mask as a 1-bit grayscale PNG (bit depth 1,
 * pixels packed 8 per byte, most significant bit leftmost). */
export function encodeMaskPng(mask: Uint8Array, size: number): Uint8Array {
  if (mask.length !== size * size) {
    throw new Error(`mask length ${mask.length} does not match size ${size}`);
  }
  const rowBytes = Math.ceil(size / 8);
  const scanlines = new Uint8Array(size * (rowBytes + 1));
  for (let r = 0; r < size; r++) {
    const rowStart = r * (rowBytes + 1);
    scanlines[rowStart] = 0; // filter type 0
    for (let c = 0; c < size; c++) {
      if (mask[r * size + c]) {
        scanlines[rowStart + 1 + (c >> 3)] |= 0x80 >> (c & 7);
      }
    }
  }
  const ihdr = concat([u32(size), u32(size), new Uint8Array([1, 0, 0, 0, 0])]);
  return concat([
    new Uint8Array([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", zlibStored(scanlines)),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function toBase64(bytes: Uint8Array): string {
  const nodeBuffer = (globalThis as Record<string, any>).Buffer;
  if (nodeBuffer) {
    return nodeBuffer.from(bytes).toString("base64");
  }
  let binary = "";
  for (const b of bytes) binary += String.fromCharCode(b);
  return btoa(binary);
}
