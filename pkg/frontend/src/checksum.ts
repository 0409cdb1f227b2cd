// Mask checksums match the service: sha256 over the raw {0,1} bytes in
// row-major order. WebCrypto is available in browsers and Node 20 alike.

export async function sha256Hex(bytes: Uint8Array): Promise<string> {
  const digest = await crypto.subtle.digest("SHA-256", bytes as BufferSource);
  return Array.from(new Uint8Array(digest))
    .map((b) => b.toString(16).padStart(2, "0"))
    .join("");
}

export function maskChecksum(mask: Uint8Array): Promise<string> {
  return sha256Hex(mask);
}
