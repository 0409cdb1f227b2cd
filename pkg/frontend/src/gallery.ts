// Seed gallery with stale-response protection: a slot only ever displays
// an image whose recorded mask checksum matches the mask at display time;
// responses that arrive after the mask changed are discarded.

import type { ServiceClient, SynthesizeResponse } from "./api.js";

export type SlotStatus = "pending" | "done" | "stale" | "error";

export interface GallerySlot {
  seed: number;
  status: SlotStatus;
  imagePng?: string; // base64
  maskChecksum: string;
  error?: string;
}

export class Gallery {
  slots: GallerySlot[] = [];
  onChange: (() => void) | null = null;

  constructor(
    private client: ServiceClient,
    private currentChecksum: () => Promise<string>,
  ) {}

  private notify(): void {
    this.onChange?.();
  }

  /** One synthesis request for a row of seeds against the current mask. */
  async fill(maskPngBase64: string, checksum: string, seeds: number[]): Promise<void> {
    this.slots = seeds.map((seed) => ({
      seed,
      status: "pending" as SlotStatus,
      maskChecksum: checksum,
    }));
    this.notify();

    let response: SynthesizeResponse;
    try {
      response = await this.client.synthesize(maskPngBase64, seeds);
    } catch (error) {
      const live = await this.currentChecksum();
      for (const slot of this.slots) {
        if (slot.maskChecksum !== checksum) continue;
        slot.status = slot.maskChecksum === live ? "error" : "stale";
        slot.error = error instanceof Error ? error.message : String(error);
      }
      this.notify();
      return;
    }

    // the mask may have been edited while the request was in flight; a
    // response for an outdated checksum must never populate the gallery
    const live = await this.currentChecksum();
    if (live !== checksum) {
      for (const slot of this.slots) {
        if (slot.maskChecksum === checksum && slot.status === "pending") {
          slot.status = "stale";
        }
      }
      this.notify();
      return;
    }

    response.images_png.forEach((image, i) => {
      const slot = this.slots[i];
      if (slot && slot.maskChecksum === checksum && slot.status === "pending") {
        slot.imagePng = image;
        slot.status = "done";
      }
    });
    this.notify();
  }

  /** Replace the seeds and refresh against the current mask. */
  async reroll(maskPngBase64: string, checksum: string, seeds: number[]): Promise<void> {
    await this.fill(maskPngBase64, checksum, seeds);
  }

  /** Invariant check: every displayed image matches the given checksum. */
  displayedImagesConsistentWith(checksum: string): boolean {
    return this.slots.every(
      (slot) => slot.status !== "done" || slot.maskChecksum === checksum,
    );
  }
}
