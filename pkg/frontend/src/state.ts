// Editor state: a 68-landmark template plus a freehand binary layer, with
// bounded undo. The exported mask is the union of the rasterized template
// and the freehand layer, strictly binary.

import { landmarksToEdgeMap, LANDMARK_COUNT } from "./rasterizer.js";
import { maskChecksum } from "./checksum.js";

export const HISTORY_DEPTH = 50;

interface Snapshot {
  points: number[][];
  freehand: Uint8Array;
  templateVisible: boolean;
}

export function defaultTemplate(): number[][] {
  const pts: number[][] = [];
  const push = (x: number, y: number) => pts.push([x, y]);
  for (let i = 0; i < 17; i++) {
    const t = Math.PI * (0.15 + (0.7 * (16 - i)) / 16);
    push(0.5 + 0.38 * Math.cos(t), 0.45 + 0.42 * Math.sin(t));
  }
  for (let i = 0; i < 5; i++) {
    push(0.22 + (0.2 * i) / 4, 0.3 - 0.03 * Math.sin((Math.PI * i) / 4));
  }
  for (let i = 0; i < 5; i++) {
    push(0.58 + (0.2 * i) / 4, 0.3 - 0.03 * Math.sin((Math.PI * i) / 4));
  }
  for (let i = 0; i < 4; i++) push(0.5, 0.36 + (0.16 * i) / 3);
  for (let i = 0; i < 5; i++) push(0.44 + (0.12 * i) / 4, 0.56);
  for (let i = 0; i < 6; i++) {
    const a = (2 * Math.PI * i) / 6;
    push(0.33 + 0.05 * Math.cos(a), 0.38 + 0.03 * Math.sin(a));
  }
  for (let i = 0; i < 6; i++) {
    const a = (2 * Math.PI * i) / 6;
    push(0.67 + 0.05 * Math.cos(a), 0.38 + 0.03 * Math.sin(a));
  }
  for (let i = 0; i < 12; i++) {
    const a = (2 * Math.PI * i) / 12;
    push(0.5 + 0.12 * Math.cos(a), 0.7 + 0.05 * Math.sin(a));
  }
  for (let i = 0; i < 8; i++) {
    const a = (2 * Math.PI * i) / 8;
    push(0.5 + 0.07 * Math.cos(a), 0.7 + 0.025 * Math.sin(a));
  }
  return pts;
}

export class MaskEditorState {
  readonly resolution: number;
  points: number[][];
  freehand: Uint8Array;
  templateVisible = true;
  private history: Snapshot[] = [];

  constructor(resolution = 64, points?: number[][]) {
    this.resolution = resolution;
    this.points = points ?? defaultTemplate();
    if (this.points.length !== LANDMARK_COUNT) {
      throw new Error(`template needs ${LANDMARK_COUNT} points`);
    }
    this.freehand = new Uint8Array(resolution * resolution);
  }

  private snapshot(): Snapshot {
    return {
      points: this.points.map((p) => [...p]),
      freehand: this.freehand.slice(),
      templateVisible: this.templateVisible,
    };
  }

  /** Record the current state before a mutation; history depth is bounded. */
  beginEdit(): void {
    this.history.push(this.snapshot());
    if (this.history.length > HISTORY_DEPTH) {
      this.history.shift();
    }
  }

  undo(): boolean {
    const previous = this.history.pop();
    if (!previous) return false;
    this.points = previous.points;
    this.freehand = previous.freehand;
    this.templateVisible = previous.templateVisible;
    return true;
  }

  get historySize(): number {
    return this.history.length;
  }

  movePoint(index: number, x: number, y: number): void {
    this.beginEdit();
    this.points[index] = [
      Math.min(Math.max(x, 0), 1),
      Math.min(Math.max(y, 0), 1),
    ];
  }

  /** Paint or erase freehand cells; one history entry per stroke. */
  paint(cells: Array<[number, number]>, value: 0 | 1): void {
    this.beginEdit();
    for (const [r, c] of cells) {
      if (r >= 0 && r < this.resolution && c >= 0 && c < this.resolution) {
        this.freehand[r * this.resolution + c] = value;
      }
    }
  }

  toggleTemplate(visible: boolean): void {
    this.beginEdit();
    this.templateVisible = visible;
  }

  /** Union of the rasterized template and the freehand layer; strictly 0/1. */
  exportMask(): Uint8Array {
    const mask = this.templateVisible
      ? landmarksToEdgeMap(this.points, this.resolution)
      : new Uint8Array(this.resolution * this.resolution);
    for (let i = 0; i < mask.length; i++) {
      mask[i] = mask[i] | this.freehand[i] ? 1 : 0;
    }
    return mask;
  }

  checksum(): Promise<string> {
    return maskChecksum(this.exportMask());
  }
}
