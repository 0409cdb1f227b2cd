// mask-studio: draw an edge mask, synthesize variations, iterate.

import { ServiceClient } from "./api.js";
import { Gallery } from "./gallery.js";
import { MaskEditorState } from "./state.js";
import { encodeMaskPng, toBase64 } from "./png.js";
import { linePixels } from "./rasterizer.js";

const RESOLUTION = 64;
const SCALE = 6;

const app = document.querySelector<HTMLDivElement>("#app");
if (!app) throw new Error("missing #app container");

app.innerHTML = `
  <h1>mask studio</h1>
  <div class="row">
    <div>
      <canvas id="editor" width="${RESOLUTION * SCALE}" height="${RESOLUTION * SCALE}"></canvas>
      <div class="toolbar">
        <label><input type="radio" name="mode" value="move" checked> move landmarks</label>
        <label><input type="radio" name="mode" value="draw"> draw</label>
        <label><input type="radio" name="mode" value="erase"> erase</label>
        <label><input type="checkbox" id="template" checked> template</label>
        <button id="undo">undo</button>
      </div>
      <div class="toolbar">
        <label>server <input id="server" value="http://127.0.0.1:8000" size="24"></label>
        <label>seeds <input id="seeds" value="1,2,3,4" size="12"></label>
        <button id="generate">generate</button>
        <button id="reroll">re-roll</button>
        <span id="status"></span>
      </div>
    </div>
    <div id="gallery" class="gallery"></div>
  </div>
`;

const canvas = document.getElementById("editor") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const statusEl = document.getElementById("status")!;
const galleryEl = document.getElementById("gallery")!;

const state = new MaskEditorState(RESOLUTION);
let client = new ServiceClient((document.getElementById("server") as HTMLInputElement).value);
const gallery = new Gallery(client, () => state.checksum());

function mode(): string {
  const checked = document.querySelector<HTMLInputElement>("input[name=mode]:checked");
  return checked?.value ?? "move";
}

function redraw(): void {
  ctx.fillStyle = "#111";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  const mask = state.exportMask();
  ctx.fillStyle = "#eee";
  for (let r = 0; r < RESOLUTION; r++) {
    for (let c = 0; c < RESOLUTION; c++) {
      if (mask[r * RESOLUTION + c]) {
        ctx.fillRect(c * SCALE, r * SCALE, SCALE, SCALE);
      }
    }
  }
  if (state.templateVisible && mode() === "move") {
    ctx.fillStyle = "#e33";
    for (const [x, y] of state.points) {
      ctx.fillRect(x * canvas.width - 2, y * canvas.height - 2, 4, 4);
    }
  }
}

function renderGallery(): void {
  galleryEl.innerHTML = "";
  for (const slot of gallery.slots) {
    const card = document.createElement("div");
    card.className = `slot ${slot.status}`;
    const label = document.createElement("div");
    label.textContent = `seed ${slot.seed} - ${slot.status}`;
    card.append(label);
    if (slot.status === "done" && slot.imagePng) {
      const img = document.createElement("img");
      img.src = `data:image/png;base64,${slot.imagePng}`;
      img.width = RESOLUTION * 3;
      img.height = RESOLUTION * 3;
      card.append(img);
    }
    if (slot.status === "error" && slot.error) {
      const err = document.createElement("div");
      err.textContent = slot.error;
      const retry = document.createElement("button");
      retry.textContent = "retry";
      retry.onclick = () => generate();
      card.append(err, retry);
    }
    galleryEl.append(card);
  }
}
gallery.onChange = renderGallery;

// --- pointer handling ----------------------------------------------------

let dragging: number | null = null;
let painting = false;
let lastCell: [number, number] | null = null;
let strokeCells: Array<[number, number]> = [];

function cellAt(event: MouseEvent): [number, number] {
  const rect = canvas.getBoundingClientRect();
  const c = Math.floor(((event.clientX - rect.left) / rect.width) * RESOLUTION);
  const r = Math.floor(((event.clientY - rect.top) / rect.height) * RESOLUTION);
  return [Math.min(Math.max(r, 0), RESOLUTION - 1), Math.min(Math.max(c, 0), RESOLUTION - 1)];
}

canvas.addEventListener("mousedown", (event) => {
  if (mode() === "move") {
    const rect = canvas.getBoundingClientRect();
    const x = (event.clientX - rect.left) / rect.width;
    const y = (event.clientY - rect.top) / rect.height;
    let best = -1;
    let bestDist = 0.03;
    state.points.forEach(([px, py], i) => {
      const d = Math.hypot(px - x, py - y);
      if (d < bestDist) {
        best = i;
        bestDist = d;
      }
    });
    dragging = best >= 0 ? best : null;
    if (dragging !== null) state.beginEdit();
  } else {
    painting = true;
    strokeCells = [cellAt(event)];
    lastCell = strokeCells[0];
  }
});

canvas.addEventListener("mousemove", (event) => {
  if (dragging !== null) {
    const rect = canvas.getBoundingClientRect();
    state.points[dragging] = [
      Math.min(Math.max((event.clientX - rect.left) / rect.width, 0), 1),
      Math.min(Math.max((event.clientY - rect.top) / rect.height, 0), 1),
    ];
    redraw();
  } else if (painting) {
    const cell = cellAt(event);
    if (lastCell) {
      for (const px of linePixels(lastCell[0], lastCell[1], cell[0], cell[1])) {
        strokeCells.push(px);
      }
    }
    lastCell = cell;
    // live preview without committing history
    const value = mode() === "draw" ? 1 : 0;
    for (const [r, c] of strokeCells) {
      state.freehand[r * RESOLUTION + c] = value;
    }
    redraw();
  }
});

window.addEventListener("mouseup", () => {
  if (painting && strokeCells.length) {
    // rewind the preview, then commit the stroke through the history path
    const value = mode() === "draw" ? 1 : 0;
    for (const [r, c] of strokeCells) {
      state.freehand[r * RESOLUTION + c] = value ? 0 : 1;
    }
    state.paint(strokeCells, value as 0 | 1);
  }
  dragging = null;
  painting = false;
  strokeCells = [];
  lastCell = null;
  redraw();
});

// --- controls --------------------------------------------------------------

document.getElementById("undo")!.addEventListener("click", () => {
  state.undo();
  (document.getElementById("template") as HTMLInputElement).checked =
    state.templateVisible;
  redraw();
});

document.getElementById("template")!.addEventListener("change", (event) => {
  state.toggleTemplate((event.target as HTMLInputElement).checked);
  redraw();
});

document.getElementById("server")!.addEventListener("change", (event) => {
  client = new ServiceClient((event.target as HTMLInputElement).value);
});

function currentSeeds(): number[] {
  const raw = (document.getElementById("seeds") as HTMLInputElement).value;
  return raw
    .split(",")
    .map((s) => parseInt(s.trim(), 10))
    .filter((n) => Number.isFinite(n));
}

async function generate(seeds = currentSeeds()): Promise<void> {
  const mask = state.exportMask();
  const checksum = await state.checksum();
  const png = toBase64(encodeMaskPng(mask, RESOLUTION));
  statusEl.textContent = "generating...";
  const fresh = new Gallery(client, () => state.checksum());
  fresh.onChange = () => {
    gallery.slots = fresh.slots;
    renderGallery();
  };
  await fresh.fill(png, checksum, seeds);
  statusEl.textContent = "";
}

document.getElementById("generate")!.addEventListener("click", () => generate());
document.getElementById("reroll")!.addEventListener("click", () => {
  const seeds = currentSeeds().map(() => Math.floor(Math.random() * 1_000_000));
  (document.getElementById("seeds") as HTMLInputElement).value = seeds.join(",");
  generate(seeds);
});

redraw();
