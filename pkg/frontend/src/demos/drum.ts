// Drum demo: a circular latent diagram wired to an editable drum grid.
// Dragging a vertex posts the adjusted latent and re-renders the decoded
// pattern; editing the grid posts the pattern and re-renders the encoded
// latent. State always mirrors the last server response plus the edit in
// flight.

import { api } from "../api";
import { DEFAULT_BPM, engine } from "../audio/engine";
import { drumSpec } from "../audio/playback";
import { showError } from "../banner";
import { LatestGate } from "../core/inflight";
import {
  DISPLAY_STEPS,
  FINE_PER_DISPLAY,
  displayCellOn,
  toggleDrumCell,
} from "../core/pianoroll";
import {
  RadialGeometry,
  nearestVertex,
  pointerRadius,
  polygonPoints,
  radiusToValue,
  valueToRadius,
  withValue,
} from "../core/radial";
import { clear, el, svg } from "../dom";
import { DRUM_STEPS, DRUM_TRACKS, LatentJson } from "../types";

const TRACK_LABELS = [
  "kick",
  "snare",
  "closed hat",
  "open hat",
  "low tom",
  "mid tom",
  "high tom",
  "crash",
  "ride",
];

const VIEW = 380;
const GEOM: RadialGeometry = {
  centerX: VIEW / 2,
  centerY: VIEW / 2,
  innerRadius: 26,
  outerRadius: 172,
};
const DRAG_SLACK = 16;

function emptyGrid(): number[][] {
  return Array.from({ length: DRUM_TRACKS }, () => new Array<number>(DRUM_STEPS).fill(0));
}

export function mountDrumDemo(root: HTMLElement): void {
  let latent: LatentJson | null = null;
  let grid = emptyGrid();
  let working: number[] | null = null;
  let dragIndex: number | null = null;
  let bpm = DEFAULT_BPM;
  let playing = false;

  const loadGate = new LatestGate();
  const encodeGate = new LatestGate();
  const adjustGate = new LatestGate();

  const diagram = svg("svg", { class: "latent-diagram", viewBox: `0 0 ${VIEW} ${VIEW}` });
  const gridBox = el("div", { class: "drum-grid" });
  const playButton = el("button", { class: "primary", click: togglePlay }, "Play");
  const randomButton = el("button", { click: randomize }, "New pattern");
  const bpmInput = el("input", {
    type: "number",
    min: 40,
    max: 220,
    value: bpm,
    change: () => {
      const next = Number(bpmInput.value);
      if (Number.isFinite(next) && next >= 40 && next <= 220) {
        bpm = next;
        engine.setBpm(bpm);
      } else {
        bpmInput.value = String(bpm);
      }
    },
  }) as HTMLInputElement;

  const headerCells: HTMLElement[] = [];
  const cells: HTMLElement[][] = [];
  let playheadColumn: number | null = null;

  root.append(
    el(
      "section",
      { class: "demo" },
      el(
        "div",
        { class: "demo-header" },
        el("h2", {}, "Latent Inspector"),
        el(
          "p",
          { class: "hint" },
          "Drag a vertex to nudge one latent dimension, or click the grid to ",
          "edit the beat. Each edit round-trips through the model so the two ",
          "views stay in sync.",
        ),
        el(
          "div",
          { class: "controls" },
          playButton,
          el("label", { class: "field" }, "bpm ", bpmInput),
          randomButton,
        ),
      ),
      el("div", { class: "drum-body" }, el("div", { class: "diagram-box" }, diagram), gridBox),
    ),
  );

  function values(): number[] | null {
    return working ?? latent?.values ?? null;
  }

  function drawDiagram(): void {
    clear(diagram);
    for (const value of [-4, 0, 4]) {
      diagram.append(
        svg("circle", {
          class: value === 0 ? "guide zero" : "guide",
          cx: GEOM.centerX,
          cy: GEOM.centerY,
          r: valueToRadius(value, GEOM),
        }),
      );
    }
    const current = values();
    if (current === null) return;
    const outline = polygonPoints(current, GEOM)
      .map((p) => `${p.x.toFixed(2)},${p.y.toFixed(2)}`)
      .join(" ");
    diagram.append(svg("polyline", { class: "latent-outline", points: outline }));
    const dots = polygonPoints(current, GEOM).slice(0, -1);
    dots.forEach((p, i) => {
      diagram.append(
        svg("circle", {
          class: i === dragIndex ? "vertex dragging" : "vertex",
          cx: p.x,
          cy: p.y,
          r: 5,
        }),
      );
    });
  }

  function renderGrid(): void {
    clear(gridBox);
    cells.length = 0;
    headerCells.length = 0;
    gridBox.append(el("div", { class: "corner" }));
    for (let col = 0; col < DISPLAY_STEPS; col += 1) {
      const head = el("div", { class: "col-head" }, String(col + 1));
      headerCells.push(head);
      gridBox.append(head);
    }
    for (let track = 0; track < DRUM_TRACKS; track += 1) {
      gridBox.append(el("div", { class: "track-label" }, TRACK_LABELS[track]));
      const row: HTMLElement[] = [];
      for (let col = 0; col < DISPLAY_STEPS; col += 1) {
        const on = displayCellOn(grid, track, col);
        const cell = el("button", {
          class: `cell${on ? " on" : ""}${col % 4 === 0 ? " beat" : ""}`,
          click: () => editCell(track, col),
        });
        row.push(cell);
        gridBox.append(cell);
      }
      cells.push(row);
    }
    applyPlayhead();
  }

  function applyPlayhead(): void {
    for (let col = 0; col < DISPLAY_STEPS; col += 1) {
      const active = col === playheadColumn;
      headerCells[col]?.classList.toggle("playhead", active);
      for (let track = 0; track < DRUM_TRACKS; track += 1) {
        cells[track]?.[col]?.classList.toggle("playhead", active);
      }
    }
  }

  function setPlayhead(column: number | null): void {
    if (column === playheadColumn) return;
    playheadColumn = column;
    applyPlayhead();
  }

  function editCell(track: number, col: number): void {
    grid = toggleDrumCell(grid, track, col);
    renderGrid();
    void encodeGate
      .run(() => api.drumEncode({ grid }))
      .then((res) => {
        if (res) {
          latent = res.latent;
          drawDiagram();
        }
      })
      .catch(showError);
  }

  function randomize(): void {
    void loadGate
      .run(() => api.drumRandom())
      .then((res) => {
        if (res) {
          latent = res.latent;
          grid = res.pattern.grid;
          working = null;
          drawDiagram();
          renderGrid();
        }
      })
      .catch(showError);
  }

  function togglePlay(): void {
    if (playing) {
      engine.stop();
      return;
    }
    engine.start(
      drumSpec(() => grid),
      bpm,
    );
    playing = true;
    playButton.textContent = "Stop";
  }

  engine.onStop(() => {
    if (playing) {
      playing = false;
      playButton.textContent = "Play";
      setPlayhead(null);
    }
  });
  engine.onStep((step) => {
    if (playing) setPlayhead(Math.floor(step / FINE_PER_DISPLAY));
  });

  function svgPoint(event: PointerEvent): { x: number; y: number } {
    const rect = diagram.getBoundingClientRect();
    return {
      x: ((event.clientX - rect.left) / rect.width) * VIEW,
      y: ((event.clientY - rect.top) / rect.height) * VIEW,
    };
  }

  diagram.addEventListener("pointerdown", (event) => {
    if (!latent) return;
    const p = svgPoint(event);
    const radius = pointerRadius(p.x, p.y, GEOM);
    if (radius < GEOM.innerRadius - DRAG_SLACK || radius > GEOM.outerRadius + DRAG_SLACK) {
      return;
    }
    dragIndex = nearestVertex(p.x, p.y, GEOM);
    working = latent.values.slice();
    diagram.setPointerCapture(event.pointerId);
    dragTo(p);
  });

  function dragTo(p: { x: number; y: number }): void {
    if (dragIndex === null || working === null) return;
    const value = radiusToValue(pointerRadius(p.x, p.y, GEOM), GEOM);
    working = withValue(working, dragIndex, value);
    drawDiagram();
  }

  diagram.addEventListener("pointermove", (event) => {
    if (dragIndex !== null) dragTo(svgPoint(event));
  });

  diagram.addEventListener("pointerup", () => {
    if (dragIndex === null || working === null || latent === null) return;
    const index = dragIndex;
    const value = working[index];
    const base = latent;
    dragIndex = null;
    drawDiagram();
    void adjustGate
      .run(() => api.drumAdjust(base, index, value))
      .then((res) => {
        if (res) {
          latent = res.latent;
          grid = res.pattern.grid;
          working = null;
          drawDiagram();
          renderGrid();
        }
      })
      .catch((err) => {
        working = null;
        drawDiagram();
        showError(err);
      });
  });

  drawDiagram();
  renderGrid();
  randomize();
}
