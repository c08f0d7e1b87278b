// Comp It demo: an editable melody roll whose chords are predicted by
// the server, with a harmonic-function triangle and a circle-of-fifths
// marker that follow the playback position half-bar by half-bar.

import { api } from "../api";
import { DEFAULT_BPM, engine } from "../audio/engine";
import { leadSheetSpec } from "../audio/playback";
import { showError } from "../banner";
import {
  CIRCLE_LABELS,
  activeSlot,
  chordLabel,
  functionVertex,
  noteName,
} from "../core/harmonize";
import { LatestGate } from "../core/inflight";
import { editMelodyStep, emptyMelody, melodySpans } from "../core/pianoroll";
import { clear, el, svg } from "../dom";
import { HALF_BARS, HarmonizeResponse, MELODY_STEPS } from "../types";

const MIN_PITCH = 48;
const MAX_PITCH = 96;
const ROW_H = 7;
const STEP_W = 10;
const ROLL_W = MELODY_STEPS * STEP_W;
const ROLL_H = (MAX_PITCH - MIN_PITCH + 1) * ROW_H;
const TOKEN_BASE = 2;

const FUNCTION_TAGS: Record<string, string> = {
  tonic: "T",
  subdominant: "S",
  dominant: "D",
};

export function mountHarmonizeDemo(root: HTMLElement): void {
  let tokens = emptyMelody();
  let harmony: HarmonizeResponse | null = null;
  let playing = false;
  let litSlot: number | null = null;

  const gate = new LatestGate();

  const roll = svg("svg", { class: "melody-roll", viewBox: `0 0 ${ROLL_W} ${ROLL_H}` });
  const rollPlayhead = svg("line", {
    class: "playhead hidden",
    x1: 0,
    y1: 0,
    x2: 0,
    y2: ROLL_H,
  });
  const chordStrip = el("div", { class: "chord-strip" });
  const slotCells: HTMLElement[] = [];

  const playButton = el("button", { class: "primary", click: togglePlay }, "Play");
  const clearButton = el("button", { click: clearMelody }, "Clear melody");
  const loadSelect = el("select", {
    change: () => loadSheet(Number(loadSelect.value)),
  }) as HTMLSelectElement;

  // Function triangle: one dot per harmonic function, lit while a chord
  // with that function is sounding.
  const trianglePositions = [
    { x: 110, y: 30, label: "tonic" },
    { x: 28, y: 158, label: "subdominant" },
    { x: 192, y: 158, label: "dominant" },
  ];
  const triangle = svg("svg", { class: "harmony-widget", viewBox: "0 0 220 190" });
  triangle.append(
    svg("polygon", {
      class: "triangle-edges",
      points: trianglePositions.map((p) => `${p.x},${p.y}`).join(" "),
    }),
  );
  const triangleDots = trianglePositions.map((p, i) => {
    const dot = svg("circle", { class: "function-dot", cx: p.x, cy: p.y, r: 11 });
    const text = svg("text", {
      class: "widget-label",
      x: p.x,
      y: i === 0 ? p.y - 20 : p.y + 28,
      "text-anchor": "middle",
    });
    text.textContent = p.label;
    triangle.append(dot, text);
    return dot;
  });

  // Circle of fifths with a marker that glides to the sounding chord.
  const circle = svg("svg", { class: "harmony-widget", viewBox: "0 0 220 220" });
  circle.append(svg("circle", { class: "cof-ring", cx: 110, cy: 110, r: 78 }));
  const cofPoint = (index: number, radius: number) => {
    const angle = (index / 12) * 2 * Math.PI - Math.PI / 2;
    return { x: 110 + radius * Math.cos(angle), y: 110 + radius * Math.sin(angle) };
  };
  CIRCLE_LABELS.forEach((label, i) => {
    const p = cofPoint(i, 95);
    const text = svg("text", {
      class: "widget-label",
      x: p.x,
      y: p.y + 4,
      "text-anchor": "middle",
    });
    text.textContent = label;
    const tick = cofPoint(i, 78);
    circle.append(svg("circle", { class: "cof-tick", cx: tick.x, cy: tick.y, r: 3 }), text);
  });
  const cofMarker = svg("circle", { class: "cof-marker hidden", cx: 110, cy: 32, r: 9 });
  circle.append(cofMarker);

  root.append(
    el(
      "section",
      { class: "demo" },
      el(
        "div",
        { class: "demo-header" },
        el("h2", {}, "Comp It"),
        el(
          "p",
          { class: "hint" },
          "Click the roll to place or remove notes; the server re-harmonizes ",
          "after every edit. During playback the triangle and circle of ",
          "fifths track the sounding chord.",
        ),
        el(
          "div",
          { class: "controls" },
          playButton,
          el("label", { class: "field" }, "melody ", loadSelect),
          clearButton,
        ),
      ),
      el(
        "div",
        { class: "harmonize-body" },
        el("div", { class: "roll-box" }, roll, chordStrip),
        el(
          "div",
          { class: "widget-column" },
          el("h3", {}, "Function"),
          triangle,
          el("h3", {}, "Circle of fifths"),
          circle,
        ),
      ),
    ),
  );

  function renderRoll(): void {
    clear(roll);
    for (let pitch = MIN_PITCH; pitch <= MAX_PITCH; pitch += 1) {
      if (pitch % 12 === 0) {
        roll.append(
          svg("rect", {
            class: "octave-stripe",
            x: 0,
            y: (MAX_PITCH - pitch) * ROW_H,
            width: ROLL_W,
            height: ROW_H,
          }),
        );
      }
    }
    for (let slot = 0; slot <= HALF_BARS; slot += 1) {
      const x = slot * (ROLL_W / HALF_BARS);
      roll.append(
        svg("line", {
          class: slot % 2 === 0 ? "grid-line bar" : "grid-line",
          x1: x,
          y1: 0,
          x2: x,
          y2: ROLL_H,
        }),
      );
    }
    for (const span of melodySpans(tokens)) {
      const pitch = span.token - TOKEN_BASE + MIN_PITCH;
      roll.append(
        svg("rect", {
          class: "note",
          x: span.start * STEP_W + 0.5,
          y: (MAX_PITCH - pitch) * ROW_H + 1,
          width: (span.end - span.start) * STEP_W - 1.5,
          height: ROW_H - 2,
          rx: 2,
        }),
      );
    }
    const overlay = svg("rect", {
      class: "click-overlay",
      x: 0,
      y: 0,
      width: ROLL_W,
      height: ROLL_H,
    });
    overlay.addEventListener("pointerdown", (event) => {
      const rect = roll.getBoundingClientRect();
      const x = ((event.clientX - rect.left) / rect.width) * ROLL_W;
      const y = ((event.clientY - rect.top) / rect.height) * ROLL_H;
      const step = Math.min(MELODY_STEPS - 1, Math.max(0, Math.floor(x / STEP_W)));
      const pitch = MAX_PITCH - Math.min(MAX_PITCH - MIN_PITCH, Math.max(0, Math.floor(y / ROW_H)));
      editAt(step, pitch - MIN_PITCH + TOKEN_BASE);
    });
    roll.append(overlay, rollPlayhead);
  }

  function renderChords(): void {
    clear(chordStrip);
    slotCells.length = 0;
    for (let slot = 0; slot < HALF_BARS; slot += 1) {
      const chord = harmony?.chords[slot] ?? null;
      const fn = harmony?.functions[slot] ?? null;
      const cell = el(
        "div",
        { class: `slot${slot === litSlot ? " active" : ""}` },
        el("div", { class: "slot-chord" }, chord ? chordLabel(chord.root, chord.quality) : "..."),
        el("div", { class: "slot-fn" }, fn ? FUNCTION_TAGS[fn] : ""),
      );
      slotCells.push(cell);
      chordStrip.append(cell);
    }
  }

  function updateWidgets(): void {
    const fn = litSlot !== null ? harmony?.functions[litSlot] ?? null : null;
    const vertex = functionVertex(fn ?? null);
    triangleDots.forEach((dot, i) => dot.classList.toggle("active", i === vertex));
    const index = litSlot !== null ? harmony?.circle_indices[litSlot] ?? null : null;
    if (index === null) {
      cofMarker.classList.add("hidden");
    } else {
      const p = cofPoint(index, 78);
      cofMarker.setAttribute("cx", String(p.x));
      cofMarker.setAttribute("cy", String(p.y));
      cofMarker.classList.remove("hidden");
    }
    slotCells.forEach((cell, i) => cell.classList.toggle("active", i === litSlot));
  }

  function setLitSlot(slot: number | null): void {
    if (slot === litSlot) return;
    litSlot = slot;
    updateWidgets();
  }

  function reharmonize(): void {
    void gate
      .run(() => api.harmonize({ tokens }))
      .then((res) => {
        if (res) {
          harmony = res;
          renderChords();
          updateWidgets();
        }
      })
      .catch(showError);
  }

  function editAt(step: number, noteToken: number): void {
    tokens = editMelodyStep(tokens, step, noteToken);
    renderRoll();
    reharmonize();
  }

  function clearMelody(): void {
    tokens = emptyMelody();
    renderRoll();
    reharmonize();
  }

  function loadSheet(id: number): void {
    void api
      .library()
      .then((res) => {
        const entry = res.sheets.find((s) => s.id === id);
        if (entry) {
          tokens = entry.sheet.melody.tokens.slice();
          renderRoll();
          reharmonize();
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
      leadSheetSpec(() => ({ tokens, chords: harmony?.chords ?? null })),
      DEFAULT_BPM,
    );
    playing = true;
    playButton.textContent = "Stop";
  }

  engine.onStop(() => {
    if (playing) {
      playing = false;
      playButton.textContent = "Play";
      rollPlayhead.classList.add("hidden");
      setLitSlot(null);
    }
  });
  engine.onStep((step) => {
    if (!playing) return;
    const x = (step + 0.5) * STEP_W;
    rollPlayhead.setAttribute("x1", String(x));
    rollPlayhead.setAttribute("x2", String(x));
    rollPlayhead.classList.remove("hidden");
    setLitSlot(activeSlot(step));
  });

  void api
    .library()
    .then((res) => {
      for (const entry of res.sheets) {
        loadSelect.append(
          el("option", { value: entry.id }, `sheet ${entry.id} (key ${noteName(entry.sheet.key)})`),
        );
      }
      if (res.sheets.length > 0) {
        tokens = res.sheets[0].sheet.melody.tokens.slice();
        renderRoll();
        reharmonize();
      }
    })
    .catch(showError);

  renderRoll();
  renderChords();
}
