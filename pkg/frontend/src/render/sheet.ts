// Read-only lead-sheet preview: melody note spans over half-bar chord
// labels, with a movable playhead line. Used wherever a sheet is shown
// but not edited.

import { chordLabel } from "../core/harmonize";
import { melodySpans } from "../core/pianoroll";
import { svg } from "../dom";
import { ChordJson, HALF_BARS, MELODY_STEPS } from "../types";

const MELODY_TOKEN_BASE = 2;
const MELODY_BASE_PITCH = 48;

export interface SheetView {
  root: SVGSVGElement;
  setPlayhead(step: number | null): void;
}

export function sheetView(
  tokens: number[],
  chords: ChordJson[] | null,
  width = 520,
  height = 120,
): SheetView {
  const chordStrip = chords ? 20 : 0;
  const rollHeight = height - chordStrip;
  const spans = melodySpans(tokens);
  const pitches = spans.map((s) => s.token - MELODY_TOKEN_BASE + MELODY_BASE_PITCH);
  const low = Math.min(...(pitches.length ? pitches : [60])) - 2;
  const high = Math.max(...(pitches.length ? pitches : [72])) + 2;
  const pitchY = (pitch: number): number =>
    rollHeight - ((pitch - low) / (high - low)) * (rollHeight - 8) - 4;
  const stepX = (step: number): number => (step / MELODY_STEPS) * width;

  const root = svg("svg", {
    class: "sheet-view",
    viewBox: `0 0 ${width} ${height}`,
    width,
    height,
  });

  for (let slot = 0; slot <= HALF_BARS; slot += 1) {
    const x = (slot / HALF_BARS) * width;
    root.append(
      svg("line", {
        class: slot % 2 === 0 ? "grid-line bar" : "grid-line",
        x1: x,
        y1: 0,
        x2: x,
        y2: rollHeight,
      }),
    );
  }

  for (const span of spans) {
    const pitch = span.token - MELODY_TOKEN_BASE + MELODY_BASE_PITCH;
    root.append(
      svg("rect", {
        class: "note",
        x: stepX(span.start),
        y: pitchY(pitch) - 2.5,
        width: stepX(span.end) - stepX(span.start) - 1,
        height: 5,
        rx: 1.5,
      }),
    );
  }

  if (chords) {
    for (let slot = 0; slot < HALF_BARS; slot += 1) {
      const x = (slot / HALF_BARS) * width;
      const chord = chords[slot];
      root.append(
        svg("rect", {
          class: chord.quality === "nc" ? "chord-cell nc" : "chord-cell",
          x: x + 1,
          y: rollHeight + 1,
          width: width / HALF_BARS - 2,
          height: chordStrip - 2,
          rx: 2,
        }),
      );
      const label = svg("text", {
        class: "chord-text",
        x: x + width / HALF_BARS / 2,
        y: rollHeight + chordStrip / 2 + 3.5,
        "text-anchor": "middle",
      });
      label.textContent = chordLabel(chord.root, chord.quality);
      root.append(label);
    }
  }

  const playhead = svg("line", {
    class: "playhead hidden",
    x1: 0,
    y1: 0,
    x2: 0,
    y2: height,
  });
  root.append(playhead);

  return {
    root,
    setPlayhead(step: number | null): void {
      if (step === null) {
        playhead.classList.add("hidden");
        return;
      }
      const x = stepX(step) + width / MELODY_STEPS / 2;
      playhead.setAttribute("x1", String(x));
      playhead.setAttribute("x2", String(x));
      playhead.classList.remove("hidden");
    },
  };
}
