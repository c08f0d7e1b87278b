// Amplitude-envelope bars for a clip. No audio is rendered or fetched:
// the bars are computed directly from the note and chord schedule, which
// is all a clip is on the wire. Good enough to look like a waveform and
// cheap enough to redraw per round.

import { ChordJson, MELODY_STEPS } from "../types";
import { MelodySpan, melodySpans } from "./pianoroll";

export const WAVEFORM_BARS = 96;

const STEPS_PER_SLOT = MELODY_STEPS / 8;

function melodyLevel(spans: MelodySpan[], t: number): number {
  for (const span of spans) {
    if (t >= span.start && t < span.end) {
      const age = t - span.start;
      return 0.35 + 0.65 * Math.exp(-age / 6);
    }
  }
  return 0;
}

function chordLevel(chords: ChordJson[], t: number): number {
  const slot = Math.min(chords.length - 1, Math.floor(t / STEPS_PER_SLOT));
  if (slot < 0) return 0;
  const chord = chords[slot];
  if (chord.quality === "nc") return 0;
  const age = t - slot * STEPS_PER_SLOT;
  return 0.3 * (0.45 + 0.55 * Math.exp(-age / 10));
}

// Returns WAVEFORM_BARS values in [0, 1], one per display bar.
export function waveformBars(tokens: number[], chords: ChordJson[]): number[] {
  const spans = melodySpans(tokens);
  const bars: number[] = [];
  for (let b = 0; b < WAVEFORM_BARS; b += 1) {
    const t = (b * MELODY_STEPS) / WAVEFORM_BARS;
    const level = melodyLevel(spans, t) + chordLevel(chords, t);
    bars.push(Math.min(1, level));
  }
  return bars;
}
