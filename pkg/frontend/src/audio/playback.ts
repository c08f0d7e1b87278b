// Bridges wire-format music data to the audio engine: builds LoopSpecs
// whose per-step callbacks trigger the synthesized voices. Sources are
// getters so an edit made while the loop runs is heard on the next
// step without restarting the transport. All timing comes from the
// scheduler; this module only decides what sounds on a given step.

import { ChordJson, DRUM_STEPS, HOLD, MELODY_STEPS } from "../types";
import { LoopSpec } from "./engine";
import { playChord, playDrum, playNote } from "./voices";

const MELODY_TOKEN_BASE = 2;
const MELODY_BASE_PITCH = 48;
const STEPS_PER_SLOT = MELODY_STEPS / 8;

// 16 sixteenth-note columns per bar, 6 fine ticks each: 24 ticks per beat.
export const DRUM_STEPS_PER_BEAT = 24;
// 16 melody steps per bar: 4 per beat.
export const MELODY_STEPS_PER_BEAT = 4;

export function drumSpec(grid: () => number[][], loops?: number): LoopSpec {
  return {
    stepsPerBeat: DRUM_STEPS_PER_BEAT,
    stepsPerLoop: DRUM_STEPS,
    loops,
    onStep: (ctx, out, event) => {
      const rows = grid();
      for (let track = 0; track < rows.length; track += 1) {
        if (rows[track][event.step] > 0) playDrum(ctx, out, track, event.time);
      }
    },
  };
}

function noteDurationSteps(tokens: number[], step: number): number {
  let length = 1;
  for (let i = step + 1; i < tokens.length && tokens[i] === HOLD; i += 1) {
    length += 1;
  }
  return length;
}

export interface SheetSource {
  tokens: number[];
  chords: ChordJson[] | null;
}

export function leadSheetSpec(
  source: () => SheetSource,
  loops?: number,
  bpm = 120,
): LoopSpec {
  return {
    stepsPerBeat: MELODY_STEPS_PER_BEAT,
    stepsPerLoop: MELODY_STEPS,
    loops,
    onStep: (ctx, out, event) => {
      const { tokens, chords } = source();
      const seconds = 60 / bpm / MELODY_STEPS_PER_BEAT;
      const token = tokens[event.step];
      if (token >= MELODY_TOKEN_BASE) {
        const pitch = token - MELODY_TOKEN_BASE + MELODY_BASE_PITCH;
        const steps = noteDurationSteps(tokens, event.step);
        playNote(ctx, out, pitch, event.time, steps * seconds);
      }
      if (chords && event.step % STEPS_PER_SLOT === 0) {
        const chord = chords[event.step / STEPS_PER_SLOT];
        if (chord && chord.quality !== "nc") {
          playChord(ctx, out, chord.root, chord.quality, event.time, STEPS_PER_SLOT * seconds);
        }
      }
    },
  };
}
