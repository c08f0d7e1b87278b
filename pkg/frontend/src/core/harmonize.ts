// Display mappings for the harmonize view: playback step to half-bar
// slot, harmonic function to triangle vertex, chord root to a position
// on the circle of fifths.

import { FunctionName, HALF_BARS, MELODY_STEPS } from "../types";

export const STEPS_PER_SLOT = MELODY_STEPS / HALF_BARS; // 8

export const FUNCTION_VERTICES: readonly FunctionName[] = [
  "tonic",
  "subdominant",
  "dominant",
];

export const CIRCLE_LABELS: readonly string[] = [
  "C", "G", "D", "A", "E", "B", "F#", "Db", "Ab", "Eb", "Bb", "F",
];

export function activeSlot(playbackStep: number): number {
  const slot = Math.floor(playbackStep / STEPS_PER_SLOT);
  return Math.min(HALF_BARS - 1, Math.max(0, slot));
}

// Triangle vertex index for a function, or null for N.C. slots.
export function functionVertex(fn: FunctionName | null): number | null {
  if (fn === null) return null;
  return FUNCTION_VERTICES.indexOf(fn);
}

export function noteName(pitchClass: number): string {
  const names = ["C", "Db", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B"];
  return names[((pitchClass % 12) + 12) % 12];
}

export function chordLabel(root: number, quality: "maj" | "min" | "nc"): string {
  if (quality === "nc") return "N.C.";
  return quality === "min" ? `${noteName(root)}m` : noteName(root);
}
