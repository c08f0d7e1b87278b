// Editable pianoroll cores. The drum wire grid is 96 fine steps but the
// UI exposes 16 clickable sixteenth-note columns: toggling display
// column k turns on fine column 6k, and turns off the whole fine window
// [6k, 6k+6) so a visible cell can always be cleared. The melody roll
// is 64 sixteenth steps, clickable one to one.

import { HOLD, MELODY_STEPS, REST } from "../types";

export const DISPLAY_STEPS = 16;
export const FINE_PER_DISPLAY = 6;

export function displayCellOn(grid: number[][], track: number, column: number): boolean {
  const start = column * FINE_PER_DISPLAY;
  for (let c = start; c < start + FINE_PER_DISPLAY; c++) {
    if (grid[track][c] === 1) return true;
  }
  return false;
}

export function toggleDrumCell(
  grid: number[][],
  track: number,
  column: number,
): number[][] {
  const next = grid.map((row) => row.slice());
  const start = column * FINE_PER_DISPLAY;
  if (displayCellOn(grid, track, column)) {
    for (let c = start; c < start + FINE_PER_DISPLAY; c++) next[track][c] = 0;
  } else {
    next[track][start] = 1;
  }
  return next;
}

// A HOLD with nothing before it to sustain is meaningless; the server
// rejects it, so edits repair the sequence the same way the models do.
export function repairTokens(tokens: number[]): number[] {
  const fixed: number[] = [];
  let prev = REST;
  for (const raw of tokens) {
    const token = raw === HOLD && prev === REST ? REST : raw;
    fixed.push(token);
    prev = token;
  }
  return fixed;
}

// Click behavior: clicking an onset clears it to REST, clicking
// anything else places an onset of the given token.
export function editMelodyStep(
  tokens: number[],
  step: number,
  noteToken: number,
): number[] {
  const next = tokens.slice();
  next[step] = next[step] === noteToken ? REST : noteToken;
  return repairTokens(next);
}

export function emptyMelody(): number[] {
  return new Array<number>(MELODY_STEPS).fill(REST);
}

// A sounding note: an onset token plus the HOLD steps that sustain it.
export interface MelodySpan {
  start: number;
  end: number; // exclusive
  token: number;
}

export function melodySpans(tokens: number[]): MelodySpan[] {
  const spans: MelodySpan[] = [];
  let open: MelodySpan | null = null;
  for (let i = 0; i < tokens.length; i += 1) {
    const token = tokens[i];
    if (token >= 2) {
      if (open) spans.push(open);
      open = { start: i, end: i + 1, token };
    } else if (token === HOLD && open) {
      open.end = i + 1;
    } else if (token === REST && open) {
      spans.push(open);
      open = null;
    }
  }
  if (open) spans.push(open);
  return spans;
}
