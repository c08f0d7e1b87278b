// Song Mixer state: a guided tour (song A, then song B, then the middle
// interpolation) that must finish before free exploration of the frame
// radio selector.

export type MixerPhase = "guide-a" | "guide-b" | "guide-middle" | "free";

export interface MixerState {
  phase: MixerPhase;
  frameCount: number;
  selected: number;
}

export const GUIDANCE_ORDER: readonly MixerPhase[] = [
  "guide-a",
  "guide-b",
  "guide-middle",
];

export function createMixer(frameCount: number): MixerState {
  return { phase: "guide-a", frameCount, selected: 0 };
}

// The frame each guidance step points at: A is frame 0, B is the last
// frame, the middle is halfway along the walk.
export function guidedFrame(state: MixerState): number | null {
  switch (state.phase) {
    case "guide-a":
      return 0;
    case "guide-b":
      return state.frameCount - 1;
    case "guide-middle":
      return Math.floor((state.frameCount - 1) / 2);
    case "free":
      return null;
  }
}

export function advanceGuide(state: MixerState): MixerState {
  const order: MixerPhase[] = [...GUIDANCE_ORDER, "free"];
  const at = order.indexOf(state.phase);
  const phase = order[Math.min(at + 1, order.length - 1)];
  const next: MixerState = { ...state, phase };
  const target = guidedFrame(next);
  return target === null ? next : { ...next, selected: target };
}

// During guidance only the highlighted frame is selectable; afterwards
// any frame is. Exactly one frame is ever selected.
export function selectFrame(state: MixerState, frame: number): MixerState {
  if (frame < 0 || frame >= state.frameCount) return state;
  if (state.phase !== "free" && frame !== guidedFrame(state)) return state;
  return { ...state, selected: frame };
}
