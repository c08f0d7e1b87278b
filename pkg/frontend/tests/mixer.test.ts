import { describe, expect, it } from "vitest";
import {
  advanceGuide,
  createMixer,
  guidedFrame,
  selectFrame,
} from "../src/core/mixer";

describe("song mixer guidance", () => {
  it("walks song A, then song B, then the middle, then goes free", () => {
    let state = createMixer(7);
    expect(state.phase).toBe("guide-a");
    expect(guidedFrame(state)).toBe(0);

    state = advanceGuide(state);
    expect(state.phase).toBe("guide-b");
    expect(guidedFrame(state)).toBe(6);
    expect(state.selected).toBe(6);

    state = advanceGuide(state);
    expect(state.phase).toBe("guide-middle");
    expect(guidedFrame(state)).toBe(3);
    expect(state.selected).toBe(3);

    state = advanceGuide(state);
    expect(state.phase).toBe("free");
    expect(guidedFrame(state)).toBeNull();
  });

  it("stays free once the tour is done", () => {
    let state = createMixer(5);
    for (let i = 0; i < 10; i += 1) state = advanceGuide(state);
    expect(state.phase).toBe("free");
  });

  it("starts with frame 0 selected (song A's reconstruction)", () => {
    expect(createMixer(9).selected).toBe(0);
  });

  it("rejects selecting anything but the guided frame during the tour", () => {
    const state = createMixer(7);
    expect(selectFrame(state, 3).selected).toBe(0);
    expect(selectFrame(state, 0).selected).toBe(0);
  });

  it("allows any frame once free, keeping exactly one selected", () => {
    let state = createMixer(7);
    for (let i = 0; i < 3; i += 1) state = advanceGuide(state);
    for (let frame = 0; frame < 7; frame += 1) {
      state = selectFrame(state, frame);
      expect(state.selected).toBe(frame);
    }
  });

  it("ignores out-of-range frames", () => {
    let state = createMixer(4);
    for (let i = 0; i < 3; i += 1) state = advanceGuide(state);
    expect(selectFrame(state, -1).selected).toBe(state.selected);
    expect(selectFrame(state, 4).selected).toBe(state.selected);
  });
});
