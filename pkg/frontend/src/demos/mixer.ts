// Song Mixer demo: two library songs and the latent walk between them.
// A guided tour (A, then B, then the middle frame) runs before free
// exploration; a radio row then selects any frame for playback.

import { api } from "../api";
import { DEFAULT_BPM, engine } from "../audio/engine";
import { leadSheetSpec } from "../audio/playback";
import { showError } from "../banner";
import { noteName } from "../core/harmonize";
import { LatestGate } from "../core/inflight";
import {
  MixerState,
  advanceGuide,
  createMixer,
  guidedFrame,
  selectFrame,
} from "../core/mixer";
import { clear, el } from "../dom";
import { SheetView, sheetView } from "../render/sheet";
import { LeadSheetJson, LibraryEntry } from "../types";

const PHASE_HINTS: Record<MixerState["phase"], string> = {
  "guide-a": "Step 1 of 3: listen to song A first.",
  "guide-b": "Step 2 of 3: now listen to song B.",
  "guide-middle": "Step 3 of 3: hear the frame halfway between them.",
  free: "Tour done. Pick any frame and compare.",
};

export function mountMixerDemo(root: HTMLElement): void {
  let sheets: LibraryEntry[] = [];
  let frames: LeadSheetJson[] = [];
  let mixer: MixerState | null = null;
  let playingFrame: number | null = null;
  let frameViews: Array<{ frame: number; view: SheetView }> = [];

  const blendGate = new LatestGate();

  const selectA = el("select", { class: "song-select" }) as HTMLSelectElement;
  const selectB = el("select", { class: "song-select" }) as HTMLSelectElement;
  const stepsInput = el("input", {
    type: "number",
    min: 2,
    max: 17,
    value: 7,
  }) as HTMLInputElement;
  const modeSelect = el("select", {}) as HTMLSelectElement;
  modeSelect.append(el("option", { value: "slerp" }, "slerp"), el("option", { value: "lerp" }, "lerp"));
  const blendButton = el("button", { class: "primary", click: blend }, "Blend");
  const hint = el("p", { class: "hint" }, "Loading the song library…");
  const panels = el("div", { class: "mixer-panels" });

  root.append(
    el(
      "section",
      { class: "demo" },
      el(
        "div",
        { class: "demo-header" },
        el("h2", {}, "Song Mixer"),
        hint,
        el(
          "div",
          { class: "controls" },
          el("label", { class: "field" }, "song A ", selectA),
          el("label", { class: "field" }, "song B ", selectB),
          el("label", { class: "field" }, "frames ", stepsInput),
          el("label", { class: "field" }, "mode ", modeSelect),
          blendButton,
        ),
      ),
      panels,
    ),
  );

  function frameLabel(index: number): string {
    if (index === 0) return "A";
    if (index === frames.length - 1) return "B";
    return String(index);
  }

  function stopOrPlay(index: number, allowed: boolean, advance: boolean): void {
    if (!allowed) return;
    if (playingFrame === index) {
      engine.stop();
      return;
    }
    engine.start(
      leadSheetSpec(() => ({
        tokens: frames[index].melody.tokens,
        chords: frames[index].chords,
      })),
      DEFAULT_BPM,
    );
    playingFrame = index;
    if (advance && mixer) mixer = advanceGuide(mixer);
    render();
  }

  function panel(
    title: string,
    frame: number,
    guided: boolean,
    allowed: boolean,
    extra?: HTMLElement,
  ): HTMLElement {
    const view = sheetView(frames[frame].melody.tokens, frames[frame].chords);
    frameViews.push({ frame, view });
    const button = el(
      "button",
      {
        class: playingFrame === frame ? "primary" : "",
        disabled: !allowed,
        click: () => stopOrPlay(frame, allowed, guided),
      },
      playingFrame === frame ? "Stop" : "Play",
    );
    const head = el("div", { class: "panel-head" }, el("h3", {}, title), button);
    const box = el(
      "div",
      { class: `mixer-panel${guided ? " guided" : ""}` },
      head,
      extra ?? el("span", {}),
      view.root,
    );
    return box;
  }

  function radioRow(state: MixerState): HTMLElement {
    const row = el("div", { class: "radio-row" });
    for (let i = 0; i < frames.length; i += 1) {
      const selectable = state.phase === "free" || i === guidedFrame(state);
      const item = el(
        "label",
        { class: `radio-item${state.selected === i ? " selected" : ""}` },
        el("input", {
          type: "radio",
          name: "mixer-frame",
          checked: state.selected === i,
          disabled: !selectable,
          change: () => {
            if (!mixer) return;
            mixer = selectFrame(mixer, i);
            render();
          },
        }),
        frameLabel(i),
      );
      row.append(item);
    }
    return row;
  }

  function render(): void {
    clear(panels);
    frameViews = [];
    if (!mixer || frames.length === 0) {
      panels.append(el("p", { class: "hint" }, "Blend two songs to begin."));
      return;
    }
    const state = mixer;
    hint.textContent = PHASE_HINTS[state.phase];
    const last = frames.length - 1;
    const middle = Math.floor(last / 2);
    panels.append(
      panel("Song A", 0, state.phase === "guide-a", state.phase === "guide-a" || state.phase === "free"),
      panel(
        `Interpolation (frame ${frameLabel(state.selected)})`,
        state.selected,
        state.phase === "guide-middle" && state.selected === middle,
        state.phase === "guide-middle" || state.phase === "free",
        radioRow(state),
      ),
      panel("Song B", last, state.phase === "guide-b", state.phase === "guide-b" || state.phase === "free"),
    );
  }

  function blend(): void {
    const idA = Number(selectA.value);
    const idB = Number(selectB.value);
    const steps = Number(stepsInput.value);
    const mode = modeSelect.value as "slerp" | "lerp";
    engine.stop();
    void blendGate
      .run(() => api.interpolate(idA, idB, steps, mode))
      .then((res) => {
        if (res) {
          frames = res.frames;
          mixer = createMixer(frames.length);
          render();
        }
      })
      .catch(showError);
  }

  engine.onStop(() => {
    if (playingFrame !== null) {
      playingFrame = null;
      for (const { view } of frameViews) view.setPlayhead(null);
      render();
    }
  });
  engine.onStep((step) => {
    if (playingFrame === null) return;
    for (const { frame, view } of frameViews) {
      view.setPlayhead(frame === playingFrame ? step : null);
    }
  });

  void api
    .library()
    .then((res) => {
      sheets = res.sheets;
      for (const entry of sheets) {
        const label = `sheet ${entry.id} (key ${noteName(entry.sheet.key)})`;
        selectA.append(el("option", { value: entry.id }, label));
        selectB.append(el("option", { value: entry.id }, label));
      }
      selectA.value = "0";
      selectB.value = String(Math.min(1, sheets.length - 1));
      blend();
    })
    .catch(showError);

  render();
}
