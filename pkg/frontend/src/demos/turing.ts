// Listening game demo: each round presents two harmonizations of the
// same melody, one human, one model. Both must be auditioned before a
// guess is allowed; the verdict and score come back from the server,
// which never reveals the answer up front.

import { api } from "../api";
import { DEFAULT_BPM, engine } from "../audio/engine";
import { leadSheetSpec } from "../audio/playback";
import { showError } from "../banner";
import { LatestGate } from "../core/inflight";
import {
  GameMode,
  TuringState,
  applyGuessResult,
  canGuess,
  createGame,
  markPlayed,
} from "../core/turing";
import { WAVEFORM_BARS, waveformBars } from "../core/waveform";
import { clear, el } from "../dom";
import { MELODY_STEPS } from "../types";

const PRACTICE_ROUNDS = 6;

export function mountTuringDemo(root: HTMLElement): void {
  let game: TuringState | null = null;
  let playingSlot: 0 | 1 | null = null;
  let barEls: HTMLElement[][] = [[], []];
  let playButtons: (HTMLButtonElement | null)[] = [null, null];

  const guessGate = new LatestGate();
  const body = el("div", { class: "turing-body" });

  root.append(
    el(
      "section",
      { class: "demo" },
      el(
        "div",
        { class: "demo-header" },
        el("h2", {}, "Turing Game"),
        el(
          "p",
          { class: "hint" },
          "One clip was harmonized by a person, the other by the model. ",
          "Play both, then point at the machine.",
        ),
        el(
          "div",
          { class: "controls" },
          el("button", { click: () => start("practice") }, `Practice (${PRACTICE_ROUNDS} rounds)`),
          el("button", { click: () => start("challenge") }, "Challenge (3 strikes)"),
        ),
      ),
      body,
    ),
  );

  function start(mode: GameMode): void {
    engine.stop();
    void api
      .turingStart(mode)
      .then((res) => {
        game = createGame(mode, res.session_id, res.round);
        playingSlot = null;
        render();
      })
      .catch(showError);
  }

  function playClip(slot: 0 | 1): void {
    if (!game || !game.round) return;
    if (playingSlot === slot) {
      engine.stop();
      return;
    }
    const round = game.round;
    engine.start(
      leadSheetSpec(() => ({ tokens: round.melody.tokens, chords: round.clips[slot] }), 1),
      DEFAULT_BPM,
    );
    game = markPlayed(game, slot);
    playingSlot = slot;
    render();
  }

  function guess(slot: 0 | 1): void {
    if (!game || !game.round || !canGuess(game)) return;
    const { sessionId, round } = game;
    engine.stop();
    void guessGate
      .run(() => api.turingGuess(sessionId, round.round_id, slot))
      .then((res) => {
        if (res && game) {
          game = applyGuessResult(game, res);
          render();
        }
      })
      .catch(showError);
  }

  function clipCard(slot: 0 | 1): HTMLElement {
    const state = game!;
    const round = state.round!;
    const bars = waveformBars(round.melody.tokens, round.clips[slot]);
    const wave = el("div", { class: "waveform" });
    barEls[slot] = bars.map((v) => {
      const bar = el("span", { class: "bar" });
      bar.style.height = `${(4 + v * 40).toFixed(1)}px`;
      wave.append(bar);
      return bar;
    });
    const play = el(
      "button",
      { class: playingSlot === slot ? "primary" : "", click: () => playClip(slot) },
      playingSlot === slot ? "Stop" : state.played[slot] ? "Play again" : "Play",
    ) as HTMLButtonElement;
    playButtons[slot] = play;
    const pick = el(
      "button",
      {
        class: "guess",
        disabled: !canGuess(state),
        click: () => guess(slot),
      },
      "This is the machine",
    );
    return el(
      "div",
      { class: "clip-card" },
      el("h3", {}, `Clip ${slot + 1}`),
      wave,
      el("div", { class: "clip-actions" }, play, pick),
    );
  }

  function statusRow(state: TuringState): HTMLElement {
    const round = state.round!;
    const bits: (Node | string)[] = [
      el("span", { class: "stat" }, `round ${round.number}${state.mode === "practice" ? ` of ${PRACTICE_ROUNDS}` : ""}`),
      el("span", { class: "stat" }, `score ${state.score}`),
    ];
    if (state.mode === "challenge") {
      bits.push(el("span", { class: "stat strikes" }, "✗".repeat(state.wrong) || "no strikes"));
    }
    if (state.lastCorrect !== null) {
      bits.push(
        el(
          "span",
          { class: state.lastCorrect ? "verdict good" : "verdict bad" },
          state.lastCorrect ? "last guess: correct" : "last guess: wrong",
        ),
      );
    }
    return el("div", { class: "status-row" }, ...bits);
  }

  function render(): void {
    clear(body);
    barEls = [[], []];
    playButtons = [null, null];
    if (!game) {
      body.append(el("p", { class: "hint" }, "Pick a mode to start."));
      return;
    }
    if (game.finished) {
      body.append(
        el(
          "div",
          { class: "final-panel" },
          el("h3", {}, game.mode === "practice" ? "Practice complete" : "Challenge over"),
          el("p", {}, `Final score: ${game.score}`),
          el("p", { class: "hint" }, "Start another game from the buttons above."),
        ),
      );
      return;
    }
    if (!game.round) return;
    body.append(
      statusRow(game),
      el("div", { class: "clip-row" }, clipCard(0), clipCard(1)),
      el(
        "p",
        { class: "hint" },
        canGuess(game)
          ? "Make your pick."
          : "Play both clips at least once to unlock guessing.",
      ),
    );
  }

  engine.onStop(() => {
    if (playingSlot !== null) {
      const slot = playingSlot;
      playingSlot = null;
      const button = playButtons[slot];
      if (button) {
        button.textContent = "Play again";
        button.classList.remove("primary");
      }
    }
  });
  engine.onStep((step) => {
    if (playingSlot === null) return;
    const limit = Math.floor((step / MELODY_STEPS) * WAVEFORM_BARS);
    barEls[playingSlot].forEach((bar, i) => bar.classList.toggle("lit", i <= limit));
  });

  render();
}
