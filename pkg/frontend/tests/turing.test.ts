import { describe, expect, it } from "vitest";
import {
  TuringState,
  applyGuessResult,
  canGuess,
  createGame,
  markPlayed,
} from "../src/core/turing";
import { TuringGuessResponse, TuringRoundJson } from "../src/types";

function round(number: number): TuringRoundJson {
  const chords = Array.from({ length: 8 }, () => ({ root: 0, quality: "maj" as const }));
  return {
    round_id: `r${number}`,
    number,
    melody: { tokens: new Array<number>(64).fill(0) },
    clips: [chords, chords],
  };
}

function freshGame(mode: "practice" | "challenge" = "practice"): TuringState {
  return createGame(mode, "session-1", round(1));
}

describe("guess gating", () => {
  it("requires both clips to have been played", () => {
    let state = freshGame();
    expect(canGuess(state)).toBe(false);
    state = markPlayed(state, 0);
    expect(canGuess(state)).toBe(false);
    state = markPlayed(state, 1);
    expect(canGuess(state)).toBe(true);
  });

  it("re-playing one clip does not unlock the gate alone", () => {
    let state = freshGame();
    state = markPlayed(state, 0);
    state = markPlayed(state, 0);
    expect(canGuess(state)).toBe(false);
  });

  it("allows only one guess per round", () => {
    let state = freshGame();
    state = markPlayed(state, 0);
    state = markPlayed(state, 1);
    state = applyGuessResult(state, {
      correct: true,
      score: 1,
      finished: true,
    });
    expect(state.answered).toBe(true);
    expect(canGuess(state)).toBe(false);
  });

  it("re-arms the gate when the next round arrives", () => {
    let state = freshGame();
    state = markPlayed(state, 0);
    state = markPlayed(state, 1);
    state = applyGuessResult(state, {
      correct: true,
      score: 1,
      finished: false,
      next_round: round(2),
    });
    expect(state.round?.number).toBe(2);
    expect(state.played).toEqual([false, false]);
    expect(state.answered).toBe(false);
    expect(canGuess(state)).toBe(false);
  });
});

function playRound(state: TuringState): TuringState {
  return markPlayed(markPlayed(state, 0), 1);
}

describe("game termination", () => {
  it("practice finishes after round 6", () => {
    let state = freshGame("practice");
    for (let n = 1; n <= 6; n += 1) {
      state = playRound(state);
      expect(canGuess(state)).toBe(true);
      const result: TuringGuessResponse =
        n < 6
          ? { correct: true, score: n, finished: false, next_round: round(n + 1) }
          : { correct: true, score: 6, finished: true };
      state = applyGuessResult(state, result);
    }
    expect(state.finished).toBe(true);
    expect(state.score).toBe(6);
    expect(canGuess(state)).toBe(false);
  });

  it("challenge finishes at the third wrong answer", () => {
    let state = freshGame("challenge");
    const results: TuringGuessResponse[] = [
      { correct: false, score: 0, finished: false, next_round: round(2) },
      { correct: true, score: 1, finished: false, next_round: round(3) },
      { correct: false, score: 1, finished: false, next_round: round(4) },
      { correct: false, score: 1, finished: true },
    ];
    for (const result of results) {
      state = playRound(state);
      state = applyGuessResult(state, result);
    }
    expect(state.wrong).toBe(3);
    expect(state.finished).toBe(true);
    expect(canGuess(state)).toBe(false);
  });

  it("tracks the last verdict for feedback", () => {
    let state = playRound(freshGame());
    state = applyGuessResult(state, {
      correct: false,
      score: 0,
      finished: false,
      next_round: round(2),
    });
    expect(state.lastCorrect).toBe(false);
    expect(state.wrong).toBe(1);
  });
});
