// Listening-game state. The answer lives on the server; the client only
// tracks which clips were auditioned, whether a guess is allowed, and
// the running score the server reports back.

import { TuringGuessResponse, TuringRoundJson } from "../types";

export type GameMode = "practice" | "challenge";

export interface TuringState {
  mode: GameMode;
  sessionId: string;
  round: TuringRoundJson | null;
  played: [boolean, boolean];
  answered: boolean;
  lastCorrect: boolean | null;
  score: number;
  wrong: number;
  finished: boolean;
}

export function createGame(
  mode: GameMode,
  sessionId: string,
  round: TuringRoundJson,
): TuringState {
  return {
    mode,
    sessionId,
    round,
    played: [false, false],
    answered: false,
    lastCorrect: null,
    score: 0,
    wrong: 0,
    finished: false,
  };
}

export function markPlayed(state: TuringState, slot: 0 | 1): TuringState {
  const played: [boolean, boolean] = [...state.played];
  played[slot] = true;
  return { ...state, played };
}

// Both clips must have been auditioned at least once; one guess per round.
export function canGuess(state: TuringState): boolean {
  return (
    state.played[0] &&
    state.played[1] &&
    !state.answered &&
    !state.finished &&
    state.round !== null
  );
}

// Fold a server verdict into the state. A non-terminal result carries
// the next round, which re-arms the audition gate; a terminal one
// freezes the game on the answered round.
export function applyGuessResult(
  state: TuringState,
  result: TuringGuessResponse,
): TuringState {
  const next = result.next_round ?? null;
  return {
    ...state,
    lastCorrect: result.correct,
    score: result.score,
    wrong: state.wrong + (result.correct ? 0 : 1),
    finished: result.finished,
    round: next ?? state.round,
    played: next ? [false, false] : state.played,
    answered: next === null,
  };
}
