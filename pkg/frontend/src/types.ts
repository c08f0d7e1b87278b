// Wire types mirrored from the server's JSON schema.

export interface DrumPatternJson {
  grid: number[][];
}

export interface LatentJson {
  dim: number;
  values: number[];
}

export interface MelodyJson {
  tokens: number[];
}

export type ChordQuality = "maj" | "min" | "nc";

export interface ChordJson {
  root: number;
  quality: ChordQuality;
}

export interface LeadSheetJson {
  melody: MelodyJson;
  chords: ChordJson[];
  key: number;
}

export type FunctionName = "tonic" | "subdominant" | "dominant";

export interface DrumRandomResponse {
  latent: LatentJson;
  pattern: DrumPatternJson;
}

export interface DrumDecodeResponse {
  pattern: DrumPatternJson;
  probabilities: number[][];
}

export interface LibraryEntry {
  id: number;
  sheet: LeadSheetJson;
}

export interface HarmonizeResponse {
  chords: ChordJson[];
  functions: (FunctionName | null)[];
  circle_indices: (number | null)[];
}

export interface TuringRoundJson {
  round_id: string;
  number: number;
  melody: MelodyJson;
  clips: ChordJson[][];
}

export interface TuringStartResponse {
  session_id: string;
  round: TuringRoundJson;
}

export interface TuringGuessResponse {
  correct: boolean;
  score: number;
  finished: boolean;
  next_round?: TuringRoundJson;
}

export const DRUM_TRACKS = 9;
export const DRUM_STEPS = 96;
export const MELODY_STEPS = 64;
export const HALF_BARS = 8;
export const LATENT_DIM = 32;
export const REST = 0;
export const HOLD = 1;
