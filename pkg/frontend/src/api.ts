// Thin typed client for the demo server. Every non-2xx response becomes
// an ApiError carrying the server's error message and offending field.

import {
  DrumDecodeResponse,
  DrumPatternJson,
  DrumRandomResponse,
  HarmonizeResponse,
  LatentJson,
  LeadSheetJson,
  LibraryEntry,
  MelodyJson,
  TuringGuessResponse,
  TuringStartResponse,
} from "./types";

export class ApiError extends Error {
  readonly status: number;
  readonly field: string | null;

  constructor(status: number, message: string, field: string | null) {
    super(message);
    this.status = status;
    this.field = field;
  }
}

async function request<T>(method: string, url: string, body?: unknown): Promise<T> {
  const response = await fetch(url, {
    method,
    headers: body === undefined ? undefined : { "content-type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const payload = await response.json().catch(() => ({}));
  if (!response.ok) {
    const message =
      typeof payload.error === "string" ? payload.error : `HTTP ${response.status}`;
    throw new ApiError(response.status, message, payload.field ?? null);
  }
  return payload as T;
}

export const api = {
  drumRandom(seed?: number): Promise<DrumRandomResponse> {
    const query = seed === undefined ? "" : `?seed=${seed}`;
    return request("GET", `/api/drum/random${query}`);
  },
  drumEncode(pattern: DrumPatternJson): Promise<{ latent: LatentJson }> {
    return request("POST", "/api/drum/encode", pattern);
  },
  drumDecode(latent: LatentJson): Promise<DrumDecodeResponse> {
    return request("POST", "/api/drum/decode", latent);
  },
  drumAdjust(
    latent: LatentJson,
    index: number,
    value: number,
  ): Promise<{ latent: LatentJson; pattern: DrumPatternJson }> {
    return request("POST", "/api/drum/adjust", { latent, index, value });
  },
  library(): Promise<{ sheets: LibraryEntry[] }> {
    return request("GET", "/api/leadsheet/library");
  },
  interpolate(
    idA: number,
    idB: number,
    steps: number,
    mode: "slerp" | "lerp" = "slerp",
  ): Promise<{ frames: LeadSheetJson[] }> {
    return request("POST", "/api/leadsheet/interpolate", {
      id_a: idA,
      id_b: idB,
      steps,
      mode,
    });
  },
  harmonize(melody: MelodyJson): Promise<HarmonizeResponse> {
    return request("POST", "/api/harmonize", melody);
  },
  turingStart(mode: "practice" | "challenge"): Promise<TuringStartResponse> {
    return request("POST", "/api/turing/start", { mode });
  },
  turingGuess(
    sessionId: string,
    roundId: string,
    slot: 0 | 1,
  ): Promise<TuringGuessResponse> {
    return request("POST", "/api/turing/guess", {
      session_id: sessionId,
      round_id: roundId,
      slot,
    });
  },
};
