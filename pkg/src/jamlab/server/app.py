"""REST facade over the trained models, the sheet library, and the Turing game.

All request and response bodies use the canonical music JSON. Bodies are
parsed by hand so schema violations answer 400 with the offending field,
unknown ids answer 404, an already-answered round answers 409, and
anything unexpected answers a bare 500 with no stack trace.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse

from ..corpus import load_jsonl
from ..models.drum_vae import DrumVae, set_latent_dim
from ..models.harmonizer import Harmonizer, harmonize
from ..models.leadsheet_vae import (
    INTERPOLATION_MODES,
    MAX_FRAMES,
    MIN_FRAMES,
    LeadSheetVae,
    interpolate,
)
from ..music import (
    LATENT_DIM,
    SchemaError,
    chord_to_jsonable,
    circle_of_fifths_index,
    drum_pattern_from_jsonable,
    drum_pattern_to_jsonable,
    latent_from_jsonable,
    latent_to_jsonable,
    leadsheet_to_jsonable,
    melody_from_jsonable,
)
from ..nn import load_weights
from .sessions import PRACTICE_LEVELS, RoundClosedError, TuringGame, UnknownIdError

DRUM_WEIGHTS = "drum-vae.weights"
LEADSHEET_WEIGHTS = "leadsheet-vae.weights"
HARMONIZER_WEIGHTS = "harmonizer.weights"
LIBRARY_FILE = "leadsheets.jsonl"
PRACTICE_FILE = "practice_levels.json"


@dataclass(frozen=True)
class DemoConfig:
    weights_dir: Path
    corpus_dir: Path
    static_dir: Path | None = None


def _reject_constant(text):
    raise SchemaError("<document>", f"non-finite literal {text!r} is not allowed")


async def _read_json_object(request: Request) -> dict:
    raw = await request.body()
    try:
        obj = json.loads(raw, parse_constant=_reject_constant)
    except json.JSONDecodeError as err:
        raise SchemaError("<document>", f"invalid JSON: {err}") from err
    if not isinstance(obj, dict):
        raise SchemaError("<document>", "expected a JSON object")
    return obj


def _require_int(obj: dict, name: str) -> int:
    if name not in obj:
        raise SchemaError(name, "missing field")
    value = obj[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(name, f"expected an integer, got {type(value).__name__}")
    return value


def _require_str(obj: dict, name: str) -> str:
    if name not in obj:
        raise SchemaError(name, "missing field")
    value = obj[name]
    if not isinstance(value, str):
        raise SchemaError(name, f"expected a string, got {type(value).__name__}")
    return value


def _require_number(obj: dict, name: str) -> float:
    if name not in obj:
        raise SchemaError(name, "missing field")
    value = obj[name]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(name, f"expected a number, got {type(value).__name__}")
    value = float(value)
    if not np.isfinite(value):
        raise SchemaError(name, "expected a finite number")
    return value


def _require_object(obj: dict, name: str) -> dict:
    if name not in obj:
        raise SchemaError(name, "missing field")
    value = obj[name]
    if not isinstance(value, dict):
        raise SchemaError(name, f"expected an object, got {type(value).__name__}")
    return value


def _parse_seed(request: Request) -> int | None:
    raw = request.query_params.get("seed")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise SchemaError("seed", f"expected an integer, got {raw!r}") from None


def _load_practice_levels(path: Path, library_size: int) -> list[tuple[int, int]]:
    """Six (sheet_id, slot_seed) pairs; falls back to the first six sheets."""
    if not path.is_file():
        return [(i, i) for i in range(min(PRACTICE_LEVELS, library_size))]
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    levels = [(entry["sheet_id"], entry["seed"]) for entry in data["levels"]]
    if len(levels) != PRACTICE_LEVELS or not all(
        isinstance(i, int) and 0 <= i < library_size and isinstance(s, int)
        for i, s in levels
    ):
        raise ValueError(f"{path} must list {PRACTICE_LEVELS} valid levels")
    return levels


def create_app(config: DemoConfig) -> FastAPI:
    weights_dir = Path(config.weights_dir)
    corpus_dir = Path(config.corpus_dir)
    static_dir = Path(config.static_dir).resolve() if config.static_dir else None

    drum = DrumVae.from_weights(load_weights(weights_dir / DRUM_WEIGHTS))
    harmonizer = Harmonizer.from_weights(load_weights(weights_dir / HARMONIZER_WEIGHTS))
    sheet_models = {
        path.stem: LeadSheetVae.from_weights(load_weights(path))
        for path in sorted(weights_dir.glob("leadsheet-vae*.weights"))
    }
    default_stem = Path(LEADSHEET_WEIGHTS).stem
    if default_stem not in sheet_models:
        raise FileNotFoundError(f"missing {weights_dir / LEADSHEET_WEIGHTS}")
    library = load_jsonl(corpus_dir / LIBRARY_FILE)

    levels = _load_practice_levels(corpus_dir / PRACTICE_FILE, len(library))
    game = TuringGame(
        harmonize_fn=lambda melody: harmonize(harmonizer, melody)[0],
        practice_plan=[
            (library[i].melody, library[i].chords, seed) for i, seed in levels
        ],
        challenge_pool=[(sheet.melody, sheet.chords) for sheet in library],
    )
    free_rng = np.random.default_rng()

    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)
    # Internals handle for tests and operational tooling; not wire contract.
    app.state.game = game

    @app.exception_handler(SchemaError)
    async def _schema_error(request, exc: SchemaError):
        return JSONResponse(status_code=400, content={"error": str(exc), "field": exc.field})

    @app.exception_handler(UnknownIdError)
    async def _unknown_id(request, exc: UnknownIdError):
        return JSONResponse(status_code=404, content={"error": str(exc.args[0])})

    @app.exception_handler(RoundClosedError)
    async def _round_closed(request, exc: RoundClosedError):
        return JSONResponse(status_code=409, content={"error": str(exc)})

    @app.exception_handler(Exception)
    async def _internal(request, exc: Exception):
        return JSONResponse(status_code=500, content={"error": "internal error"})

    # -- drum endpoints -----------------------------------------------------

    @app.get("/api/drum/random")
    async def drum_random(request: Request):
        seed = _parse_seed(request)
        rng = free_rng if seed is None else np.random.default_rng(seed)
        z, pattern = drum.sample_prior(rng)
        return {
            "latent": latent_to_jsonable(z),
            "pattern": drum_pattern_to_jsonable(pattern),
        }

    @app.post("/api/drum/encode")
    async def drum_encode(request: Request):
        pattern = drum_pattern_from_jsonable(await _read_json_object(request))
        return {"latent": latent_to_jsonable(drum.encode(pattern))}

    @app.post("/api/drum/decode")
    async def drum_decode(request: Request):
        z = latent_from_jsonable(await _read_json_object(request))
        probs = drum.decode_probs(z)
        pattern = drum.decode(z)
        return {
            "pattern": drum_pattern_to_jsonable(pattern),
            "probabilities": probs.tolist(),
        }

    @app.post("/api/drum/adjust")
    async def drum_adjust(request: Request):
        body = await _read_json_object(request)
        z = latent_from_jsonable(_require_object(body, "latent"))
        index = _require_int(body, "index")
        if not 0 <= index < LATENT_DIM:
            raise SchemaError("index", f"expected 0..{LATENT_DIM - 1}, got {index}")
        value = _require_number(body, "value")
        adjusted = set_latent_dim(z, index, value)
        return {
            "latent": latent_to_jsonable(adjusted),
            "pattern": drum_pattern_to_jsonable(drum.decode(adjusted)),
        }

    # -- lead-sheet endpoints -------------------------------------------------

    @app.get("/api/leadsheet/library")
    async def leadsheet_library():
        return {
            "sheets": [
                {"id": i, "sheet": leadsheet_to_jsonable(sheet)}
                for i, sheet in enumerate(library)
            ]
        }

    def _parse_interpolation(body: dict):
        id_a = _require_int(body, "id_a")
        id_b = _require_int(body, "id_b")
        for name, value in (("id_a", id_a), ("id_b", id_b)):
            if not 0 <= value < len(library):
                raise UnknownIdError(f"unknown sheet id {value}")
        steps = _require_int(body, "steps")
        if not MIN_FRAMES <= steps <= MAX_FRAMES:
            raise SchemaError("steps", f"expected {MIN_FRAMES}..{MAX_FRAMES}, got {steps}")
        mode = body.get("mode", "slerp")
        if mode not in INTERPOLATION_MODES:
            raise SchemaError("mode", f'expected "slerp" or "lerp", got {mode!r}')
        return library[id_a], library[id_b], steps, mode

    @app.post("/api/leadsheet/interpolate")
    async def leadsheet_interpolate(request: Request):
        a, b, steps, mode = _parse_interpolation(await _read_json_object(request))
        frames = interpolate(sheet_models[default_stem], a, b, steps, mode)
        return {"frames": [leadsheet_to_jsonable(f) for f in frames]}

    @app.post("/api/leadsheet/interpolate_ab")
    async def leadsheet_interpolate_ab(request: Request):
        body = await _read_json_object(request)
        a, b, steps, mode = _parse_interpolation(body)
        picked = []
        for name in ("model_a", "model_b"):
            stem = _require_str(body, name)
            if stem not in sheet_models:
                raise UnknownIdError(f"unknown model {stem!r}")
            picked.append(sheet_models[stem])
        return {
            "frames_a": [leadsheet_to_jsonable(f) for f in interpolate(picked[0], a, b, steps, mode)],
            "frames_b": [leadsheet_to_jsonable(f) for f in interpolate(picked[1], a, b, steps, mode)],
        }

    # -- harmonizer ------------------------------------------------------------

    @app.post("/api/harmonize")
    async def harmonize_endpoint(request: Request):
        melody = melody_from_jsonable(await _read_json_object(request))
        chords, functions, _ = harmonize(harmonizer, melody)
        return {
            "chords": [chord_to_jsonable(c) for c in chords.chords],
            "functions": [fn.value if fn is not None else None for fn in functions],
            "circle_indices": [
                None if c.is_no_chord else circle_of_fifths_index(c.root)
                for c in chords.chords
            ],
        }

    # -- turing game -------------------------------------------------------------

    @app.post("/api/turing/start")
    async def turing_start(request: Request):
        body = await _read_json_object(request)
        mode = _require_str(body, "mode")
        if mode not in ("practice", "challenge"):
            raise SchemaError("mode", f'expected "practice" or "challenge", got {mode!r}')
        session_id, round_payload = game.start(mode, _parse_seed(request))
        return {"session_id": session_id, "round": round_payload}

    @app.post("/api/turing/guess")
    async def turing_guess(request: Request):
        body = await _read_json_object(request)
        session_id = _require_str(body, "session_id")
        round_id = _require_str(body, "round_id")
        slot = _require_int(body, "slot")
        if slot not in (0, 1):
            raise SchemaError("slot", f"expected 0 or 1, got {slot}")
        return game.guess(session_id, round_id, slot)

    # -- static client ----------------------------------------------------------

    @app.get("/{path:path}")
    async def static_files(path: str):
        if static_dir is None:
            return JSONResponse(status_code=404, content={"error": "not found"})
        target = (static_dir / path).resolve() if path else static_dir / "index.html"
        inside = target == static_dir or str(target).startswith(str(static_dir) + os.sep)
        if not inside:
            return JSONResponse(status_code=404, content={"error": "not found"})
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            return JSONResponse(status_code=404, content={"error": "not found"})
        return FileResponse(target)

    return app
