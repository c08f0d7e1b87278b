"""Symbolic music value types: pianorolls, lead sheets, chords, and their wire format.

Everything here is an immutable value with pure operations, safe to share
across threads. The JSON schemas are the canonical client/server exchange
format; field names are load-bearing.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

DRUM_TRACKS = 9
DRUM_STEPS = 96
DRUM_INSTRUMENTS = (
    "kick",
    "snare",
    "closed_hihat",
    "open_hihat",
    "low_tom",
    "mid_tom",
    "high_tom",
    "crash",
    "ride",
)

MELODY_STEPS = 64  # 4 bars x 16 sixteenth steps
MELODY_STEPS_PER_HALF_BAR = 8
HALF_BARS = 8

REST = 0
HOLD = 1
MELODY_MIN_PITCH = 48
MELODY_MAX_PITCH = 96
MELODY_VOCAB = 2 + (MELODY_MAX_PITCH - MELODY_MIN_PITCH + 1)  # 51

CHORD_VOCAB = 25  # 12 major + 12 minor + N.C.
NO_CHORD_INDEX = 24

LATENT_DIM = 32
LATENT_CLAMP = 4.0

MAJOR_SCALE = (0, 2, 4, 5, 7, 9, 11)


class SchemaError(ValueError):
    """Raised when wire data violates a schema; carries the offending field."""

    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


class HarmonyError(ValueError):
    """Raised when a harmony operation is undefined for its input."""


class HarmonicFunction(enum.Enum):
    TONIC = "tonic"
    SUBDOMINANT = "subdominant"
    DOMINANT = "dominant"


def pitch_to_token(midi_pitch: int) -> int:
    if not MELODY_MIN_PITCH <= midi_pitch <= MELODY_MAX_PITCH:
        raise ValueError(f"melody pitch {midi_pitch} outside MIDI {MELODY_MIN_PITCH}..{MELODY_MAX_PITCH}")
    return 2 + (midi_pitch - MELODY_MIN_PITCH)


def token_to_pitch(token: int) -> int:
    if token < 2 or token >= MELODY_VOCAB:
        raise ValueError(f"token {token} is not a pitch onset")
    return MELODY_MIN_PITCH + (token - 2)


@dataclass(frozen=True)
class DrumPattern:
    """One bar of drums: 9 instruments x 96 steps, cells in {0, 1}."""

    grid: tuple

    def __post_init__(self):
        if len(self.grid) != DRUM_TRACKS:
            raise ValueError(f"grid must have {DRUM_TRACKS} rows, got {len(self.grid)}")
        for row in self.grid:
            if len(row) != DRUM_STEPS:
                raise ValueError(f"grid rows must have {DRUM_STEPS} steps, got {len(row)}")
            for cell in row:
                if cell not in (0, 1):
                    raise ValueError(f"grid cells must be 0 or 1, got {cell!r}")

    @classmethod
    def from_rows(cls, rows) -> "DrumPattern":
        return cls(tuple(tuple(int(c) for c in row) for row in rows))

    @classmethod
    def zeros(cls) -> "DrumPattern":
        return cls(tuple((0,) * DRUM_STEPS for _ in range(DRUM_TRACKS)))

    def density(self) -> float:
        on = sum(sum(row) for row in self.grid)
        return on / (DRUM_TRACKS * DRUM_STEPS)


def repair_melody_tokens(tokens) -> tuple:
    """Coerce a raw token sequence into a valid melody.

    A HOLD at step 0 or right after a REST has nothing to sustain; it
    becomes a REST. Used when decoding model output back into a value type.
    """
    fixed = []
    prev = REST
    for t in tokens:
        t = int(t)
        if t == HOLD and prev == REST:
            t = REST
        fixed.append(t)
        prev = t
    return tuple(fixed)


@dataclass(frozen=True)
class MelodyLine:
    """Four bars of monophonic melody on a sixteenth-note grid.

    Token ids: 0 = REST, 1 = HOLD, 2..50 = note onset at MIDI 48..96.
    A HOLD sustains the previous onset, so it cannot open the melody or
    follow a REST.
    """

    tokens: tuple

    def __post_init__(self):
        if len(self.tokens) != MELODY_STEPS:
            raise ValueError(f"melody must have {MELODY_STEPS} tokens, got {len(self.tokens)}")
        prev = REST
        for i, t in enumerate(self.tokens):
            if not isinstance(t, int) or not 0 <= t < MELODY_VOCAB:
                raise ValueError(f"token {t!r} at step {i} outside vocabulary 0..{MELODY_VOCAB - 1}")
            if t == HOLD and prev == REST:
                raise ValueError(f"HOLD at step {i} has no note to sustain")
            prev = t

    @classmethod
    def from_tokens(cls, tokens) -> "MelodyLine":
        return cls(tuple(int(t) for t in tokens))

    @classmethod
    def rest(cls) -> "MelodyLine":
        return cls((REST,) * MELODY_STEPS)

    def half_bar(self, index: int) -> tuple:
        start = index * MELODY_STEPS_PER_HALF_BAR
        return self.tokens[start : start + MELODY_STEPS_PER_HALF_BAR]

    def half_bar_is_rest(self, index: int) -> bool:
        return all(t == REST for t in self.half_bar(index))


@dataclass(frozen=True)
class ChordSymbol:
    """A triad label: root pitch class + quality, or N.C. (quality "nc")."""

    root: int
    quality: str

    def __post_init__(self):
        if self.quality not in ("maj", "min", "nc"):
            raise ValueError(f"quality must be maj/min/nc, got {self.quality!r}")
        if not 0 <= self.root <= 11:
            raise ValueError(f"root must be in 0..11, got {self.root}")
        if self.quality == "nc" and self.root != 0:
            # N.C. has no meaningful root; pin it to 0.
            object.__setattr__(self, "root", 0)

    @classmethod
    def no_chord(cls) -> "ChordSymbol":
        return cls(0, "nc")

    @property
    def is_no_chord(self) -> bool:
        return self.quality == "nc"


def chord_index(chord: ChordSymbol) -> int:
    """Dense 25-way label id: 0..11 major, 12..23 minor, 24 N.C."""
    if chord.is_no_chord:
        return NO_CHORD_INDEX
    return chord.root + (12 if chord.quality == "min" else 0)


def index_to_chord(index: int) -> ChordSymbol:
    if not 0 <= index < CHORD_VOCAB:
        raise ValueError(f"chord index {index} outside 0..{CHORD_VOCAB - 1}")
    if index == NO_CHORD_INDEX:
        return ChordSymbol.no_chord()
    if index < 12:
        return ChordSymbol(index, "maj")
    return ChordSymbol(index - 12, "min")


def chord_to_chroma(chord: ChordSymbol) -> tuple:
    """12-dim binary chroma of the triad; N.C. is all zeros."""
    bits = [0] * 12
    if not chord.is_no_chord:
        third = 3 if chord.quality == "min" else 4
        for interval in (0, third, 7):
            bits[(chord.root + interval) % 12] = 1
    return tuple(bits)


@dataclass(frozen=True)
class ChordSequence:
    """Eight half-bar chord slots over four bars."""

    chords: tuple

    def __post_init__(self):
        if len(self.chords) != HALF_BARS:
            raise ValueError(f"chord sequence must have {HALF_BARS} slots, got {len(self.chords)}")
        for c in self.chords:
            if not isinstance(c, ChordSymbol):
                raise ValueError(f"chord slots must be ChordSymbol, got {type(c).__name__}")

    @property
    def chroma(self) -> tuple:
        # Derived, never stored: rows stay consistent with the labels by construction.
        return tuple(chord_to_chroma(c) for c in self.chords)

    @classmethod
    def from_chords(cls, chords) -> "ChordSequence":
        return cls(tuple(chords))


@dataclass(frozen=True)
class LeadSheet:
    """Melody plus chord labels over the same four-bar span."""

    melody: MelodyLine
    chords: ChordSequence
    key: int = 0

    def __post_init__(self):
        if not 0 <= self.key <= 11:
            raise ValueError(f"key must be a pitch class 0..11, got {self.key}")


@dataclass(frozen=True)
class LatentVector:
    """The editable 32-dim code of a VAE; finite reals."""

    values: tuple

    def __post_init__(self):
        if len(self.values) != LATENT_DIM:
            raise ValueError(f"latent must have {LATENT_DIM} values, got {len(self.values)}")
        for i, v in enumerate(self.values):
            if not math.isfinite(v):
                raise ValueError(f"latent value at index {i} is not finite")

    @classmethod
    def from_values(cls, values) -> "LatentVector":
        return cls(tuple(float(v) for v in values))

    def with_coordinate(self, index: int, value: float) -> "LatentVector":
        """Copy with one coordinate replaced, clamped to the editable range."""
        if not 0 <= index < LATENT_DIM:
            raise IndexError(f"latent index {index} outside 0..{LATENT_DIM - 1}")
        clamped = min(max(float(value), -LATENT_CLAMP), LATENT_CLAMP)
        vals = list(self.values)
        vals[index] = clamped
        return LatentVector(tuple(vals))


# ---------------------------------------------------------------------------
# Harmony operations
# ---------------------------------------------------------------------------

def circle_of_fifths_index(pitch_class: int) -> int:
    """Position on the circle of fifths: C=0, G=1, D=2, ... F=11."""
    if not isinstance(pitch_class, int) or not 0 <= pitch_class <= 11:
        raise ValueError(f"pitch class must be in 0..11, got {pitch_class!r}")
    return (pitch_class * 7) % 12


def harmonic_distance(a: ChordSymbol, b: ChordSymbol) -> int:
    """Minimal circle-of-fifths steps between two chord roots (0..6)."""
    if a.is_no_chord or b.is_no_chord:
        raise HarmonyError("distance undefined for N.C.")
    d = abs(circle_of_fifths_index(a.root) - circle_of_fifths_index(b.root))
    return min(d, 12 - d)


# (degree interval from key, quality) -> function, for the major scale.
_FUNCTION_TABLE = {
    (0, "maj"): HarmonicFunction.TONIC,
    (2, "min"): HarmonicFunction.SUBDOMINANT,
    (4, "min"): HarmonicFunction.TONIC,
    (5, "maj"): HarmonicFunction.SUBDOMINANT,
    (7, "maj"): HarmonicFunction.DOMINANT,
    (9, "min"): HarmonicFunction.TONIC,
    # Degree 7 stands in for the diminished triad in the 24-triad vocabulary.
    (11, "min"): HarmonicFunction.DOMINANT,
}


def chord_function(chord: ChordSymbol, key: int) -> HarmonicFunction:
    """Tonic/subdominant/dominant class of a diatonic chord in a major key."""
    if not 0 <= key <= 11:
        raise ValueError(f"key must be a pitch class 0..11, got {key}")
    if chord.is_no_chord:
        raise HarmonyError("function undefined for N.C.")
    degree = (chord.root - key) % 12
    fn = _FUNCTION_TABLE.get((degree, chord.quality))
    if fn is None:
        raise HarmonyError(
            f"function undefined: {chord.quality} chord on degree {degree} is not diatonic"
        )
    return fn


def is_diatonic(chord: ChordSymbol, key: int) -> bool:
    if chord.is_no_chord:
        return False
    return ((chord.root - key) % 12, chord.quality) in _FUNCTION_TABLE


# ---------------------------------------------------------------------------
# Canonical JSON wire format
# ---------------------------------------------------------------------------

def _require(obj: dict, field_name: str, kind, path: str = ""):
    full = f"{path}{field_name}"
    if not isinstance(obj, dict):
        raise SchemaError(path or field_name, "expected a JSON object")
    if field_name not in obj:
        raise SchemaError(full, "missing field")
    value = obj[field_name]
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(full, f"expected an integer, got {type(value).__name__}")
    elif kind is list:
        if not isinstance(value, list):
            raise SchemaError(full, f"expected an array, got {type(value).__name__}")
    elif kind is str:
        if not isinstance(value, str):
            raise SchemaError(full, f"expected a string, got {type(value).__name__}")
    return value


def _check_bit(value, field_name: str):
    if isinstance(value, bool) or not isinstance(value, int) or value not in (0, 1):
        raise SchemaError(field_name, f"expected 0 or 1, got {value!r}")
    return value


def drum_pattern_to_jsonable(p: DrumPattern) -> dict:
    return {"type": "drum", "grid": [list(row) for row in p.grid]}


def drum_pattern_from_jsonable(obj: dict) -> DrumPattern:
    grid = _require(obj, "grid", list)
    if len(grid) != DRUM_TRACKS:
        raise SchemaError("grid", f"expected {DRUM_TRACKS} rows, got {len(grid)}")
    rows = []
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != DRUM_STEPS:
            raise SchemaError(f"grid[{i}]", f"expected {DRUM_STEPS} cells")
        rows.append(tuple(_check_bit(c, f"grid[{i}][{j}]") for j, c in enumerate(row)))
    return DrumPattern(tuple(rows))


def melody_to_jsonable(m: MelodyLine) -> dict:
    return {"type": "melody", "tokens": list(m.tokens)}


def melody_from_jsonable(obj: dict) -> MelodyLine:
    tokens = _require(obj, "tokens", list)
    if len(tokens) != MELODY_STEPS:
        raise SchemaError("tokens", f"expected {MELODY_STEPS} tokens, got {len(tokens)}")
    out = []
    prev = REST
    for i, t in enumerate(tokens):
        if isinstance(t, bool) or not isinstance(t, int) or not 0 <= t < MELODY_VOCAB:
            raise SchemaError(f"tokens[{i}]", f"expected an integer in 0..{MELODY_VOCAB - 1}, got {t!r}")
        if t == HOLD and prev == REST:
            raise SchemaError(f"tokens[{i}]", "HOLD has no note to sustain")
        out.append(t)
        prev = t
    return MelodyLine(tuple(out))


def chord_to_jsonable(c: ChordSymbol) -> dict:
    return {"root": c.root, "quality": c.quality}


def chord_from_jsonable(obj: dict, path: str = "") -> ChordSymbol:
    root = _require(obj, "root", int, path)
    quality = _require(obj, "quality", str, path)
    if quality not in ("maj", "min", "nc"):
        raise SchemaError(f"{path}quality", f'expected "maj", "min" or "nc", got {quality!r}')
    if not 0 <= root <= 11:
        raise SchemaError(f"{path}root", f"expected 0..11, got {root}")
    return ChordSymbol(root, quality)


def leadsheet_to_jsonable(ls: LeadSheet) -> dict:
    return {
        "type": "leadsheet",
        "melody": melody_to_jsonable(ls.melody),
        "chords": [chord_to_jsonable(c) for c in ls.chords.chords],
        "key": ls.key,
    }


def leadsheet_from_jsonable(obj: dict) -> LeadSheet:
    if not isinstance(obj, dict) or "melody" not in obj:
        raise SchemaError("melody", "missing field")
    melody_obj = obj["melody"]
    if not isinstance(melody_obj, dict):
        raise SchemaError("melody", "expected a melody object")
    melody = melody_from_jsonable(melody_obj)
    chords = _require(obj, "chords", list)
    if len(chords) != HALF_BARS:
        raise SchemaError("chords", f"expected {HALF_BARS} chords, got {len(chords)}")
    parsed = tuple(chord_from_jsonable(c, f"chords[{i}].") for i, c in enumerate(chords))
    key = _require(obj, "key", int)
    if not 0 <= key <= 11:
        raise SchemaError("key", f"expected 0..11, got {key}")
    return LeadSheet(melody, ChordSequence(parsed), key)


def latent_to_jsonable(z: LatentVector) -> dict:
    return {"type": "latent", "dim": LATENT_DIM, "values": list(z.values)}


def latent_from_jsonable(obj: dict) -> LatentVector:
    dim = _require(obj, "dim", int)
    if dim != LATENT_DIM:
        raise SchemaError("dim", f"expected {LATENT_DIM}, got {dim}")
    values = _require(obj, "values", list)
    if len(values) != LATENT_DIM:
        raise SchemaError("values", f"expected {LATENT_DIM} values, got {len(values)}")
    out = []
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SchemaError(f"values[{i}]", f"expected a number, got {v!r}")
        try:
            fv = float(v)
        except OverflowError:
            raise SchemaError(f"values[{i}]", "expected a finite number") from None
        if not math.isfinite(fv):
            raise SchemaError(f"values[{i}]", "expected a finite number")
        out.append(fv)
    return LatentVector(tuple(out))


_TO_JSONABLE = {
    DrumPattern: drum_pattern_to_jsonable,
    MelodyLine: melody_to_jsonable,
    LeadSheet: leadsheet_to_jsonable,
    LatentVector: latent_to_jsonable,
}

_FROM_JSONABLE = {
    "drum": drum_pattern_from_jsonable,
    "melody": melody_from_jsonable,
    "leadsheet": leadsheet_from_jsonable,
    "latent": latent_from_jsonable,
}


def to_jsonable(value) -> dict:
    fn = _TO_JSONABLE.get(type(value))
    if fn is None:
        raise TypeError(f"no wire format for {type(value).__name__}")
    return fn(value)


def from_jsonable(obj) -> object:
    if not isinstance(obj, dict):
        raise SchemaError("type", "expected a JSON object")
    kind = _require(obj, "type", str)
    fn = _FROM_JSONABLE.get(kind)
    if fn is None:
        raise SchemaError("type", f"unknown type {kind!r}")
    return fn(obj)


def _reject_constant(text):
    raise SchemaError("values", f"non-finite literal {text!r} is not allowed")


def serialize(value) -> str:
    return json.dumps(to_jsonable(value), separators=(",", ":"))


def deserialize(text: str) -> object:
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as err:
        raise SchemaError("<document>", f"invalid JSON: {err}") from err
    return from_jsonable(obj)
