"""Bundled synthetic training corpora and JSONL persistence.

Desk-scale stand-ins for the large symbolic datasets the models are meant
for: 64 one-bar drum patterns varied from three style templates, and 128
four-bar C-major lead sheets built over diatonic progressions with
chord-tone melodies. Both generators are fully seeded.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

from .music import (
    DRUM_STEPS,
    DRUM_TRACKS,
    HALF_BARS,
    HOLD,
    REST,
    ChordSequence,
    ChordSymbol,
    DrumPattern,
    LeadSheet,
    MelodyLine,
    chord_to_chroma,
    deserialize,
    pitch_to_token,
    serialize,
)

DRUM_CORPUS_SIZE = 64
LEADSHEET_CORPUS_SIZE = 128

# Track rows (music.DRUM_INSTRUMENTS order).
KICK, SNARE, CLOSED_HAT, OPEN_HAT, LOW_TOM, MID_TOM, HIGH_TOM, CRASH, RIDE = range(9)

SIXTEENTH = DRUM_STEPS // 16  # 6 fine steps per sixteenth


def _hits(grid, track, sixteenths):
    for pos in sixteenths:
        grid[track][pos * SIXTEENTH] = 1


def _maybe(rng, p):
    return rng.random() < p


def _rock(grid, rng):
    _hits(grid, KICK, [0, 8])
    if _maybe(rng, 0.45):
        _hits(grid, KICK, [rng.choice([6, 10, 14])])
    _hits(grid, SNARE, [4, 12])
    if _maybe(rng, 0.2):
        _hits(grid, SNARE, [15])
    _hits(grid, CLOSED_HAT, range(0, 16))
    if _maybe(rng, 0.35):
        _hits(grid, RIDE, [0, 4, 8, 12])
    if _maybe(rng, 0.3):
        _hits(grid, CRASH, [0])
    if _maybe(rng, 0.25):
        _hits(grid, OPEN_HAT, [14])
        grid[CLOSED_HAT][14 * SIXTEENTH] = 0
    if _maybe(rng, 0.2):
        _hits(grid, rng.choice([LOW_TOM, MID_TOM, HIGH_TOM]), [14, 15])


def _funk(grid, rng):
    _hits(grid, KICK, [0, 3, 10])
    if _maybe(rng, 0.5):
        _hits(grid, KICK, [rng.choice([6, 13])])
    _hits(grid, SNARE, [4, 12])
    for ghost in (2, 7, 9, 15):
        if _maybe(rng, 0.3):
            _hits(grid, SNARE, [ghost])
    _hits(grid, CLOSED_HAT, range(0, 16))
    if _maybe(rng, 0.35):
        _hits(grid, OPEN_HAT, [rng.choice([6, 14])])
    if _maybe(rng, 0.35):
        _hits(grid, RIDE, [0, 2, 4, 6, 8, 10, 12, 14])


def _four_on_the_floor(grid, rng):
    _hits(grid, KICK, [0, 4, 8, 12])
    _hits(grid, SNARE, [4, 12])
    _hits(grid, CLOSED_HAT, range(0, 16))
    _hits(grid, OPEN_HAT, [2, 6, 10, 14])
    if _maybe(rng, 0.4):
        _hits(grid, RIDE, [0, 2, 4, 6, 8, 10, 12, 14])
    if _maybe(rng, 0.3):
        _hits(grid, CRASH, [0])
    if _maybe(rng, 0.2):
        _hits(grid, HIGH_TOM, [13, 15])


_DRUM_STYLES = (_rock, _funk, _four_on_the_floor)


def make_drum_corpus(count: int = DRUM_CORPUS_SIZE, seed: int = 11) -> list:
    """Seeded one-bar patterns cycling through the three style templates."""
    rng = np.random.default_rng(seed)
    patterns = []
    for i in range(count):
        grid = [[0] * DRUM_STEPS for _ in range(DRUM_TRACKS)]
        _DRUM_STYLES[i % len(_DRUM_STYLES)](grid, rng)
        patterns.append(DrumPattern.from_rows(grid))
    return patterns


# ---------------------------------------------------------------------------
# Lead sheets
# ---------------------------------------------------------------------------

_I = ChordSymbol(0, "maj")
_II = ChordSymbol(2, "min")
_III = ChordSymbol(4, "min")
_IV = ChordSymbol(5, "maj")
_V = ChordSymbol(7, "maj")
_VI = ChordSymbol(9, "min")

_PROGRESSIONS = (
    (_I, _I, _IV, _IV, _V, _V, _I, _I),
    (_I, _V, _VI, _IV, _I, _V, _VI, _IV),
    (_II, _V, _I, _I, _II, _V, _I, _VI),
    (_I, _VI, _IV, _V, _I, _VI, _IV, _V),
    (_I, _IV, _V, _IV, _I, _IV, _V, _I),
    (_VI, _IV, _I, _V, _VI, _IV, _I, _V),
    (_I, _III, _VI, _IV, _II, _V, _I, _I),
    (_I, _IV, _I, _V, _I, _IV, _V, _I),
)

# Half-bar rhythm cells; every cell opens with an onset so chord changes
# always carry a sounding note, and no REST is ever followed by a HOLD.
_RHYTHMS = (
    ("N", "H", "H", "H", "H", "H", "H", "H"),
    ("N", "H", "H", "H", "N", "H", "H", "H"),
    ("N", "H", "N", "H", "N", "H", "N", "H"),
    ("N", "H", "H", "H", "N", "H", "N", "H"),
    ("N", "H", "N", "H", "N", "H", "H", "H"),
    ("N", "H", "H", "R", "N", "H", "H", "R"),
)

_SCALE_PCS = (0, 2, 4, 5, 7, 9, 11)
_REGISTER_LOW, _REGISTER_HIGH = 60, 83


def _chord_tones(chord: ChordSymbol) -> tuple:
    return tuple(pc for pc, bit in enumerate(chord_to_chroma(chord)) if bit)


def _voice(pitch_class: int, prev_pitch: int) -> int:
    """Place a pitch class in the melody register, nearest the previous note."""
    candidates = [pc for pc in range(_REGISTER_LOW, _REGISTER_HIGH + 1)
                  if pc % 12 == pitch_class]
    return min(candidates, key=lambda p: (abs(p - prev_pitch), p))


def _pick_pitch(rng, chord: ChordSymbol, strong: bool, prev_pitch: int) -> int:
    root = chord.root % 12
    tones = _chord_tones(chord)
    if strong:
        r = rng.random()
        if r < 0.6:
            pc = root
        elif r < 0.85:
            pc = tones[1]
        else:
            pc = tones[2]
    else:
        if rng.random() < 0.75:
            pc = tones[rng.integers(len(tones))]
        else:
            passing = [p for p in _SCALE_PCS if p not in tones]
            pc = passing[rng.integers(len(passing))]
    return _voice(pc, prev_pitch)


def make_leadsheet_corpus(count: int = LEADSHEET_CORPUS_SIZE, seed: int = 13) -> list:
    """Seeded four-bar C-major sheets over the diatonic progression pool."""
    rng = np.random.default_rng(seed)
    sheets = []
    for i in range(count):
        progression = _PROGRESSIONS[i % len(_PROGRESSIONS)]
        tokens = []
        prev_pitch = 72
        for slot in range(HALF_BARS):
            chord = progression[slot]
            rhythm = _RHYTHMS[rng.integers(len(_RHYTHMS))]
            for step, mark in enumerate(rhythm):
                if mark == "H":
                    tokens.append(HOLD)
                elif mark == "R":
                    tokens.append(REST)
                else:
                    strong = step == 0
                    pitch = _pick_pitch(rng, chord, strong, prev_pitch)
                    prev_pitch = pitch
                    tokens.append(pitch_to_token(pitch))
        melody = MelodyLine.from_tokens(tokens)
        sheets.append(LeadSheet(melody, ChordSequence.from_chords(progression), key=0))
    return sheets


# ---------------------------------------------------------------------------
# JSONL persistence
# ---------------------------------------------------------------------------

def save_jsonl(path, values) -> None:
    """One canonical-JSON object per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for value in values:
            fh.write(serialize(value) + "\n")


def load_jsonl(path) -> list:
    with open(path, encoding="utf-8") as fh:
        return [deserialize(line) for line in fh if line.strip()]
