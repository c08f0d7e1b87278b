"""Featurization of music values into model input arrays (time-major)."""
from __future__ import annotations

import numpy as np

from ..music import (
    DRUM_STEPS,
    DRUM_TRACKS,
    HALF_BARS,
    MELODY_STEPS,
    MELODY_STEPS_PER_HALF_BAR,
    MELODY_VOCAB,
    ChordSequence,
    DrumPattern,
    MelodyLine,
)


def drum_to_array(pattern: DrumPattern) -> np.ndarray:
    """(96, 9) float array, steps-major."""
    return np.asarray(pattern.grid, dtype=np.float64).T


def array_to_drum(steps_by_track: np.ndarray) -> DrumPattern:
    """(96, 9) binary array back to a DrumPattern."""
    grid = np.asarray(steps_by_track).T
    return DrumPattern.from_rows(grid.astype(int).tolist())


def drum_batch(patterns) -> np.ndarray:
    """(96, B, 9) stacked input/target array."""
    return np.stack([drum_to_array(p) for p in patterns], axis=1)


def melody_onehot(melody: MelodyLine) -> np.ndarray:
    """(64, 51) one-hot rows."""
    out = np.zeros((MELODY_STEPS, MELODY_VOCAB))
    out[np.arange(MELODY_STEPS), np.asarray(melody.tokens)] = 1.0
    return out


def melody_batch(melodies) -> np.ndarray:
    """(64, B, 51) one-hot batch."""
    return np.stack([melody_onehot(m) for m in melodies], axis=1)


def chroma_steps(chords: ChordSequence) -> np.ndarray:
    """(64, 12) chroma, each half-bar row repeated over its 8 melody steps."""
    rows = np.asarray(chords.chroma, dtype=np.float64)
    return np.repeat(rows, MELODY_STEPS_PER_HALF_BAR, axis=0)


def chroma_batch(chord_seqs) -> np.ndarray:
    """(64, B, 12) chroma batch."""
    return np.stack([chroma_steps(c) for c in chord_seqs], axis=1)


def _onehot(indices, width) -> np.ndarray:
    out = np.zeros((len(indices), width))
    out[np.arange(len(indices)), indices] = 1.0
    return out


def drum_position_features() -> np.ndarray:
    """(96, 22) metric position code: sixteenth index (16) + fine offset (6).

    Decoder GRUs receive these alongside the latent so every step has a
    distinct, grid-aligned input.
    """
    steps = np.arange(DRUM_STEPS)
    fine = DRUM_STEPS // 16
    return np.concatenate([_onehot(steps // fine, 16), _onehot(steps % fine, fine)], axis=1)


def melody_position_features() -> np.ndarray:
    """(64, 20) position code: step within bar (16) + bar index (4)."""
    steps = np.arange(MELODY_STEPS)
    return np.concatenate([_onehot(steps % 16, 16), _onehot(steps // 16, 4)], axis=1)


def half_bar_position_features() -> np.ndarray:
    """(8, 8) one-hot half-bar slot code."""
    return _onehot(np.arange(HALF_BARS), HALF_BARS)
