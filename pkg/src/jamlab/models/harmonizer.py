"""Multi-task melody harmonizer: one chord and one function class per half-bar.

A bidirectional GRU reads the melody token grid; each half-bar's eight
step states are mean-pooled and a second, unidirectional GRU walks the
eight pooled summaries so later slots see earlier context. Two softmax
heads per slot predict the chord label (25-way) and its harmonic function
(tonic / subdominant / dominant), trained jointly.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..music import (
    CHORD_VOCAB,
    HALF_BARS,
    MELODY_STEPS_PER_HALF_BAR,
    MELODY_VOCAB,
    NO_CHORD_INDEX,
    ChordSequence,
    ChordSymbol,
    HarmonicFunction,
    HarmonyError,
    MelodyLine,
    chord_function,
    chord_index,
    circle_of_fifths_index,
    index_to_chord,
    is_diatonic,
)
from ..nn import (
    DenseLayer,
    GruCell,
    ModelWeights,
    Node,
    Tape,
    TrainConfig,
    bgru_states,
    fit,
    save_weights,
)
from ..nn import tape as T
from .features import melody_batch, melody_onehot

MODEL_KIND = "harmonizer"

FUNCTION_ORDER = (
    HarmonicFunction.TONIC,
    HarmonicFunction.SUBDOMINANT,
    HarmonicFunction.DOMINANT,
)
_FUNCTION_INDEX = {fn: i for i, fn in enumerate(FUNCTION_ORDER)}


@dataclass(frozen=True)
class HarmonizerConfig:
    encoder_hidden: int = 64
    slot_hidden: int = 64
    function_weight: float = 0.5
    train: TrainConfig = field(default_factory=lambda: TrainConfig(
        epochs=150, batch_size=16, learning_rate=3e-3, beta=0.0, warmup_frac=0.0))
    seed: int = 2303


class Harmonizer:
    def __init__(self, config: HarmonizerConfig, rng: np.random.Generator):
        self.config = config
        h, s = config.encoder_hidden, config.slot_hidden
        self.enc_fwd = GruCell.create(rng, MELODY_VOCAB, h)
        self.enc_bwd = GruCell.create(rng, MELODY_VOCAB, h)
        self.slot_cell = GruCell.create(rng, 2 * h, s)
        self.chord_head = DenseLayer.create(rng, CHORD_VOCAB, s)
        self.function_head = DenseLayer.create(rng, len(FUNCTION_ORDER), s)

    def named_params(self):
        for prefix, part in (
            ("enc_fwd", self.enc_fwd),
            ("enc_bwd", self.enc_bwd),
            ("slot_cell", self.slot_cell),
            ("chord_head", self.chord_head),
            ("function_head", self.function_head),
        ):
            yield from part.named(prefix)

    # -- differentiable pipeline ------------------------------------------

    def _slot_logits(self, tape: Tape | None, mel_x: np.ndarray) -> tuple[Node, Node]:
        """Chord (8*B, 25) and function (8*B, 3) logits, slot-major rows."""
        batch = mel_x.shape[1]
        states = bgru_states(tape, self.enc_fwd, self.enc_bwd, mel_x)
        h = T.constant(np.zeros((batch, self.config.slot_hidden)))
        slot_states = []
        for slot in range(HALF_BARS):
            span = states[slot * MELODY_STEPS_PER_HALF_BAR:(slot + 1) * MELODY_STEPS_PER_HALF_BAR]
            pooled = T.mean_nodes(tape, span)
            pre = self.slot_cell.input_projections(tape, pooled)
            h = T.gru_step_pre(tape, pre[0], pre[1], pre[2], None, h,
                               self.slot_cell.u_z, self.slot_cell.u_r, self.slot_cell.u_h)
            slot_states.append(h)
        flat = T.reshape(tape, T.stack_steps(tape, slot_states),
                         (HALF_BARS * batch, self.config.slot_hidden))
        return self.chord_head(tape, flat), self.function_head(tape, flat)

    def make_batch(self, sheets, rng: np.random.Generator) -> dict:
        mel_x = melody_batch([s.melody for s in sheets])
        chord_targets = np.zeros((HALF_BARS, len(sheets)), dtype=np.int64)
        func_targets = np.zeros((HALF_BARS, len(sheets)), dtype=np.int64)
        func_weights = np.zeros((HALF_BARS, len(sheets)))
        for b, sheet in enumerate(sheets):
            for slot, chord in enumerate(sheet.chords.chords):
                if chord.is_no_chord:
                    chord_targets[slot, b] = NO_CHORD_INDEX
                else:
                    chord_targets[slot, b] = chord_index(chord)
                    func_targets[slot, b] = _FUNCTION_INDEX[chord_function(chord, sheet.key)]
                    func_weights[slot, b] = 1.0
        return {
            "mel_x": mel_x,
            "chord_targets": chord_targets.ravel(),
            "func_targets": func_targets.ravel(),
            "func_weights": func_weights.ravel(),
        }

    def loss(self, tape: Tape, batch: dict, beta: float):
        del beta  # no KL term; the shared trainer's warm-up knob is unused
        n = batch["mel_x"].shape[1]
        chord_logits, func_logits = self._slot_logits(tape, batch["mel_x"])
        chord_ce = T.softmax_cross_entropy(
            tape, chord_logits, batch["chord_targets"], divisor=n)
        func_ce = T.softmax_cross_entropy(
            tape, func_logits, batch["func_targets"], divisor=n,
            row_weights=batch["func_weights"])
        total = T.add(tape, chord_ce, T.scale(tape, func_ce, self.config.function_weight))
        breakdown = {
            "chord_ce": float(chord_ce.value),
            "function_ce": float(func_ce.value),
            "total": float(total.value),
        }
        return total, breakdown

    # -- interactive surface ----------------------------------------------

    def slot_probabilities(self, melody: MelodyLine) -> tuple[np.ndarray, np.ndarray]:
        """(8, 25) chord and (8, 3) function softmax rows."""
        mel_x = melody_onehot(melody)[:, None, :]
        chord_logits, func_logits = self._slot_logits(None, mel_x)
        return (T.softmax_values(chord_logits.value),
                T.softmax_values(func_logits.value))

    # -- persistence --------------------------------------------------------

    def to_weights(self) -> ModelWeights:
        meta = {
            "encoder_hidden": self.config.encoder_hidden,
            "slot_hidden": self.config.slot_hidden,
            "function_weight": self.config.function_weight,
        }
        tensors = {name: node.value for name, node in self.named_params()}
        return ModelWeights(model_kind=MODEL_KIND, metadata=meta, tensors=tensors)

    @classmethod
    def from_weights(cls, weights: ModelWeights) -> "Harmonizer":
        if weights.model_kind != MODEL_KIND:
            raise ValueError(f"expected {MODEL_KIND} weights, got {weights.model_kind}")
        meta = weights.metadata
        config = HarmonizerConfig(
            encoder_hidden=int(meta["encoder_hidden"]),
            slot_hidden=int(meta["slot_hidden"]),
            function_weight=float(meta["function_weight"]),
        )
        model = cls(config, np.random.default_rng(0))
        for name, node in model.named_params():
            node.value = weights.tensor(name, node.value.shape)
        return model


def harmonize(model: Harmonizer, melody: MelodyLine):
    """Chord sequence, per-slot functions, and head probabilities for a melody.

    All-rest half-bars take N.C. with no function; a predicted N.C. also has
    no function. Everything is a deterministic argmax of the trained heads.
    """
    chord_probs, func_probs = model.slot_probabilities(melody)
    chords = []
    functions = []
    for slot in range(HALF_BARS):
        if melody.half_bar_is_rest(slot):
            chords.append(ChordSymbol.no_chord())
            functions.append(None)
            continue
        chord = index_to_chord(int(np.argmax(chord_probs[slot])))
        chords.append(chord)
        if chord.is_no_chord:
            functions.append(None)
        else:
            functions.append(FUNCTION_ORDER[int(np.argmax(func_probs[slot]))])
    probabilities = [
        {"chord": chord_probs[slot], "function": func_probs[slot]}
        for slot in range(HALF_BARS)
    ]
    return ChordSequence.from_chords(chords), tuple(functions), probabilities


def annotate_progression(chords: ChordSequence, key: int) -> list:
    """(function | None, circle-of-fifths index | None) per slot.

    N.C. gets (None, None); a sounding chord always has a circle index and
    has a function only when diatonic in the key.
    """
    out = []
    for chord in chords.chords:
        if chord.is_no_chord:
            out.append((None, None))
            continue
        try:
            fn = chord_function(chord, key)
        except HarmonyError:
            fn = None
        out.append((fn, circle_of_fifths_index(chord.root)))
    return out


def train_harmonizer(sheets, config: HarmonizerConfig | None = None,
                     out_path=None,
                     epoch_callback: Callable[[dict], None] | None = None):
    config = config or HarmonizerConfig()
    if len(sheets) < 32:
        raise ValueError(f"harmonizer corpus too small: {len(sheets)} < 32 sheets")
    kept = []
    dropped = 0
    for sheet in sheets:
        offending = [c for c in sheet.chords.chords
                     if not c.is_no_chord and not is_diatonic(c, sheet.key)]
        if offending:
            dropped += 1
        else:
            kept.append(sheet)
    if dropped:
        warnings.warn(f"excluded {dropped} sheet(s) with non-diatonic chords from training")
    if len(kept) < 32:
        raise ValueError(
            f"harmonizer corpus too small after exclusions: {len(kept)} < 32 sheets")
    rng = np.random.default_rng(config.seed)
    model = Harmonizer(config, rng)
    log = fit(model, kept, config.train, rng, epoch_callback)
    if out_path is not None:
        save_weights(model.to_weights(), out_path)
    return model, log


# -- evaluation -------------------------------------------------------------

def chord_accuracy(model: Harmonizer, sheets) -> float:
    """Fraction of half-bar slots with the ground-truth chord predicted."""
    hit = total = 0
    for sheet in sheets:
        predicted, _, _ = harmonize(model, sheet.melody)
        hit += sum(p == t for p, t in zip(predicted.chords, sheet.chords.chords))
        total += HALF_BARS
    return hit / total


def function_accuracy(model: Harmonizer, sheets) -> float:
    """Function-head accuracy over slots whose true chord has a function."""
    hit = total = 0
    for sheet in sheets:
        _, functions, _ = harmonize(model, sheet.melody)
        for slot, chord in enumerate(sheet.chords.chords):
            if chord.is_no_chord or not is_diatonic(chord, sheet.key):
                continue
            total += 1
            if functions[slot] == chord_function(chord, sheet.key):
                hit += 1
    return hit / total if total else 0.0


def function_consistency(model: Harmonizer, melodies, key: int = 0) -> float:
    """Agreement between the two heads on non-rest slots.

    A slot counts as consistent when the predicted chord is diatonic and
    its derived function matches the function head's own prediction.
    """
    hit = total = 0
    for melody in melodies:
        chords, functions, _ = harmonize(model, melody)
        for slot, chord in enumerate(chords.chords):
            if melody.half_bar_is_rest(slot):
                continue
            total += 1
            if chord.is_no_chord or not is_diatonic(chord, key):
                continue
            if chord_function(chord, key) == functions[slot]:
                hit += 1
    return hit / total if total else 0.0
