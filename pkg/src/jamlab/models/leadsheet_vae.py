"""Variational autoencoder over four-bar lead sheets, plus latent interpolation.

Two bidirectional GRU encoders (melody one-hots and chord chroma upsampled
to the melody grid) feed one Gaussian latent; two unidirectional GRU
decoders emit a 51-way melody token per sixteenth step and a 25-way chord
label per half-bar. Interpolation walks the latent space between two
encoded sheets, spherically by default.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..music import (
    HALF_BARS,
    LATENT_DIM,
    MELODY_STEPS,
    MELODY_VOCAB,
    CHORD_VOCAB,
    ChordSequence,
    LatentVector,
    LeadSheet,
    MelodyLine,
    chord_index,
    index_to_chord,
    repair_melody_tokens,
)
from ..nn import (
    DenseLayer,
    GruCell,
    ModelWeights,
    Node,
    Tape,
    TrainConfig,
    bgru_encode,
    decoder_gru_run,
    fit,
    kl_divergence,
    sample_gaussian,
    save_weights,
)
from ..nn import tape as T
from .features import (
    chroma_batch,
    chroma_steps,
    half_bar_position_features,
    melody_batch,
    melody_onehot,
    melody_position_features,
)

MODEL_KIND = "leadsheet-vae"

INTERPOLATION_MODES = ("slerp", "lerp")
MIN_FRAMES = 2
MAX_FRAMES = 17


@dataclass(frozen=True)
class LeadSheetVaeConfig:
    latent_dim: int = LATENT_DIM
    encoder_hidden: int = 64
    melody_decoder_hidden: int = 128
    chord_decoder_hidden: int = 64
    train: TrainConfig = field(default_factory=lambda: TrainConfig(
        epochs=150, batch_size=16, learning_rate=3e-3))
    seed: int = 2302


class LeadSheetVae:
    def __init__(self, config: LeadSheetVaeConfig, rng: np.random.Generator):
        self.config = config
        self.melody_positions = melody_position_features()
        self.chord_positions = half_bar_position_features()
        h, n = config.encoder_hidden, config.latent_dim
        md, cd = config.melody_decoder_hidden, config.chord_decoder_hidden
        self.mel_enc_fwd = GruCell.create(rng, MELODY_VOCAB, h)
        self.mel_enc_bwd = GruCell.create(rng, MELODY_VOCAB, h)
        self.chord_enc_fwd = GruCell.create(rng, 12, h)
        self.chord_enc_bwd = GruCell.create(rng, 12, h)
        self.mean_head = DenseLayer.create(rng, n, 4 * h)
        self.logvar_head = DenseLayer.create(rng, n, 4 * h)
        self.mel_dec_init = DenseLayer.create(rng, md, n)
        self.mel_dec_cell = GruCell.create(rng, self.melody_positions.shape[1] + n, md)
        self.mel_head = DenseLayer.create(rng, MELODY_VOCAB, md)
        self.chord_dec_init = DenseLayer.create(rng, cd, n)
        self.chord_dec_cell = GruCell.create(rng, self.chord_positions.shape[1] + n, cd)
        self.chord_head = DenseLayer.create(rng, CHORD_VOCAB, cd)

    def named_params(self):
        for prefix, part in (
            ("mel_enc_fwd", self.mel_enc_fwd),
            ("mel_enc_bwd", self.mel_enc_bwd),
            ("chord_enc_fwd", self.chord_enc_fwd),
            ("chord_enc_bwd", self.chord_enc_bwd),
            ("mean_head", self.mean_head),
            ("logvar_head", self.logvar_head),
            ("mel_dec_init", self.mel_dec_init),
            ("mel_dec_cell", self.mel_dec_cell),
            ("mel_head", self.mel_head),
            ("chord_dec_init", self.chord_dec_init),
            ("chord_dec_cell", self.chord_dec_cell),
            ("chord_head", self.chord_head),
        ):
            yield from part.named(prefix)

    # -- differentiable pipeline ------------------------------------------

    def _encode_nodes(self, tape: Tape | None, mel_x: np.ndarray,
                      chroma_x: np.ndarray) -> tuple[Node, Node]:
        enc_mel = bgru_encode(tape, self.mel_enc_fwd, self.mel_enc_bwd, mel_x)
        enc_chord = bgru_encode(tape, self.chord_enc_fwd, self.chord_enc_bwd, chroma_x)
        both = T.concat(tape, [enc_mel, enc_chord], axis=1)
        return self.mean_head(tape, both), self.logvar_head(tape, both)

    def _decode_melody_nodes(self, tape: Tape | None, z: Node) -> Node:
        """(64 * B, 51) logits."""
        batch = z.value.shape[0]
        h = T.tanh(tape, self.mel_dec_init(tape, z))
        states = decoder_gru_run(tape, self.mel_dec_cell, self.melody_positions, z, h)
        flat = T.reshape(tape, T.stack_steps(tape, states),
                         (MELODY_STEPS * batch, self.config.melody_decoder_hidden))
        return self.mel_head(tape, flat)

    def _decode_chord_nodes(self, tape: Tape | None, z: Node) -> Node:
        """(8 * B, 25) logits."""
        batch = z.value.shape[0]
        h = T.tanh(tape, self.chord_dec_init(tape, z))
        states = decoder_gru_run(tape, self.chord_dec_cell, self.chord_positions, z, h)
        flat = T.reshape(tape, T.stack_steps(tape, states),
                         (HALF_BARS * batch, self.config.chord_decoder_hidden))
        return self.chord_head(tape, flat)

    def make_batch(self, sheets, rng: np.random.Generator) -> dict:
        mel_x = melody_batch([s.melody for s in sheets])
        chroma_x = chroma_batch([s.chords for s in sheets])
        mel_targets = np.stack([s.melody.tokens for s in sheets], axis=1).ravel()
        chord_targets = np.stack(
            [[chord_index(c) for c in s.chords.chords] for s in sheets], axis=1
        ).ravel()
        eps = rng.standard_normal((len(sheets), self.config.latent_dim))
        return {
            "mel_x": mel_x,
            "chroma_x": chroma_x,
            "mel_targets": mel_targets,
            "chord_targets": chord_targets,
            "eps": eps,
        }

    def loss(self, tape: Tape, batch: dict, beta: float):
        n = batch["mel_x"].shape[1]
        mean, logvar = self._encode_nodes(tape, batch["mel_x"], batch["chroma_x"])
        z = T.reparameterize(tape, mean, logvar, batch["eps"])
        mel_ce = T.softmax_cross_entropy(
            tape, self._decode_melody_nodes(tape, z), batch["mel_targets"], divisor=n)
        chord_ce = T.softmax_cross_entropy(
            tape, self._decode_chord_nodes(tape, z), batch["chord_targets"], divisor=n)
        kl = T.gaussian_kl(tape, mean, logvar, divisor=n)
        total = T.add(tape, T.add(tape, mel_ce, chord_ce), T.scale(tape, kl, beta))
        breakdown = {
            "melody_ce": float(mel_ce.value),
            "chord_ce": float(chord_ce.value),
            "kl": float(kl.value),
            "beta": beta,
            "total": float(total.value),
        }
        return total, breakdown

    # -- interactive surface ----------------------------------------------

    def encode(self, sheet: LeadSheet, deterministic: bool = True,
               rng: np.random.Generator | None = None) -> LatentVector:
        mel_x = melody_onehot(sheet.melody)[:, None, :]
        chroma_x = chroma_steps(sheet.chords)[:, None, :]
        mean, logvar = self._encode_nodes(None, mel_x, chroma_x)
        if deterministic:
            values = mean.value[0]
        else:
            if rng is None:
                raise ValueError("sampling encode requires an rng")
            values = sample_gaussian(mean.value, logvar.value, rng)[0]
        return LatentVector(tuple(float(v) for v in values))

    def encode_moments(self, sheet: LeadSheet) -> tuple[np.ndarray, np.ndarray]:
        mel_x = melody_onehot(sheet.melody)[:, None, :]
        chroma_x = chroma_steps(sheet.chords)[:, None, :]
        mean, logvar = self._encode_nodes(None, mel_x, chroma_x)
        return mean.value[0], logvar.value[0]

    def decode(self, z: LatentVector) -> LeadSheet:
        zv = T.constant(np.asarray(z.values)[None, :])
        mel_logits = self._decode_melody_nodes(None, zv).value
        chord_logits = self._decode_chord_nodes(None, zv).value
        tokens = repair_melody_tokens(np.argmax(mel_logits, axis=1))
        chords = tuple(index_to_chord(int(i)) for i in np.argmax(chord_logits, axis=1))
        return LeadSheet(MelodyLine(tokens), ChordSequence(chords), key=0)

    # -- persistence --------------------------------------------------------

    def to_weights(self) -> ModelWeights:
        meta = {
            "latent_dim": self.config.latent_dim,
            "encoder_hidden": self.config.encoder_hidden,
            "melody_decoder_hidden": self.config.melody_decoder_hidden,
            "chord_decoder_hidden": self.config.chord_decoder_hidden,
        }
        tensors = {name: node.value for name, node in self.named_params()}
        return ModelWeights(model_kind=MODEL_KIND, metadata=meta, tensors=tensors)

    @classmethod
    def from_weights(cls, weights: ModelWeights) -> "LeadSheetVae":
        if weights.model_kind != MODEL_KIND:
            raise ValueError(f"expected {MODEL_KIND} weights, got {weights.model_kind}")
        meta = weights.metadata
        config = LeadSheetVaeConfig(
            latent_dim=int(meta["latent_dim"]),
            encoder_hidden=int(meta["encoder_hidden"]),
            melody_decoder_hidden=int(meta["melody_decoder_hidden"]),
            chord_decoder_hidden=int(meta["chord_decoder_hidden"]),
        )
        model = cls(config, np.random.default_rng(0))
        for name, node in model.named_params():
            node.value = weights.tensor(name, node.value.shape)
        return model


# ---------------------------------------------------------------------------
# Interpolation
# ---------------------------------------------------------------------------

def latent_path(za: np.ndarray, zb: np.ndarray, steps: int, mode: str) -> list:
    """n latent points from za to zb with exact endpoints.

    Mixing coefficients are evaluated on the symmetric grid
    (c(n-1-k), c(k)), so the reversed path is the bitwise mirror of the
    forward path. slerp follows the great arc and falls back to lerp for
    colinear or zero vectors.
    """
    if mode not in INTERPOLATION_MODES:
        raise ValueError(f"mode must be one of {INTERPOLATION_MODES}, got {mode!r}")
    if not MIN_FRAMES <= steps <= MAX_FRAMES:
        raise ValueError(f"steps must be in {MIN_FRAMES}..{MAX_FRAMES}, got {steps}")
    za = np.asarray(za, dtype=np.float64)
    zb = np.asarray(zb, dtype=np.float64)
    if np.array_equal(za, zb):
        return [za.copy() for _ in range(steps)]

    omega = None
    if mode == "slerp":
        norm_a = float(np.linalg.norm(za))
        norm_b = float(np.linalg.norm(zb))
        if norm_a > 0.0 and norm_b > 0.0:
            cos_omega = float(np.clip(np.dot(za, zb) / (norm_a * norm_b), -1.0, 1.0))
            candidate = float(np.arccos(cos_omega))
            if np.sin(candidate) >= 1e-9:
                omega = candidate
        # otherwise colinear or degenerate: lerp fallback

    last = steps - 1
    path = []
    for k in range(steps):
        if k == 0:
            path.append(za.copy())
        elif k == last:
            path.append(zb.copy())
        elif omega is None:
            ca = (last - k) / last
            cb = k / last
            path.append(ca * za + cb * zb)
        else:
            sin_omega = np.sin(omega)
            ca = np.sin(((last - k) / last) * omega) / sin_omega
            cb = np.sin((k / last) * omega) / sin_omega
            path.append(ca * za + cb * zb)
    return path


def interpolate(model: LeadSheetVae, a: LeadSheet, b: LeadSheet,
                steps: int, mode: str = "slerp") -> list:
    """n decoded frames between the deterministic codes of a and b."""
    za = np.asarray(model.encode(a).values)
    zb = np.asarray(model.encode(b).values)
    return [model.decode(LatentVector(tuple(z))) for z in latent_path(za, zb, steps, mode)]


def ab_interpolate(model_a: LeadSheetVae, model_b: LeadSheetVae,
                   a: LeadSheet, b: LeadSheet, steps: int,
                   mode: str = "slerp") -> tuple[list, list]:
    """The same interpolation request through two checkpoints, for A/B play."""
    if model_a is None or model_b is None:
        raise ValueError("ab_interpolate needs two loaded models")
    return (interpolate(model_a, a, b, steps, mode),
            interpolate(model_b, a, b, steps, mode))


def train_leadsheet_vae(sheets, config: LeadSheetVaeConfig | None = None,
                        out_path=None,
                        epoch_callback: Callable[[dict], None] | None = None):
    config = config or LeadSheetVaeConfig()
    if len(sheets) < 32:
        raise ValueError(f"lead-sheet corpus too small: {len(sheets)} < 32 sheets")
    rng = np.random.default_rng(config.seed)
    model = LeadSheetVae(config, rng)
    log = fit(model, list(sheets), config.train, rng, epoch_callback)
    if out_path is not None:
        save_weights(model.to_weights(), out_path)
    return model, log


# -- evaluation -------------------------------------------------------------

def melody_token_accuracy(model: LeadSheetVae, sheets) -> float:
    """Fraction of melody tokens reproduced by a mean-latent round trip."""
    hit = total = 0
    for sheet in sheets:
        decoded = model.decode(model.encode(sheet))
        hit += sum(p == t for p, t in zip(decoded.melody.tokens, sheet.melody.tokens))
        total += MELODY_STEPS
    return hit / total


def chord_accuracy(model: LeadSheetVae, sheets) -> float:
    hit = total = 0
    for sheet in sheets:
        decoded = model.decode(model.encode(sheet))
        hit += sum(p == t for p, t in zip(decoded.chords.chords, sheet.chords.chords))
        total += HALF_BARS
    return hit / total


def mean_kl_per_dim(model: LeadSheetVae, sheets) -> float:
    total = 0.0
    for sheet in sheets:
        mean, logvar = model.encode_moments(sheet)
        total += kl_divergence(mean, logvar)
    return total / (len(sheets) * model.config.latent_dim)
