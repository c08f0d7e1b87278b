"""Variational autoencoder over one-bar drum grids.

Bidirectional GRU encoder to a diagonal Gaussian over a 32-d latent,
unidirectional GRU decoder emitting per-step hit probabilities for the
nine tracks.  The latent vector is the interactive handle: every public
method speaks :class:`~jamlab.music.LatentVector` and
:class:`~jamlab.music.DrumPattern`, arrays stay internal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..music import DRUM_STEPS, DRUM_TRACKS, LATENT_DIM, DrumPattern, LatentVector
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
from .features import drum_batch, drum_position_features, drum_to_array

MODEL_KIND = "drum-vae"


@dataclass(frozen=True)
class DrumVaeConfig:
    latent_dim: int = LATENT_DIM
    encoder_hidden: int = 64
    decoder_hidden: int = 128
    train: TrainConfig = field(default_factory=lambda: TrainConfig(
        epochs=200, batch_size=16, learning_rate=3e-3))
    seed: int = 2301


class DrumVae:
    def __init__(self, config: DrumVaeConfig, rng: np.random.Generator):
        self.config = config
        self.positions = drum_position_features()
        h, d, n = config.encoder_hidden, config.decoder_hidden, config.latent_dim
        self.enc_fwd = GruCell.create(rng, DRUM_TRACKS, h)
        self.enc_bwd = GruCell.create(rng, DRUM_TRACKS, h)
        self.mean_head = DenseLayer.create(rng, n, 2 * h)
        self.logvar_head = DenseLayer.create(rng, n, 2 * h)
        self.dec_init = DenseLayer.create(rng, d, n)
        self.dec_cell = GruCell.create(rng, self.positions.shape[1] + n, d)
        self.out_head = DenseLayer.create(rng, DRUM_TRACKS, d)

    def named_params(self):
        for prefix, part in (
            ("enc_fwd", self.enc_fwd),
            ("enc_bwd", self.enc_bwd),
            ("mean_head", self.mean_head),
            ("logvar_head", self.logvar_head),
            ("dec_init", self.dec_init),
            ("dec_cell", self.dec_cell),
            ("out_head", self.out_head),
        ):
            yield from part.named(prefix)

    # -- differentiable pipeline ------------------------------------------

    def _encode_nodes(self, tape: Tape | None, xs: np.ndarray) -> tuple[Node, Node]:
        enc = bgru_encode(tape, self.enc_fwd, self.enc_bwd, xs)
        return self.mean_head(tape, enc), self.logvar_head(tape, enc)

    def _decode_nodes(self, tape: Tape | None, z: Node) -> Node:
        """Logits with shape (96 * B, 9)."""
        batch = z.value.shape[0]
        h = T.tanh(tape, self.dec_init(tape, z))
        states = decoder_gru_run(tape, self.dec_cell, self.positions, z, h)
        stacked = T.stack_steps(tape, states)
        flat = T.reshape(tape, stacked, (DRUM_STEPS * batch, self.config.decoder_hidden))
        return self.out_head(tape, flat)

    def make_batch(self, patterns, rng: np.random.Generator) -> dict:
        xs = drum_batch(patterns)
        eps = rng.standard_normal((xs.shape[1], self.config.latent_dim))
        return {"xs": xs, "eps": eps}

    def loss(self, tape: Tape, batch: dict, beta: float):
        xs, eps = batch["xs"], batch["eps"]
        n = xs.shape[1]
        mean, logvar = self._encode_nodes(tape, xs)
        z = T.reparameterize(tape, mean, logvar, eps)
        logits = self._decode_nodes(tape, z)
        targets = xs.reshape(DRUM_STEPS * n, DRUM_TRACKS)
        recon = T.sigmoid_bce(tape, logits, targets, divisor=n)
        kl = T.gaussian_kl(tape, mean, logvar, divisor=n)
        total = T.add(tape, recon, T.scale(tape, kl, beta))
        breakdown = {
            "reconstruction": float(recon.value),
            "kl": float(kl.value),
            "beta": beta,
            "total": float(total.value),
        }
        return total, breakdown

    # -- interactive surface ----------------------------------------------

    def encode(self, pattern: DrumPattern, deterministic: bool = True,
               rng: np.random.Generator | None = None) -> LatentVector:
        xs = drum_to_array(pattern)[:, None, :]
        mean, logvar = self._encode_nodes(None, xs)
        if deterministic:
            values = mean.value[0]
        else:
            if rng is None:
                raise ValueError("sampling encode requires an rng")
            values = sample_gaussian(mean.value, logvar.value, rng)[0]
        return LatentVector(tuple(float(v) for v in values))

    def encode_moments(self, pattern: DrumPattern) -> tuple[np.ndarray, np.ndarray]:
        xs = drum_to_array(pattern)[:, None, :]
        mean, logvar = self._encode_nodes(None, xs)
        return mean.value[0], logvar.value[0]

    def decode_probs(self, z: LatentVector) -> np.ndarray:
        """(9, 96) per-cell hit probabilities."""
        zv = np.asarray(z.values)[None, :]
        logits = self._decode_nodes(None, T.constant(zv))
        probs = T.sigmoid_values(logits.value)  # (96, 9)
        return probs.T

    def decode(self, z: LatentVector, threshold: float = 0.5) -> DrumPattern:
        probs = self.decode_probs(z)
        return DrumPattern.from_rows((probs >= threshold).astype(int).tolist())

    def sample_prior(self, rng: np.random.Generator) -> tuple[LatentVector, DrumPattern]:
        z = LatentVector(tuple(float(v) for v in rng.standard_normal(self.config.latent_dim)))
        return z, self.decode(z)

    # -- persistence --------------------------------------------------------

    def to_weights(self) -> ModelWeights:
        meta = {
            "latent_dim": self.config.latent_dim,
            "encoder_hidden": self.config.encoder_hidden,
            "decoder_hidden": self.config.decoder_hidden,
        }
        tensors = {name: node.value for name, node in self.named_params()}
        return ModelWeights(model_kind=MODEL_KIND, metadata=meta, tensors=tensors)

    @classmethod
    def from_weights(cls, weights: ModelWeights) -> "DrumVae":
        if weights.model_kind != MODEL_KIND:
            raise ValueError(f"expected {MODEL_KIND} weights, got {weights.model_kind}")
        meta = weights.metadata
        config = DrumVaeConfig(
            latent_dim=int(meta["latent_dim"]),
            encoder_hidden=int(meta["encoder_hidden"]),
            decoder_hidden=int(meta["decoder_hidden"]),
        )
        model = cls(config, np.random.default_rng(0))
        for name, node in model.named_params():
            node.value = weights.tensor(name, node.value.shape)
        return model


def set_latent_dim(z: LatentVector, index: int, value: float) -> LatentVector:
    """One-coordinate edit, clamped to the interactive range."""
    return z.with_coordinate(index, value)


def train_drum_vae(patterns, config: DrumVaeConfig | None = None,
                   out_path=None,
                   epoch_callback: Callable[[dict], None] | None = None):
    config = config or DrumVaeConfig()
    if len(patterns) < 16:
        raise ValueError(f"drum corpus too small: {len(patterns)} < 16 patterns")
    rng = np.random.default_rng(config.seed)
    model = DrumVae(config, rng)
    log = fit(model, list(patterns), config.train, rng, epoch_callback)
    if out_path is not None:
        save_weights(model.to_weights(), out_path)
    return model, log


# -- evaluation -------------------------------------------------------------

def reconstruction_f1(model: DrumVae, patterns) -> float:
    """Micro-averaged cellwise F1 of mean-latent round trips."""
    tp = fp = fn = 0
    for pattern in patterns:
        truth = np.asarray(pattern.grid, dtype=bool)
        pred = np.asarray(model.decode(model.encode(pattern)).grid, dtype=bool)
        tp += int(np.sum(pred & truth))
        fp += int(np.sum(pred & ~truth))
        fn += int(np.sum(~pred & truth))
    if tp == 0:
        return 0.0
    return 2.0 * tp / (2.0 * tp + fp + fn)


def mean_kl_per_dim(model: DrumVae, patterns) -> float:
    total = 0.0
    for pattern in patterns:
        mean, logvar = model.encode_moments(pattern)
        total += kl_divergence(mean, logvar)
    return total / (len(patterns) * model.config.latent_dim)


def prior_sample_density(model: DrumVae, rng: np.random.Generator, draws: int = 64) -> float:
    dens = [model.sample_prior(rng)[1].density() for _ in range(draws)]
    return float(np.mean(dens))
