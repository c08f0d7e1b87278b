"""Drum VAE behavior that does not depend on training quality."""
import numpy as np
import pytest

from jamlab.corpus import make_drum_corpus
from jamlab.models.drum_vae import (
    MODEL_KIND,
    DrumVae,
    DrumVaeConfig,
    set_latent_dim,
    train_drum_vae,
)
from jamlab.music import (
    DRUM_STEPS,
    DRUM_TRACKS,
    LATENT_CLAMP,
    LATENT_DIM,
    DrumPattern,
    LatentVector,
)
from jamlab.nn import load_weights, save_weights


@pytest.fixture(scope="module")
def model() -> DrumVae:
    return DrumVae(DrumVaeConfig(), np.random.default_rng(0))


@pytest.fixture(scope="module")
def pattern() -> DrumPattern:
    return make_drum_corpus(1, seed=11)[0]


def test_encode_is_deterministic_by_default(model, pattern):
    assert model.encode(pattern) == model.encode(pattern)


def test_stochastic_encode_spreads_around_the_mean(model, pattern):
    mean, logvar = model.encode_moments(pattern)
    draw = model.encode(pattern, deterministic=False,
                        rng=np.random.default_rng(1))
    again = model.encode(pattern, deterministic=False,
                         rng=np.random.default_rng(1))
    other = model.encode(pattern, deterministic=False,
                         rng=np.random.default_rng(2))
    assert draw == again
    assert draw != other
    eps = np.random.default_rng(1).standard_normal(LATENT_DIM)
    expected = mean + np.exp(0.5 * logvar) * eps
    assert np.allclose(draw.values, expected, atol=0, rtol=0)


def test_decode_matches_probabilities_at_threshold(model):
    z = LatentVector.from_values(np.random.default_rng(3).standard_normal(32))
    probs = model.decode_probs(z)
    assert probs.shape == (DRUM_TRACKS, DRUM_STEPS)
    assert np.all((probs > 0) & (probs < 1))
    decoded = np.asarray(model.decode(z).grid)
    assert np.array_equal(decoded, (probs >= 0.5).astype(int))


def test_exact_half_probability_rounds_to_a_hit():
    model = DrumVae(DrumVaeConfig(), np.random.default_rng(0))
    model.out_head.w.value[...] = 0.0
    model.out_head.b.value[...] = 0.0
    z = LatentVector.from_values([0.0] * 32)
    assert np.all(model.decode_probs(z) == 0.5)
    assert np.all(np.asarray(model.decode(z).grid) == 1)


def test_set_latent_dim_clamps_and_validates():
    z = LatentVector.from_values([0.0] * 32)
    assert set_latent_dim(z, 5, 99.0).values[5] == LATENT_CLAMP
    assert set_latent_dim(z, 5, -99.0).values[5] == -LATENT_CLAMP
    assert set_latent_dim(z, 5, 1.25).values[5] == 1.25
    assert z.values[5] == 0.0
    with pytest.raises(IndexError):
        set_latent_dim(z, LATENT_DIM, 0.0)
    with pytest.raises(IndexError):
        set_latent_dim(z, -1, 0.0)


def test_sample_prior_is_seeded(model):
    za, pa = model.sample_prior(np.random.default_rng(9))
    zb, pb = model.sample_prior(np.random.default_rng(9))
    zc, _ = model.sample_prior(np.random.default_rng(10))
    assert za == zb and pa == pb
    assert za != zc
    assert pa == model.decode(za)


def test_weight_round_trip_preserves_decoding(model, tmp_path):
    weights = model.to_weights()
    assert weights.model_kind == MODEL_KIND == "drum-vae"
    path = tmp_path / "drum.weights"
    save_weights(weights, path)
    clone = DrumVae.from_weights(load_weights(path))
    z = LatentVector.from_values(np.random.default_rng(4).standard_normal(32))
    assert np.array_equal(model.decode_probs(z), clone.decode_probs(z))
    assert clone.config.latent_dim == model.config.latent_dim


def test_from_weights_rejects_other_model_kinds(model):
    weights = model.to_weights()
    weights.model_kind = "leadsheet-vae"
    with pytest.raises(ValueError, match="expected drum-vae"):
        DrumVae.from_weights(weights)


def test_training_rejects_undersized_corpus():
    with pytest.raises(ValueError, match="too small"):
        train_drum_vae(make_drum_corpus(8, seed=1))
