"""Training loop behavior: no-op at zero lr, overfit smoke, failure naming."""
import numpy as np
import pytest

from jamlab.corpus import make_drum_corpus
from jamlab.models.drum_vae import DrumVae, DrumVaeConfig
from jamlab.nn import Adam, NonFiniteLossError, TrainConfig, fit, train_step
from jamlab.nn import tape as T


def tiny_model() -> DrumVae:
    config = DrumVaeConfig(latent_dim=4, encoder_hidden=6, decoder_hidden=8)
    return DrumVae(config, np.random.default_rng(0))


def snapshot(model) -> dict:
    return {name: node.value.copy() for name, node in model.named_params()}


def test_zero_learning_rate_leaves_weights_unchanged():
    model = tiny_model()
    before = snapshot(model)
    patterns = make_drum_corpus(16, seed=1)
    fit(model, patterns, TrainConfig(epochs=2, batch_size=8, learning_rate=0.0),
        np.random.default_rng(3))
    for name, node in model.named_params():
        assert np.array_equal(node.value, before[name]), name


def test_overfitting_one_example_reduces_reconstruction():
    model = tiny_model()
    pattern = make_drum_corpus(16, seed=2)[0]
    rng = np.random.default_rng(4)
    log = fit(model, [pattern] * 4,
              TrainConfig(epochs=200, batch_size=4, learning_rate=3e-3,
                          beta=0.0, warmup_frac=0.0), rng)
    assert log[-1]["reconstruction"] < log[0]["reconstruction"]


def test_loss_decreases_on_the_small_corpus():
    model = tiny_model()
    patterns = make_drum_corpus(16, seed=5)
    log = fit(model, patterns,
              TrainConfig(epochs=20, batch_size=8, learning_rate=3e-3),
              np.random.default_rng(6))
    assert log[-1]["total"] < log[0]["total"]


def test_kl_warmup_ramps_beta_linearly():
    model = tiny_model()
    patterns = make_drum_corpus(16, seed=7)
    seen = []
    fit(model, patterns,
        TrainConfig(epochs=10, batch_size=16, learning_rate=1e-3,
                    beta=0.2, warmup_frac=0.5),
        np.random.default_rng(8),
        epoch_callback=lambda entry: seen.append(entry["beta"]))
    assert seen[0] == 0.0
    assert seen[-1] == pytest.approx(0.2)
    assert all(b2 >= b1 for b1, b2 in zip(seen, seen[1:]))


def test_non_finite_loss_names_the_poisoned_tensor():
    model = tiny_model()
    bad_name = next(iter(dict(model.named_params())))
    dict(model.named_params())[bad_name].value[...] = np.nan
    patterns = make_drum_corpus(16, seed=9)
    optimizer = Adam([p for _, p in model.named_params()], lr=1e-3)
    with pytest.raises(NonFiniteLossError) as err:
        train_step(model, optimizer,
                   model.make_batch(patterns[:4], np.random.default_rng(1)),
                   beta=0.2)
    assert err.value.tensor_name == bad_name


def test_adam_moves_toward_a_quadratic_minimum():
    target = np.array([1.5, -2.0])
    param = T.parameter(np.zeros(2))
    optimizer = Adam([param], lr=0.05)
    for _ in range(500):
        tape = T.Tape()
        diff = T.sub(tape, param, T.constant(target))
        sq = T.mul(tape, diff, diff)
        flat = T.reshape(tape, sq, (1, 2))
        loss = T.reshape(
            tape, T.matmul(tape, flat, T.constant(np.ones((2, 1)))), ())
        optimizer.zero_grad()
        tape.backward(loss)
        optimizer.step()
    assert np.allclose(param.value, target, atol=1e-2)
