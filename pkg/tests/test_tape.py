"""Reverse-mode gradient correctness for every recorded operation."""
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, stats

from jamlab.nn import kl_divergence, sample_gaussian
from jamlab.nn import tape as T

from gradcheck import max_relative_error

RNG = np.random.default_rng(42)


def rand(*shape):
    return RNG.standard_normal(shape)


# -- per-operation gradient checks ----------------------------------------------

def scalarize(tape, node):
    flat = T.reshape(tape, node, (1, node.value.size))
    weights = T.constant(np.linspace(0.5, 1.5, node.value.size))
    out = T.matmul(tape, flat, T.reshape(tape, weights, (node.value.size, 1)))
    return T.reshape(tape, out, ())


def test_add_sub_mul_grads():
    params = {"a": rand(3, 4), "b": rand(3, 4)}

    def build(tape, nodes):
        out = T.add(tape, nodes["a"], nodes["b"])
        out = T.mul(tape, out, nodes["b"])
        out = T.sub(tape, out, nodes["a"])
        return scalarize(tape, out)

    assert max_relative_error(build, params) < 1e-3


def test_broadcast_add_grad():
    params = {"x": rand(5, 3), "b": rand(3)}

    def build(tape, nodes):
        return scalarize(tape, T.add(tape, nodes["x"], nodes["b"]))

    assert max_relative_error(build, params) < 1e-3


def test_matmul_and_affine_grads():
    params = {"x": rand(4, 3), "w": rand(5, 3), "b": rand(5)}

    def build(tape, nodes):
        out = T.affine(tape, nodes["x"], nodes["w"], nodes["b"])
        return scalarize(tape, out)

    assert max_relative_error(build, params) < 1e-3


def test_sigmoid_tanh_grads():
    params = {"x": rand(4, 4)}

    def build(tape, nodes):
        out = T.tanh(tape, T.sigmoid(tape, nodes["x"]))
        return scalarize(tape, out)

    assert max_relative_error(build, params) < 1e-3


def test_reshape_concat_stack_grads():
    params = {"a": rand(2, 3), "b": rand(2, 5)}

    def build(tape, nodes):
        joined = T.concat(tape, [nodes["a"], nodes["b"]], axis=1)
        steps = T.stack_steps(tape, [joined, joined, joined])
        return scalarize(tape, T.reshape(tape, steps, (6, 8)))

    assert max_relative_error(build, params) < 1e-3


def test_stack_steps_accumulates_repeated_parent():
    params = {"z": rand(2, 3)}

    def build(tape, nodes):
        return scalarize(tape, T.stack_steps(tape, [nodes["z"]] * 7))

    assert max_relative_error(build, params) < 1e-3


def test_mean_nodes_grad():
    params = {"a": rand(2, 3), "b": rand(2, 3), "c": rand(2, 3)}

    def build(tape, nodes):
        return scalarize(tape, T.mean_nodes(
            tape, [nodes["a"], nodes["b"], nodes["c"]]))

    assert max_relative_error(build, params) < 1e-3


def test_softmax_cross_entropy_grad():
    labels = np.array([0, 2, 1, 3])
    params = {"logits": rand(4, 5)}

    def build(tape, nodes):
        return T.softmax_cross_entropy(tape, nodes["logits"], labels, divisor=4.0)

    assert max_relative_error(build, params) < 1e-3


def test_softmax_cross_entropy_row_weights_grad_and_masking():
    labels = np.array([1, 0, 3])
    weights = np.array([1.0, 0.0, 2.0])
    params = {"logits": rand(3, 4)}

    def build(tape, nodes):
        return T.softmax_cross_entropy(tape, nodes["logits"], labels,
                                       divisor=3.0, row_weights=weights)

    assert max_relative_error(build, params) < 1e-3

    tape = T.Tape()
    node = T.parameter(params["logits"])
    loss = T.softmax_cross_entropy(tape, node, labels, divisor=3.0,
                                   row_weights=weights)
    tape.backward(loss)
    assert np.all(node.grad[1] == 0.0)


def test_sigmoid_bce_grad():
    targets = (rand(6, 3) > 0).astype(float)
    params = {"logits": rand(6, 3)}

    def build(tape, nodes):
        return T.sigmoid_bce(tape, nodes["logits"], targets, divisor=6.0)

    assert max_relative_error(build, params) < 1e-3


def test_gaussian_kl_grad():
    params = {"mean": rand(4, 8), "logvar": 0.3 * rand(4, 8)}

    def build(tape, nodes):
        return T.gaussian_kl(tape, nodes["mean"], nodes["logvar"], divisor=4.0)

    assert max_relative_error(build, params) < 1e-3


def test_reparameterize_grad():
    eps = rand(4, 8)
    params = {"mean": rand(4, 8), "logvar": 0.3 * rand(4, 8)}

    def build(tape, nodes):
        z = T.reparameterize(tape, nodes["mean"], nodes["logvar"], eps)
        return scalarize(tape, z)

    assert max_relative_error(build, params) < 1e-3


def test_gru_step_pre_grad():
    batch, hidden = 3, 4
    params = {
        "pre_z": rand(batch, hidden),
        "pre_r": rand(batch, hidden),
        "pre_h": rand(batch, hidden),
        "h_prev": rand(batch, hidden),
        "u_z": rand(hidden, hidden),
        "u_r": rand(hidden, hidden),
        "u_h": rand(hidden, hidden),
    }

    def build(tape, nodes):
        out = T.gru_step_pre(tape, nodes["pre_z"], nodes["pre_r"],
                             nodes["pre_h"], None, nodes["h_prev"],
                             nodes["u_z"], nodes["u_r"], nodes["u_h"])
        return scalarize(tape, out)

    assert max_relative_error(build, params) < 1e-3


# -- closed forms against independent numerics --------------------------------------

def kl_by_quadrature(mu: float, logvar: float) -> float:
    sigma = np.exp(0.5 * logvar)
    p = stats.norm(mu, sigma)
    q = stats.norm(0.0, 1.0)

    def integrand(x):
        return p.pdf(x) * (p.logpdf(x) - q.logpdf(x))

    value, _ = integrate.quad(integrand, mu - 12 * sigma, mu + 12 * sigma,
                              limit=200)
    return value


@pytest.mark.parametrize("mu,logvar", [
    (0.0, 0.0), (1.0, 0.0), (0.0, np.log(4.0)), (-0.7, 0.9), (2.0, -1.5),
])
def test_kl_closed_form_matches_quadrature(mu, logvar):
    closed = kl_divergence([mu], [logvar])
    assert abs(closed - kl_by_quadrature(mu, logvar)) < 1e-6


def test_kl_point_values():
    assert kl_divergence([0.0], [0.0]) == 0.0
    assert kl_divergence([1.0], [0.0]) == pytest.approx(0.5, abs=1e-12)
    expected = 0.5 * (4.0 - np.log(4.0) - 1.0)
    assert kl_divergence([0.0], [np.log(4.0)]) == pytest.approx(
        expected, abs=1e-12)


@given(st.lists(st.floats(-5, 5), min_size=1, max_size=16),
       st.lists(st.floats(-5, 5), min_size=1, max_size=16))
def test_kl_is_nonnegative(mean, logvar):
    size = min(len(mean), len(logvar))
    assert kl_divergence(mean[:size], logvar[:size]) >= 0.0


def test_softmax_normalization_and_positivity():
    x = RNG.standard_normal((50, 17)) * 30.0
    probs = T.softmax_values(x)
    assert np.all(np.abs(probs.sum(axis=-1) - 1.0) < 1e-9)
    assert np.all(probs > 0.0)


# -- sampling -----------------------------------------------------------------------

def test_sample_gaussian_degenerate_variance_returns_mean():
    mean = rand(32)
    z = sample_gaussian(mean, np.full(32, -60.0), np.random.default_rng(3))
    assert np.all(np.abs(z - mean) < 1e-9)


def test_sample_gaussian_matches_seeded_draw():
    mean = rand(8)
    logvar = 0.3 * rand(8)
    z = sample_gaussian(mean, logvar, np.random.default_rng(123))
    eps = np.random.default_rng(123).standard_normal(8)
    assert np.allclose(z, mean + np.exp(0.5 * logvar) * eps, atol=0, rtol=0)


def test_sample_gaussian_moments():
    rng = np.random.default_rng(7)
    draws = np.array([sample_gaussian(np.zeros(4), np.zeros(4), rng)
                      for _ in range(10_000)])
    assert np.all(np.abs(draws.mean(axis=0)) < 0.05)
    assert np.all(np.abs(draws.var(axis=0) - 1.0) < 0.1)


def test_sample_gaussian_shape_mismatch():
    with pytest.raises(ValueError):
        sample_gaussian(np.zeros(3), np.zeros(4), np.random.default_rng(0))


# -- tape mechanics ---------------------------------------------------------------

def test_constants_do_not_accumulate_gradients():
    tape = T.Tape()
    x = T.parameter(rand(2, 2))
    c = T.constant(rand(2, 2))
    loss = scalarize(tape, T.mul(tape, x, c))
    tape.backward(loss)
    assert x.grad is not None
    assert c.grad is None


def test_backward_resets_intermediate_grads():
    tape = T.Tape()
    x = T.parameter(rand(2, 2))
    mid = T.sigmoid(tape, x)
    loss = scalarize(tape, mid)
    tape.backward(loss)
    assert mid.grad is None


def test_gradients_accumulate_across_reuse():
    value = rand(2, 2)
    tape = T.Tape()
    x = T.parameter(value)
    loss = scalarize(tape, T.add(tape, x, x))
    tape.backward(loss)

    tape2 = T.Tape()
    x2 = T.parameter(value)
    loss2 = scalarize(tape2, T.scale(tape2, x2, 2.0))
    tape2.backward(loss2)
    assert np.allclose(x.grad, x2.grad)
