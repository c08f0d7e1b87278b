"""Reverse-mode autodiff over numpy arrays via a recorded operation tape.

Every op takes the tape as its first argument; passing ``tape=None`` runs
the same forward math without recording, which is how inference works.
Backward functions accumulate into a pre-zeroed ``grad`` buffer in place,
so gradient flow through large step-sliced arrays stays cheap.

Shapes are float64 throughout. Batched activations are ``(batch, dim)``;
per-step sequence data is time-major ``(steps, batch, dim)``.
"""
from __future__ import annotations

import numpy as np


class Node:
    """A value in the computation graph."""

    __slots__ = ("value", "grad", "needs_grad")

    def __init__(self, value, needs_grad: bool = False):
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = None
        self.needs_grad = needs_grad

    @property
    def shape(self):
        return self.value.shape

    def __repr__(self):
        return f"Node(shape={self.value.shape}, needs_grad={self.needs_grad})"


def parameter(value) -> Node:
    return Node(np.array(value, dtype=np.float64), needs_grad=True)


def constant(value) -> Node:
    return Node(value, needs_grad=False)


class Tape:
    """Execution-order record of ops; backward() walks it in reverse."""

    def __init__(self):
        self._entries = []

    def record(self, out: Node, pulls):
        # pulls: sequence of (parent, accumulate_fn); accumulate_fn(g, acc)
        # adds the vector-jacobian product into acc in place.
        self._entries.append((out, pulls))

    def backward(self, loss: Node):
        if loss.value.shape != ():
            raise ValueError(f"backward expects a scalar loss, got shape {loss.value.shape}")
        loss.grad = np.ones((), dtype=np.float64)
        for out, pulls in reversed(self._entries):
            g = out.grad
            if g is None:
                continue
            for parent, accumulate in pulls:
                if parent.grad is None:
                    parent.grad = np.zeros_like(parent.value)
                accumulate(g, parent.grad)
            out.grad = None  # intermediate grads are not reused


def _wrap(tape, value, pulls) -> Node:
    live = [(p, fn) for p, fn in pulls if p.needs_grad]
    out = Node(value, needs_grad=bool(live) and tape is not None)
    if out.needs_grad:
        tape.record(out, live)
    return out


def _unbroadcast_into(g, acc):
    """acc += g summed down to acc's shape (inverse of numpy broadcasting)."""
    extra = g.ndim - acc.ndim
    if extra > 0:
        g = g.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, n in enumerate(acc.shape) if n == 1 and g.shape[i] != 1)
    if axes:
        g = g.sum(axis=axes, keepdims=True)
    acc += g


def add(tape, a: Node, b: Node) -> Node:
    return _wrap(tape, a.value + b.value, (
        (a, lambda g, acc: _unbroadcast_into(g, acc)),
        (b, lambda g, acc: _unbroadcast_into(g, acc)),
    ))


def sub(tape, a: Node, b: Node) -> Node:
    return _wrap(tape, a.value - b.value, (
        (a, lambda g, acc: _unbroadcast_into(g, acc)),
        (b, lambda g, acc: _unbroadcast_into(-g, acc)),
    ))


def mul(tape, a: Node, b: Node) -> Node:
    return _wrap(tape, a.value * b.value, (
        (a, lambda g, acc: _unbroadcast_into(g * b.value, acc)),
        (b, lambda g, acc: _unbroadcast_into(g * a.value, acc)),
    ))


def scale(tape, a: Node, s: float) -> Node:
    return _wrap(tape, a.value * s, ((a, lambda g, acc: _unbroadcast_into(g * s, acc)),))


def matmul(tape, a: Node, b: Node) -> Node:
    return _wrap(tape, a.value @ b.value, (
        (a, lambda g, acc: _unbroadcast_into(g @ b.value.T, acc)),
        (b, lambda g, acc: _unbroadcast_into(a.value.T @ g, acc)),
    ))


def affine(tape, x: Node, w: Node, b: Node) -> Node:
    """x @ w.T + b for x (N, I), w (H, I), b (H,) -> (N, H)."""
    return _wrap(tape, x.value @ w.value.T + b.value, (
        (x, lambda g, acc: _unbroadcast_into(g @ w.value, acc)),
        (w, lambda g, acc: _unbroadcast_into(g.T @ x.value, acc)),
        (b, lambda g, acc: _unbroadcast_into(g.sum(axis=0), acc)),
    ))


def sigmoid_values(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    e = np.exp(x[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def sigmoid(tape, a: Node) -> Node:
    y = sigmoid_values(a.value)
    return _wrap(tape, y, ((a, lambda g, acc: _unbroadcast_into(g * y * (1.0 - y), acc)),))


def tanh(tape, a: Node) -> Node:
    y = np.tanh(a.value)
    return _wrap(tape, y, ((a, lambda g, acc: _unbroadcast_into(g * (1.0 - y * y), acc)),))


def reshape(tape, a: Node, shape) -> Node:
    old = a.value.shape
    return _wrap(tape, a.value.reshape(shape), (
        (a, lambda g, acc: _unbroadcast_into(g.reshape(old), acc)),
    ))


def concat(tape, nodes, axis: int = -1) -> Node:
    values = [n.value for n in nodes]
    sizes = [v.shape[axis] for v in values]
    offsets = np.cumsum([0] + sizes)
    pulls = []
    for i, n in enumerate(nodes):
        lo, hi = offsets[i], offsets[i + 1]

        def pull(g, acc, lo=lo, hi=hi):
            sl = [slice(None)] * g.ndim
            sl[axis if axis >= 0 else g.ndim + axis] = slice(lo, hi)
            acc += g[tuple(sl)]

        pulls.append((n, pull))
    return _wrap(tape, np.concatenate(values, axis=axis), pulls)


def stack_steps(tape, nodes) -> Node:
    """Stack T equally-shaped (B, H) nodes into (T, B, H)."""
    pulls = [(n, (lambda g, acc, t=t: _unbroadcast_into(g[t], acc))) for t, n in enumerate(nodes)]
    return _wrap(tape, np.stack([n.value for n in nodes], axis=0), pulls)


def mean_nodes(tape, nodes) -> Node:
    inv = 1.0 / len(nodes)
    value = nodes[0].value * inv
    for n in nodes[1:]:
        value = value + n.value * inv
    pulls = [(n, (lambda g, acc: _unbroadcast_into(g * inv, acc))) for n in nodes]
    return _wrap(tape, value, pulls)


def gru_step_pre(tape, pre_z: Node, pre_r: Node, pre_h: Node, t, h_prev: Node,
                 u_z: Node, u_r: Node, u_h: Node) -> Node:
    """One GRU update from precomputed input projections.

    pre_* hold ``W x + b`` for the three gates, either per step as
    ``(T, B, H)`` indexed by ``t`` or shared ``(B, H)`` with ``t=None``.
    Update rule: h' = (1 - z) * h_prev + z * h~ with
    z = sigmoid(pre_z + U_z h), r = sigmoid(pre_r + U_r h),
    h~ = tanh(pre_h + U_h (r * h)).
    """
    px = pre_z.value[t] if t is not None else pre_z.value
    pr = pre_r.value[t] if t is not None else pre_r.value
    ph = pre_h.value[t] if t is not None else pre_h.value
    hv = h_prev.value
    z = sigmoid_values(px + hv @ u_z.value.T)
    r = sigmoid_values(pr + hv @ u_r.value.T)
    rh = r * hv
    h_tilde = np.tanh(ph + rh @ u_h.value.T)
    h_new = hv + z * (h_tilde - hv)

    # Shared backward pieces, computed once per call of any pull.
    cache = {}

    def deltas(g):
        if "da_z" not in cache:
            dz = g * (h_tilde - hv)
            dh_tilde = g * z
            da_h = dh_tilde * (1.0 - h_tilde * h_tilde)
            drh = da_h @ u_h.value
            dr = drh * hv
            da_z = dz * z * (1.0 - z)
            da_r = dr * r * (1.0 - r)
            dh_prev = g * (1.0 - z) + drh * r + da_z @ u_z.value + da_r @ u_r.value
            cache.update(da_z=da_z, da_r=da_r, da_h=da_h, rh=rh, dh_prev=dh_prev)
        return cache

    def pull_pre(key):
        def pull(g, acc):
            d = deltas(g)[key]
            if t is not None:
                acc[t] += d
            else:
                acc += d
        return pull

    pulls = (
        (pre_z, pull_pre("da_z")),
        (pre_r, pull_pre("da_r")),
        (pre_h, pull_pre("da_h")),
        (h_prev, lambda g, acc: _unbroadcast_into(deltas(g)["dh_prev"], acc)),
        (u_z, lambda g, acc: _unbroadcast_into(deltas(g)["da_z"].T @ hv, acc)),
        (u_r, lambda g, acc: _unbroadcast_into(deltas(g)["da_r"].T @ hv, acc)),
        (u_h, lambda g, acc: _unbroadcast_into(deltas(g)["da_h"].T @ rh, acc)),
    )
    return _wrap(tape, h_new, pulls)


def softmax_values(x):
    shifted = x - x.max(axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=-1, keepdims=True)


def softmax_cross_entropy(tape, logits: Node, labels, divisor: float,
                          row_weights=None) -> Node:
    """sum of per-row cross-entropies over (N, K) logits, divided by divisor.

    row_weights, if given, scales each row's contribution (0 masks a row out).
    """
    labels = np.asarray(labels, dtype=np.int64)
    shifted = logits.value - logits.value.max(axis=-1, keepdims=True)
    logsumexp = np.log(np.exp(shifted).sum(axis=-1))
    rows = np.arange(logits.value.shape[0])
    ce = logsumexp - shifted[rows, labels]
    if row_weights is not None:
        row_weights = np.asarray(row_weights, dtype=np.float64)
        ce = ce * row_weights
    value = ce.sum() / divisor

    def pull(g, acc):
        p = softmax_values(logits.value)
        p[rows, labels] -= 1.0
        if row_weights is not None:
            p *= row_weights[:, None]
        acc += (g / divisor) * p

    return _wrap(tape, value, ((logits, pull),))


def sigmoid_bce(tape, logits: Node, targets, divisor: float) -> Node:
    """sum of elementwise binary cross-entropies from logits, divided by divisor."""
    targets = np.asarray(targets, dtype=np.float64)
    x = logits.value
    per = np.maximum(x, 0.0) - x * targets + np.log1p(np.exp(-np.abs(x)))
    value = per.sum() / divisor

    def pull(g, acc):
        acc += (g / divisor) * (sigmoid_values(x) - targets)

    return _wrap(tape, value, ((logits, pull),))


def gaussian_kl(tape, mean: Node, logvar: Node, divisor: float) -> Node:
    """KL(N(mean, exp(logvar)) || N(0, I)), summed over all entries / divisor."""
    m, lv = mean.value, logvar.value
    ev = np.exp(lv)
    # expm1 keeps exp(lv) - 1 - lv accurate (and nonnegative) near lv = 0.
    value = 0.5 * (np.expm1(lv) - lv + m * m).sum() / divisor
    return _wrap(tape, value, (
        (mean, lambda g, acc: _unbroadcast_into((g / divisor) * m, acc)),
        (logvar, lambda g, acc: _unbroadcast_into((g / divisor) * 0.5 * (ev - 1.0), acc)),
    ))


def reparameterize(tape, mean: Node, logvar: Node, eps) -> Node:
    """z = mean + exp(logvar / 2) * eps with eps held constant."""
    eps = np.asarray(eps, dtype=np.float64)
    std = np.exp(0.5 * logvar.value)
    return _wrap(tape, mean.value + std * eps, (
        (mean, lambda g, acc: _unbroadcast_into(g, acc)),
        (logvar, lambda g, acc: _unbroadcast_into(g * 0.5 * std * eps, acc)),
    ))
